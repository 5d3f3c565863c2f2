#include "trigsum/laplace_rewrite.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <vector>

#include "trigsum/quadrature.hpp"

namespace trigsum {

namespace {

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double log_power_of(double u, int k) {
  const double l = u > 0.5 ? std::log1p(u - 1.0) : std::log(u);
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= l;
  return r;
}

std::vector<Singularity> singularities_at(const KernelForm& kernel, double x, int log_power) {
  std::vector<Singularity> out;
  if (log_power >= 1) out.push_back({0.0, SingularityKind::LogEndpoint, log_power, 0.0, false});
  const auto location = kernel.minimum_location(x);
  if (!location) return out;
  const double minimum = kernel.minimum_value(x);
  if (*location >= 1.0 && minimum == 0.0) {
    // Double root of D at u = 1, partly cancelled when N vanishes there too.
    const int order = kernel.numerator_at(x, 1.0) == 0.0 ? 1 : 2;
    const bool removable = kernel.factor_at(x) == 0.0 || log_power >= order;
    out.push_back({1.0, SingularityKind::KernelPole, order, 0.0, removable});
  } else if (*location < 1.0) {
    out.push_back({*location, SingularityKind::NearSingular, 0, minimum, true});
  } else {
    out.push_back({1.0, SingularityKind::NearSingular, 0, minimum, true});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

struct Markup {
  RenderFormat format;

  bool latex() const { return format == RenderFormat::Latex; }
  std::string minus() const { return latex() ? "-" : "−"; }
  std::string power(const std::string& base, int p) const {
    if (p == 1) return base;
    if (latex()) return base + "^{" + std::to_string(p) + "}";
    static const std::array<const char*, 10> sup = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string digits = std::to_string(p);
    std::string out = base;
    for (char c : digits) out += sup[static_cast<std::size_t>(c - '0')];
    return out;
  }
  std::string trig(TrigTerm::Atom atom, int multiple) const {
    std::string name = atom == TrigTerm::Atom::Cos ? "cos" : "sin";
    if (latex()) name = "\\" + name;
    return name + " " + (multiple == 1 ? std::string("x") : std::to_string(multiple) + "x");
  }
  std::string frac(const std::string& num, const std::string& den, bool num_compound, bool den_compound) const {
    if (latex()) return "\\frac{" + num + "}{" + den + "}";
    return (num_compound ? "(" + num + ")" : num) + "/" + (den_compound ? "(" + den + ")" : den);
  }
  std::string log_u(int k) const {
    const std::string base = latex() ? "\\ln u" : "ln u";
    if (k == 1) return base;
    return power("(" + base + ")", k);
  }
  std::string integral() const { return latex() ? "\\int_0^1 " : "∫₀¹ "; }
  std::string integral_to_infinity() const { return latex() ? "\\int_0^\\infty " : "∫₀^∞ "; }
  std::string du() const { return latex() ? "\\,du" : " du"; }
  std::string dt() const { return latex() ? "\\,dt" : " dt"; }
  std::string gap() const { return latex() ? "\\," : " "; }
};

std::string number_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// |coefficient| * atom, without sign. Returns "" for a unit coefficient on a non-constant atom.
std::string magnitude_text(const TrigTerm& t, const Markup& m) {
  const double mag = std::fabs(t.coefficient);
  if (t.atom == TrigTerm::Atom::One) return number_text(mag);
  const std::string atom = m.trig(t.atom, t.multiple);
  return mag == 1.0 ? atom : number_text(mag) + " " + atom;
}

struct Monomial {
  bool negative = false;
  std::string body;
};

// Terms of sum_p coeff_p * var^p in ascending p. `var_power` renders var^p (p >= 1).
template <class VarPower>
std::vector<Monomial> monomials(const std::vector<TrigPoly>& coefficients, const Markup& m, VarPower var_power) {
  std::vector<Monomial> out;
  for (std::size_t p = 0; p < coefficients.size(); ++p) {
    const TrigPoly& c = coefficients[p];
    if (c.empty()) continue;
    const std::string var = p == 0 ? std::string() : var_power(static_cast<int>(p));
    if (c.size() == 1) {
      const TrigTerm& t = c.front();
      if (t.coefficient == 0.0) continue;
      std::string mag = magnitude_text(t, m);
      std::string body;
      if (var.empty()) {
        body = mag;
      } else if (mag == "1") {
        body = var;
      } else {
        body = mag + (m.latex() ? "\\," : " ") + var;
      }
      out.push_back({t.coefficient < 0.0, body});
      continue;
    }
    // Multi-term coefficient: parenthesize.
    std::string inner;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const TrigTerm& t = c[i];
      if (i == 0) {
        inner += (t.coefficient < 0.0 ? m.minus() : "") + magnitude_text(t, m);
      } else {
        inner += (t.coefficient < 0.0 ? " " + m.minus() + " " : " + ") + magnitude_text(t, m);
      }
    }
    out.push_back({false, "(" + inner + ")" + (var.empty() ? "" : " " + var)});
  }
  return out;
}

std::string join(const std::vector<Monomial>& terms, const Markup& m) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == 0) {
      out += (terms[i].negative ? m.minus() : "") + terms[i].body;
    } else {
      out += (terms[i].negative ? " " + m.minus() + " " : " + ") + terms[i].body;
    }
  }
  return out;
}

std::string u_power(int p, const Markup& m) { return m.power("u", p); }

std::string exp_power(int p, const Markup& m) {
  const std::string exponent = p == 1 ? "t" : std::to_string(p) + "t";
  if (m.latex()) return "e^{-" + exponent + "}";
  return "e^(" + m.minus() + exponent + ")";
}

// Leading factor such as "−(1/2) sin x ".
std::string prefix_text(double constant, const TrigPoly& factor, const Markup& m) {
  std::string out;
  bool negative = constant < 0.0;
  const double mag = std::fabs(constant);
  std::string scale;
  if (mag != 1.0) {
    const double inv = std::round(1.0 / mag);
    scale = m.latex() ? "\\frac{1}{" + number_text(inv) + "}" : "(1/" + number_text(inv) + ")";
  }
  std::string trig;
  if (!(factor.size() == 1 && factor.front().atom == TrigTerm::Atom::One && factor.front().coefficient == 1.0)) {
    if (factor.size() == 1) {
      if (factor.front().coefficient < 0.0) negative = !negative;
      trig = magnitude_text(factor.front(), m);
    } else {
      trig = "(" + join(monomials({factor}, m, [](int) { return std::string(); }), m) + ")";
    }
  }
  if (negative) out += m.minus();
  if (!scale.empty()) out += scale + m.gap();
  if (!trig.empty()) out += trig + m.gap();
  return out;
}

std::string integrand_text(const KernelForm& kernel, int log_power, const Markup& m) {
  const auto num_terms = monomials(kernel.numerator, m, [&m](int p) { return u_power(p, m); });
  const auto den_terms = monomials(kernel.denominator, m, [&m](int p) { return u_power(p, m); });
  std::string num = join(num_terms, m);
  const std::string den = join(den_terms, m);
  const bool den_compound = den_terms.size() > 1;
  if (log_power >= 1 && num == "1") return m.frac(m.log_u(log_power), den, false, den_compound);
  std::string out = m.frac(num, den, num_terms.size() > 1, den_compound);
  if (log_power >= 1) out += m.gap() + m.log_u(log_power);
  return out;
}

std::string series_text(const SeriesSpec& spec, const Markup& m) {
  const bool odd = spec.family.index == IndexSet::OddViaShift;
  const std::string k = odd ? "(2n+1)" : "n";
  std::string out;
  if (m.latex()) {
    out = odd ? "\\sum_{n=0}^\\infty " : "\\sum_{n=1}^\\infty ";
    if (spec.family.sign == SignMode::Alternating) out += "(-1)^n ";
    const std::string trig = spec.family.trig == Trig::Sin ? "\\sin" : "\\cos";
    out += "\\frac{" + trig + "(" + k + "x)}{" + (spec.power > 1 ? k + "^{" + std::to_string(spec.power) + "}" : k) + "}";
    return out;
  }
  out = odd ? "∑ₙ₌₀^∞ " : "∑ₙ₌₁^∞ ";
  if (spec.family.sign == SignMode::Alternating) out += "(" + m.minus() + "1)ⁿ ";
  out += std::string(spec.family.trig == Trig::Sin ? "sin" : "cos") + "(" + k + "x)/" + m.power(k, spec.power);
  return out;
}

}  // namespace

double IntegralRep::trig_factor_value() const {
  if (!x) throw DomainError("representation is symbolic; no x bound");
  return evaluate(trig_factor, *x);
}

double IntegralRep::kernel_value(double u) const {
  if (!x) throw DomainError("representation is symbolic; no x bound");
  return kernel->reduced(*x, u);
}

double IntegralRep::integrand(double u) const {
  const double f = trig_factor_value();
  if (f == 0.0) return 0.0;
  return constant * f * kernel_value(u) * log_power_of(u, log_power);
}

double laplace_prefactor(int nu) {
  const double inv = 1.0 / factorial(nu - 1);
  return (nu - 1) % 2 == 0 ? inv : -inv;
}

double laplace_weight(int nu, long long n) {
  if (nu < 1 || nu > kMaxPower || n < 1) throw DomainError("laplace_weight requires 1 <= nu <= 8 and n >= 1");
  const double rate = static_cast<double>(n);
  const double norm = factorial(nu - 1);
  const int k = nu - 1;
  Integrand f = [rate, norm, k](double t) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= t;
    return std::exp(-rate * t) * p / norm;
  };
  // Peak at t = k/n; e^{-n t} t^k / k! is below 1e-20 well before t = (k + 60)/n.
  const double peak = k / rate;
  const double end = (k + 60.0) / rate;
  std::vector<double> breaks = {0.0};
  if (peak > 0.0) breaks.push_back(peak);
  breaks.push_back(end);
  QuadConfig config;
  config.abs_tol = 1e-15;
  config.rel_tol = 1e-14;
  const QuadResult r = Integrator(config).integrate_function(f, breaks);
  return std::fabs(r.value - 1.0 / std::pow(rate, nu));
}

IntegralRep build_integral_rep(const SeriesSpec& spec) {
  IntegralRep rep;
  rep.spec = spec;
  rep.constant = laplace_prefactor(spec.power);
  rep.kernel = &kernel_form(spec.family);
  rep.trig_factor = rep.kernel->factor;
  rep.log_power = spec.power - 1;
  return rep;
}

IntegralRep build_integral_rep(const SeriesSpec& spec, double x) {
  require_in_domain(spec, x);
  IntegralRep rep = build_integral_rep(spec);
  rep.x = x;
  rep.singularities = singularities_at(*rep.kernel, x, rep.log_power);
  return rep;
}

std::string render(const IntegralRep& rep, RenderFormat format) {
  const Markup m{format};
  return prefix_text(rep.constant, rep.trig_factor, m) + m.integral() + integrand_text(*rep.kernel, rep.log_power, m) +
         m.du();
}

std::vector<std::string> render_derivation(const SeriesSpec& spec, RenderFormat format) {
  const Markup m{format};
  const IntegralRep rep = build_integral_rep(spec);
  const KernelForm& kernel = *rep.kernel;
  const bool odd = spec.family.index == IndexSet::OddViaShift;
  const std::string k = odd ? "(2n+1)" : "n";
  const int nu = spec.power;
  std::vector<std::string> lines;

  lines.push_back(series_text(spec, m));

  // 1/k^nu as a Laplace transform.
  std::string weight = m.latex() ? "\\frac{1}{" + m.power(k, nu) + "} = " : "1/" + m.power(k, nu) + " = ";
  if (nu > 2) {
    weight += m.latex() ? "\\frac{1}{" + std::to_string(nu - 1) + "!}" : "(1/" + std::to_string(nu - 1) + "!) ";
  }
  const std::string exponent = m.latex() ? "e^{-" + k + "t}" : "e^(" + m.minus() + k + "t)";
  weight += m.integral_to_infinity() + exponent;
  if (nu >= 2) weight += m.gap() + m.power("t", nu - 1);
  weight += m.dt();
  lines.push_back(weight);

  // Kernel collapse, h(t) = e^{-t} * compact(x, e^{-t}).
  const auto num_terms = monomials(kernel.numerator, m, [&m](int p) { return exp_power(p, m); });
  const auto den_terms = monomials(kernel.denominator, m, [&m](int p) { return exp_power(p, m); });
  std::string h = "h(t) = ";
  const std::string factor = prefix_text(1.0, kernel.factor, m);
  h += factor + exp_power(1, m) + m.gap() +
       m.frac(join(num_terms, m), join(den_terms, m), num_terms.size() > 1, den_terms.size() > 1);
  lines.push_back(h);

  lines.push_back((m.latex() ? "u = e^{-t}:\\quad " : "u = e^(" + m.minus() + "t): ") + render(rep, format));
  return lines;
}

}  // namespace trigsum
