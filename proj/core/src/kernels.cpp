#include "trigsum/kernels.hpp"

#include <array>
#include <cmath>
#include <string>

#include "trigsum/angle.hpp"
#include "trigsum/compensated_sum.hpp"

namespace trigsum {

namespace {

using Atom = TrigTerm::Atom;

constexpr double kPoleFloor = 1e-300;

TrigPoly one(double c = 1.0) { return {TrigTerm{c, Atom::One, 0}}; }
TrigPoly cos_m(double c, int m) { return {TrigTerm{c, Atom::Cos, m}}; }
TrigPoly sin_m(double c, int m) { return {TrigTerm{c, Atom::Sin, m}}; }
TrigPoly zero() { return {}; }

TrigPoly negated(TrigPoly p) {
  for (auto& t : p) t.coefficient = -t.coefficient;
  return p;
}

// Plain kernels straight from the geometric identities.
KernelForm plain_all(Trig trig) {
  KernelForm k;
  k.family = {trig, SignMode::Plain, IndexSet::AllPositive};
  k.denominator = {one(), cos_m(-2.0, 1), one()};
  k.pole = {1, 1, 0};
  if (trig == Trig::Cos) {
    // (cos x - u) / (1 - 2 cos x u + u^2)
    k.factor = one();
    k.numerator = {cos_m(1.0, 1), one(-1.0)};
  } else {
    // sin x / (1 - 2 cos x u + u^2)
    k.factor = sin_m(1.0, 1);
    k.numerator = {one()};
  }
  return k;
}

KernelForm plain_odd(Trig trig) {
  KernelForm k;
  k.family = {trig, SignMode::Plain, IndexSet::OddViaShift};
  k.denominator = {one(), zero(), cos_m(-2.0, 2), zero(), one()};
  k.pole = {2, 2, 0};
  if (trig == Trig::Cos) {
    // cos x (1 - u^2) / (1 - 2 cos 2x u^2 + u^4)
    k.factor = cos_m(1.0, 1);
    k.numerator = {one(), zero(), one(-1.0)};
  } else {
    // sin x (1 + u^2) / (1 - 2 cos 2x u^2 + u^4)
    k.factor = sin_m(1.0, 1);
    k.numerator = {one(), zero(), one()};
  }
  return k;
}

KernelForm shifted(const KernelForm& base, int quarter_turns) {
  KernelForm k = base;
  k.factor = shift_quarter_turns(base.factor, quarter_turns);
  for (auto& c : k.numerator) c = shift_quarter_turns(c, quarter_turns);
  for (auto& c : k.denominator) c = shift_quarter_turns(c, quarter_turns);
  k.pole.quarter_turns = base.pole.quarter_turns + base.pole.multiple * quarter_turns;
  return k;
}

KernelForm build(Family family) {
  if (family.sign == SignMode::Plain) {
    return family.index == IndexSet::AllPositive ? plain_all(family.trig) : plain_odd(family.trig);
  }
  KernelForm k;
  if (family.index == IndexSet::AllPositive) {
    k = shifted(plain_all(family.trig), 2);
  } else {
    // -i rotation: cosine part comes from the shifted sine kernel, sine part from minus the shifted cosine kernel.
    const Trig source = family.trig == Trig::Cos ? Trig::Sin : Trig::Cos;
    k = shifted(plain_odd(source), 1);
    if (family.trig == Trig::Sin) k.factor = negated(k.factor);
  }
  k.family = family;
  return k;
}

std::size_t family_slot(Family f) {
  return (f.trig == Trig::Sin ? 4u : 0u) + (f.sign == SignMode::Alternating ? 2u : 0u) +
         (f.index == IndexSet::OddViaShift ? 1u : 0u);
}

const std::array<KernelForm, 8>& table() {
  static const std::array<KernelForm, 8> forms = [] {
    std::array<KernelForm, 8> out{};
    for (Trig trig : {Trig::Sin, Trig::Cos}) {
      for (SignMode sign : {SignMode::Plain, SignMode::Alternating}) {
        for (IndexSet index : {IndexSet::AllPositive, IndexSet::OddViaShift}) {
          const Family f{trig, sign, index};
          out[family_slot(f)] = build(f);
        }
      }
    }
    return out;
  }();
  return forms;
}

double horner(const std::vector<TrigPoly>& coefficients, double x, double u) {
  double r = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) r = std::fma(r, u, evaluate(*it, x));
  return r;
}

struct CS {
  double c;
  double s;
};

// Plain kernels in t, written with hyperbolic functions so that neither the
// coefficient tables nor the substitution u = e^{-t} are involved.
CS plain_all_in_t(Phase theta, double t) {
  const SinCos sc = sincos_of(theta);
  const Phase half{theta.x / 2.0, theta.quarter_turns / 2};
  const double sh = std::sinh(t / 2.0);
  const double sn = sin_of(half);
  const double d = 4.0 * (sh * sh + sn * sn);
  if (!(d >= kPoleFloor)) throw DomainError("kernel denominator vanishes");
  return {(sc.cos - std::exp(-t)) / d, sc.sin / d};
}

CS plain_odd_in_t(Phase theta, double t) {
  const SinCos sc = sincos_of(theta);
  const double sh = std::sinh(t);
  const double d = 2.0 * (sh * sh + sc.sin * sc.sin);
  if (!(d >= kPoleFloor)) throw DomainError("kernel denominator vanishes");
  return {sh * sc.cos / d, std::cosh(t) * sc.sin / d};
}

}  // namespace

double evaluate(const TrigPoly& poly, double x) noexcept {
  double r = 0.0;
  for (const auto& term : poly) {
    switch (term.atom) {
      case Atom::One: r += term.coefficient; break;
      case Atom::Cos: r += term.coefficient * cos_of(Phase{x}, term.multiple); break;
      case Atom::Sin: r += term.coefficient * sin_of(Phase{x}, term.multiple); break;
    }
  }
  return r;
}

TrigPoly shift_quarter_turns(const TrigPoly& poly, int quarter_turns) {
  TrigPoly out;
  out.reserve(poly.size());
  for (const auto& term : poly) {
    if (term.atom == Atom::One) {
      out.push_back(term);
      continue;
    }
    // cos/sin(m x + r pi/2) expressed through cos(m x), sin(m x).
    const int r = ((term.multiple * quarter_turns) % 4 + 4) % 4;
    const bool is_cos = term.atom == Atom::Cos;
    TrigTerm t = term;
    switch (r) {
      case 0: break;
      case 1:
        t.atom = is_cos ? Atom::Sin : Atom::Cos;
        t.coefficient = is_cos ? -term.coefficient : term.coefficient;
        break;
      case 2: t.coefficient = -term.coefficient; break;
      default:
        t.atom = is_cos ? Atom::Sin : Atom::Cos;
        t.coefficient = is_cos ? term.coefficient : -term.coefficient;
        break;
    }
    out.push_back(t);
  }
  return out;
}

double KernelForm::factor_at(double x) const noexcept { return evaluate(factor, x); }

double KernelForm::numerator_at(double x, double u) const noexcept { return horner(numerator, x, u); }

double KernelForm::denominator_at(double x, double u) const noexcept {
  const SinCos theta = rotated(sincos_of(Phase{x}, pole.multiple), pole.quarter_turns);
  const double gap = pole.power == 1 ? u - theta.cos : std::fma(u, u, -theta.cos);
  return std::fma(gap, gap, theta.sin * theta.sin);
}

double KernelForm::reduced(double x, double u) const {
  const double d = denominator_at(x, u);
  if (!(d >= kPoleFloor)) throw DomainError("kernel denominator vanishes at u = " + std::to_string(u));
  return numerator_at(x, u) / d;
}

double KernelForm::reduced_reflected(double x, double v) const {
  // Numerator shifted to powers of v = 1 - u.
  double b[8] = {};
  const std::size_t n = numerator.size();
  for (std::size_t j = 0; j < n; ++j) b[j] = evaluate(numerator[j], x);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) b[j - 1] += b[j];
  }
  // b[0] = N(1) often cancels to 1 - cos; redo it with the cosines split off.
  double whole = 0.0, small = 0.0;
  for (const auto& poly : numerator) {
    for (const auto& term : poly) {
      switch (term.atom) {
        case Atom::One: whole += term.coefficient; break;
        case Atom::Cos: {
          // Split around whichever of +1, -1 the cosine is closer to.
          const SinCos sc = sincos_of(Phase{x}, term.multiple);
          const double side = sc.cos >= 0.0 ? 1.0 : -1.0;
          whole += side * term.coefficient;
          small -= side * term.coefficient * one_minus_cos(rotated(sc, sc.cos >= 0.0 ? 0 : 2));
          break;
        }
        case Atom::Sin: small += term.coefficient * sin_of(Phase{x}, term.multiple); break;
      }
    }
  }
  b[0] = whole + small;
  double num = 0.0;
  for (std::size_t j = n; j-- > 0;) num = std::fma(num, -v, b[j]);

  const SinCos theta = rotated(sincos_of(Phase{x}, pole.multiple), pole.quarter_turns);
  const double rest = one_minus_cos(theta);
  const double gap = pole.power == 1 ? rest - v : rest - v * (2.0 - v);
  const double d = std::fma(gap, gap, theta.sin * theta.sin);
  if (!(d >= kPoleFloor)) throw DomainError("kernel denominator vanishes at u = 1 - " + std::to_string(v));
  return num / d;
}

double KernelForm::compact(double x, double u) const {
  const double f = factor_at(x);
  if (f == 0.0) return 0.0;
  return f * reduced(x, u);
}

double KernelForm::generating(double x, double u) const {
  if (u == 0.0) return 0.0;
  return u * compact(x, u);
}

std::optional<double> KernelForm::minimum_location(double x) const noexcept {
  const SinCos theta = rotated(sincos_of(Phase{x}, pole.multiple), pole.quarter_turns);
  if (!(theta.cos > 0.0)) return std::nullopt;
  return pole.power == 1 ? theta.cos : std::sqrt(theta.cos);
}

double KernelForm::minimum_value(double x) const noexcept {
  const SinCos theta = rotated(sincos_of(Phase{x}, pole.multiple), pole.quarter_turns);
  return theta.sin * theta.sin;
}

const KernelForm& kernel_form(Family family) { return table()[family_slot(family)]; }

double kernel_in_t(Family family, double x, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("kernel_in_t requires t > 0");
  if (family.index == IndexSet::AllPositive) {
    const Phase theta{x, family.sign == SignMode::Alternating ? 2 : 0};
    const CS v = plain_all_in_t(theta, t);
    return family.trig == Trig::Cos ? v.c : v.s;
  }
  if (family.sign == SignMode::Plain) {
    const CS v = plain_odd_in_t(Phase{x, 0}, t);
    return family.trig == Trig::Cos ? v.c : v.s;
  }
  const CS v = plain_odd_in_t(Phase{x, 1}, t);
  return family.trig == Trig::Cos ? v.s : -v.c;
}

double kernel_in_u(Family family, double x, double u) {
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("kernel_in_u requires 0 <= u < 1");
  return kernel_form(family).compact(x, u);
}

double kernel_partial_sum(Family family, double x, double t, int terms) {
  if (!(t > 0.0)) throw DomainError("kernel_partial_sum requires t > 0");
  CompensatedSum sum;
  for (long long j = 0; j < terms; ++j) {
    const long long k = term_frequency(family.index, j);
    const SinCos sc = sincos_of(Phase{x}, static_cast<int>(k));
    const double trig = family.trig == Trig::Sin ? sc.sin : sc.cos;
    sum += term_sign(family, j) * trig * std::exp(-static_cast<double>(k) * t);
  }
  return sum.value();
}

double kernel_consistency_check(Family family, double x, double t, int terms) {
  if (terms < 1) throw DomainError("kernel_consistency_check requires at least one term");
  return std::fabs(kernel_in_t(family, x, t) - kernel_partial_sum(family, x, t, terms));
}

double kernel_tail_bound(double t, int terms) noexcept {
  return std::exp(-(terms + 1.0) * t) / -std::expm1(-t);
}

}  // namespace trigsum
