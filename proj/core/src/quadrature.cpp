#include "trigsum/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trigsum/compensated_sum.hpp"

namespace trigsum {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Abscissae and weights of the 21-point Kronrod rule and its embedded 10-point Gauss rule.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525520043, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for kXgk[1], kXgk[3], ..., kXgk[9].
constexpr std::array<double, 5> kWg = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                                       0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                                       0.295524224714752870173892994651338};

double checked(const Integrand& f, double at) {
  const double v = f(at);
  if (!std::isfinite(v)) throw NonFinite(at);
  return v;
}

// Integration variable of a segment; panels are ordered by their left end in u.
enum class Variable { U, T, V };  // u itself, t with u = e^{-t}, v = 1 - u

struct Segment {
  Integrand f;
  double a = 0.0;
  double b = 0.0;
  Variable variable = Variable::U;
};

struct Panel {
  int segment = 0;
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  int depth = 0;
  double key = 0.0;  // left endpoint in u
};

// Max-heap on error; equal errors favour the lower left endpoint.
struct WorseFirst {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.key > rhs.key;
  }
};

class Refinement {
 public:
  Refinement(std::vector<Segment> segments, double fixed_error, const QuadConfig& config)
      : segments_(std::move(segments)), fixed_error_(fixed_error), config_(config) {}

  QuadResult run() {
    for (int s = 0; s < static_cast<int>(segments_.size()); ++s) {
      const Segment& seg = segments_[s];
      if (seg.b > seg.a) push(evaluate(s, seg.a, seg.b, 0));
    }
    record_best();

    bool converged = false;
    while (true) {
      if (within_tolerance(running_value_, running_error_ + fixed_error_)) {
        resync();
        if (within_tolerance(running_value_, running_error_ + fixed_error_)) {
          converged = true;
          break;
        }
      }
      if (heap_.empty()) break;
      if (evals_ + 42 > config_.max_evals) break;

      std::pop_heap(heap_.begin(), heap_.end(), WorseFirst{});
      Panel worst = heap_.back();
      heap_.pop_back();
      if (worst.depth >= config_.max_depth) {
        done_.push_back(worst);
        continue;
      }
      const double mid = 0.5 * (worst.a + worst.b);
      Panel left = evaluate(worst.segment, worst.a, mid, worst.depth + 1);
      Panel right = evaluate(worst.segment, mid, worst.b, worst.depth + 1);
      running_value_ += (left.value + right.value) - worst.value;
      running_error_ += (left.error + right.error) - worst.error;
      push_only(std::move(left));
      push_only(std::move(right));
      record_best();
    }

    QuadResult result = final_sums();
    if (!converged) {
      QuadResult best = result;
      best.value = best_value_;
      best.error_estimate = best_error_;
      best.converged = false;
      throw NoConvergence(best);
    }
    result.converged = true;
    return result;
  }

 private:
  bool within_tolerance(double value, double error) const {
    return error <= std::max(config_.abs_tol, config_.rel_tol * std::fabs(value));
  }

  Panel evaluate(int segment, double a, double b, int depth) {
    const Segment& seg = segments_[segment];
    const PanelRule rule = gauss_kronrod21(seg.f, a, b);
    evals_ += 21;
    Panel p;
    p.segment = segment;
    p.a = a;
    p.b = b;
    p.value = rule.kronrod;
    p.error = std::fabs(rule.kronrod - rule.gauss) + 2.0 * kEps * rule.abs_integral;
    p.depth = depth;
    switch (seg.variable) {
      case Variable::U: p.key = a; break;
      case Variable::T: p.key = std::exp(-b); break;
      case Variable::V: p.key = 1.0 - b; break;
    }
    return p;
  }

  void push(Panel p) {
    running_value_ += p.value;
    running_error_ += p.error;
    push_only(std::move(p));
  }

  void push_only(Panel p) {
    heap_.push_back(std::move(p));
    std::push_heap(heap_.begin(), heap_.end(), WorseFirst{});
  }

  void record_best() {
    const double total = running_error_ + fixed_error_;
    if (!has_best_ || total < best_error_) {
      has_best_ = true;
      best_error_ = total;
      best_value_ = running_value_;
    }
  }

  std::vector<Panel> all_panels() const {
    std::vector<Panel> all = heap_;
    all.insert(all.end(), done_.begin(), done_.end());
    std::sort(all.begin(), all.end(), [](const Panel& l, const Panel& r) { return l.key < r.key; });
    return all;
  }

  void resync() {
    CompensatedSum value;
    CompensatedSum error;
    for (const auto& p : all_panels()) {
      value += p.value;
      error += p.error;
    }
    running_value_ = value.value();
    running_error_ = error.value();
  }

  QuadResult final_sums() const {
    CompensatedSum value;
    CompensatedSum error;
    const auto all = all_panels();
    for (const auto& p : all) {
      value += p.value;
      error += p.error;
    }
    QuadResult r;
    r.value = value.value();
    r.error_estimate = error.value() + fixed_error_;
    r.evals = evals_;
    r.panels = static_cast<int>(all.size());
    return r;
  }

  std::vector<Segment> segments_;
  double fixed_error_ = 0.0;
  QuadConfig config_;
  std::vector<Panel> heap_;
  std::vector<Panel> done_;
  long long evals_ = 0;
  double running_value_ = 0.0;
  double running_error_ = 0.0;
  bool has_best_ = false;
  double best_value_ = 0.0;
  double best_error_ = 0.0;
};

// Gamma(k+1, T) = k! e^{-T} sum_{j<=k} T^j / j!
double upper_incomplete_gamma(int k, double t) {
  double term = 1.0;
  double sum = 1.0;
  double factorial = 1.0;
  for (int j = 1; j <= k; ++j) {
    term *= t / j;
    sum += term;
    factorial *= j;
  }
  return factorial * std::exp(-t) * sum;
}

double log_power_of(double u, int k) {
  const double l = u > 0.5 ? std::log1p(u - 1.0) : std::log(u);
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= l;
  return r;
}

// (ln(1 - v))^k
double log_power_of_reflected(double v, int k) {
  const double l = std::log1p(-v);
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= l;
  return r;
}

double signed_power(double t, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= -t;
  return r;
}

// Truncation point T and the bound on the dropped tail, for a t-segment starting at t0.
std::pair<double, double> truncate_tail(double bound_g, int k, double t0, double abs_tol) {
  double t = std::max(t0 + 1.0, static_cast<double>(k) + 1.0);
  double tail = bound_g * upper_incomplete_gamma(k, t);
  while (tail > abs_tol / 10.0 && t < 740.0) {
    t += 1.0;
    tail = bound_g * upper_incomplete_gamma(k, t);
  }
  return {t, tail};
}

Segment log_segment(const Integrand& g, int k, double t0, double t_end, double scale) {
  Segment s;
  s.f = [g, k, scale](double t) {
    const double u = std::exp(-t);
    return scale * g(u) * signed_power(t, k) * u;
  };
  s.a = t0;
  s.b = t_end;
  s.variable = Variable::T;
  return s;
}

double sup_estimate(const Integrand& g, double a) {
  double m = 0.0;
  for (double frac : {0.0, 0.25, 0.5, 0.75, 1.0}) m = std::max(m, std::fabs(g(frac * a)));
  return 2.0 * m;
}

}  // namespace

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_depth <= 0 || max_evals <= 0) {
    throw std::invalid_argument("quadrature tolerances and budgets must be positive");
  }
  if (max_depth > 60) throw std::invalid_argument("max_depth must not exceed 60");
}

namespace {

std::string no_convergence_message(const QuadResult& r) {
  std::ostringstream os;
  os.precision(6);
  os << "quadrature did not converge after " << r.evals << " evaluations (best " << r.value << " +- "
     << r.error_estimate << ")";
  return os.str();
}

}  // namespace

NoConvergence::NoConvergence(QuadResult best) : Error(no_convergence_message(best)), best_(best) {}

PanelRule gauss_kronrod21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kronrod = kWgk[10] * fc;
  double gauss = 0.0;
  double abs_sum = kWgk[10] * std::fabs(fc);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = checked(f, center - dx);
    const double f2 = checked(f, center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {kronrod * half, gauss * half, abs_sum * std::fabs(half)};
}

Integrator::Integrator(QuadConfig config) : config_(config) { config_.validate(); }

namespace {

// Initial edges: u in [0, 1/2] directly, and [1/2, 1] as v = 1 - u in [0, 1/2],
// so that nodes crowding towards u = 1 stay exact.
struct Edges {
  std::vector<double> low_u;
  std::vector<double> high_v;
};

Edges initial_edges(const IntegralRep& rep, const QuadConfig& config) {
  Edges e{{0.0, 0.5}, {0.0, 0.5}};
  if (config.split_near_singular && rep.x && rep.kernel != nullptr) {
    const KernelForm& kernel = *rep.kernel;
    if (auto m = kernel.minimum_location(*rep.x); m && *m > 0.0) {
      if (*m < 0.5) {
        e.low_u.push_back(*m);
      } else {
        // Close to the endpoint the minimum rounds to 1; the peak is then at v = 0.
        const double centre = 1.0 - std::min(*m, 1.0);
        if (centre > 0.0) e.high_v.push_back(centre);
        // A narrow peak (or dip) is invisible to a wide panel, so grade the mesh
        // towards it in steps of 4 starting from its half-width.
        const double width = std::sqrt(kernel.minimum_value(*rep.x)) / (kernel.pole.power == 2 ? 2.0 * *m : 1.0);
        if (width > 0.0 && width < 0.05) {
          const double first = std::max(width, 4.0 * kEps);
          for (double step = first; centre + step < 0.5; step *= 4.0) e.high_v.push_back(centre + step);
          for (double step = first; centre - step > 0.0; step *= 4.0) e.high_v.push_back(centre - step);
        }
      }
    }
  }
  for (auto* v : {&e.low_u, &e.high_v}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return e;
}

}  // namespace

std::vector<double> panel_breaks(const IntegralRep& rep, const QuadConfig& config) {
  const Edges e = initial_edges(rep, config);
  std::vector<double> breaks = e.low_u;
  for (double v : e.high_v) breaks.push_back(1.0 - v);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return breaks;
}

QuadResult Integrator::integrate(const IntegralRep& rep) const {
  if (!rep.x || rep.kernel == nullptr) throw DomainError("integrate requires a representation bound to x");
  const double x = *rep.x;
  const double factor = rep.trig_factor_value();
  if (factor == 0.0) {
    QuadResult zero;
    zero.converged = true;
    return zero;
  }
  const double scale = rep.constant * factor;
  const KernelForm& kernel = *rep.kernel;
  const int k = rep.log_power;
  const Edges edges = initial_edges(rep, config_);

  std::vector<Segment> segments;
  double fixed_error = 0.0;
  std::size_t first_u = 0;
  if (k >= 1) {
    const double cut = edges.low_u[1];
    Integrand g = [&kernel, x](double u) { return kernel.reduced(x, u); };
    const double t0 = -std::log(cut);
    const auto [t_end, tail] = truncate_tail(std::fabs(scale) * sup_estimate(g, cut), k, t0, config_.abs_tol);
    segments.push_back(log_segment(g, k, t0, t_end, scale));
    fixed_error = tail;
    first_u = 1;
  }
  Integrand low = [&kernel, x, scale, k](double u) { return scale * kernel.reduced(x, u) * log_power_of(u, k); };
  for (std::size_t i = first_u; i + 1 < edges.low_u.size(); ++i) {
    segments.push_back(Segment{low, edges.low_u[i], edges.low_u[i + 1], Variable::U});
  }
  Integrand high = [&kernel, x, scale, k](double v) {
    return scale * kernel.reduced_reflected(x, v) * log_power_of_reflected(v, k);
  };
  for (std::size_t i = 0; i + 1 < edges.high_v.size(); ++i) {
    segments.push_back(Segment{high, edges.high_v[i], edges.high_v[i + 1], Variable::V});
  }
  return Refinement(std::move(segments), fixed_error, config_).run();
}

QuadResult Integrator::integrate_log_endpoint(const Integrand& g, int log_power, double a) const {
  if (log_power < 1) throw std::invalid_argument("integrate_log_endpoint requires log_power >= 1");
  if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("integrate_log_endpoint requires 0 < a <= 1");
  const double t0 = -std::log(a);
  const auto [t_end, tail] = truncate_tail(sup_estimate(g, a), log_power, t0, config_.abs_tol);
  std::vector<Segment> segments = {log_segment(g, log_power, t0, t_end, 1.0)};
  return Refinement(std::move(segments), tail, config_).run();
}

QuadResult Integrator::integrate_function(const Integrand& f, std::span<const double> breaks) const {
  if (breaks.size() < 2) throw std::invalid_argument("integrate_function needs at least two breaks");
  std::vector<Segment> segments;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] >= breaks[i])) throw std::invalid_argument("breaks must be non-decreasing");
    segments.push_back(Segment{f, breaks[i], breaks[i + 1], Variable::U});
  }
  return Refinement(std::move(segments), 0.0, config_).run();
}

QuadResult integrate(const IntegralRep& rep, const QuadConfig& config) { return Integrator(config).integrate(rep); }

QuadResult integrate_log_endpoint(const Integrand& g, int log_power, double a, const QuadConfig& config) {
  return Integrator(config).integrate_log_endpoint(g, log_power, a);
}

}  // namespace trigsum
