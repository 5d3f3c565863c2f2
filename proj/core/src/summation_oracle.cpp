#include "trigsum/summation_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "trigsum/angle.hpp"
#include "trigsum/compensated_sum.hpp"

namespace trigsum {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Applied to the empirical (difference-based) bounds.
constexpr double kSafety = 2.0;

// Peak-to-peak of the last `count` values after removing the chord between the
// first and last of them, so a smooth drift does not count as oscillation.
double detrended_spread(std::span<const double> values, std::size_t count) {
  if (values.empty()) return std::numeric_limits<double>::infinity();
  const std::size_t n = std::min(count, values.size());
  const auto tail = values.subspan(values.size() - n);
  if (n < 2) return 0.0;
  const double slope = (tail.back() - tail.front()) / static_cast<double>(n - 1);
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = tail[i] - (tail.front() + slope * static_cast<double>(i));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi - lo;
}

// Rounding in k*x before the trig call contributes at most |x| eps per term for power 1.
double rounding_floor(const SeriesSpec& spec, double x, long long terms) {
  const double base = 64.0 * kEps * (1.0 + std::fabs(x));
  if (spec.power >= 2) return base;
  const double last_k = static_cast<double>(term_frequency(spec.family.index, terms - 1));
  return base + 4.0 * kEps * std::fabs(x) * last_k;
}

bool near_divergent_endpoint(const SeriesSpec& spec, double x, double margin) {
  const Interval& iv = spec.validity;
  return (!iv.lo_closed && x - iv.lo() < margin) || (!iv.hi_closed && iv.hi() - x < margin);
}

// Distance of the phase step between consecutive terms from a multiple of 2 pi.
double resonance_distance(const SeriesSpec& spec, double x) {
  // 2 |sin(phi/2)| with phi = step x (+ pi when alternating); the half angle is
  // formed directly so that tiny distances survive.
  const double half = spec.family.index == IndexSet::AllPositive ? x / 2.0 : x;
  const int turn = spec.family.sign == SignMode::Alternating ? 1 : 0;
  return 2.0 * std::fabs(rotated(sincos_of(Phase{half}), turn).sin);
}

long long window_for(long long terms, int rounds) { return std::max<long long>(1, terms / (2 * rounds + 2)); }

struct Level {
  double value;
  double spread;  // detrended peak-to-peak over one period of the phase step, at least 10 values
};

// Averaged partial sums of the first n terms, windows proportional to n.
Level averaged_level(std::span<const double> sums, long long n, int rounds, double resonance) {
  const auto averaged = iterated_window_means(sums.first(static_cast<std::size_t>(n)), rounds, window_for(n, rounds));
  // One full period when it fits; otherwise the oscillation is too slow to see
  // and the caller has already refused or budgeted for it.
  std::size_t count = 10;
  if (resonance > 0.0) {
    const double period = std::ceil(2.0 * std::numbers::pi / resonance) + 1.0;
    if (period <= static_cast<double>(averaged.size())) count = std::max<std::size_t>(10, static_cast<std::size_t>(period));
  }
  return {averaged.back(), detrended_spread(averaged, count)};
}

std::string refuse_message(const SeriesSpec& spec, double x, const std::string& why) {
  std::ostringstream os;
  os.precision(17);
  os << "summation oracle refuses x = " << x << " for " << canonical_text(spec) << ": " << why;
  return os.str();
}

}  // namespace

std::string method_name(OracleMethod method) {
  switch (method) {
    case OracleMethod::PlainTail: return "plain-tail";
    case OracleMethod::CesaroIterated: return "cesaro-iterated";
    case OracleMethod::RichardsonTail: return "richardson-tail";
  }
  return "unknown";
}

void OracleConfig::validate() const {
  if (terms < 100) throw std::invalid_argument("oracle term budget must be at least 100");
  if (cesaro_rounds < 1 || cesaro_rounds > 5) throw std::invalid_argument("cesaro_rounds must be in 1..5");
  if (!(target_tol > 0.0)) throw std::invalid_argument("target_tol must be positive");
}

NonConvergent::NonConvergent(const std::string& message, std::optional<OracleEstimate> best)
    : Error(message), best_(best) {}

std::vector<double> partial_sums(const SeriesSpec& spec, double x, long long terms) {
  std::vector<double> out;
  if (terms < 1) return out;
  out.reserve(static_cast<std::size_t>(terms));
  CompensatedSum sum;
  for (long long j = 0; j < terms; ++j) {
    const long long k = term_frequency(spec.family.index, j);
    const SinCos sc = sincos_of(Phase{x}, static_cast<int>(k));
    const double trig = spec.family.trig == Trig::Sin ? sc.sin : sc.cos;
    sum += term_sign(spec.family, j) * trig / std::pow(static_cast<double>(k), spec.power);
    out.push_back(sum.value());
  }
  return out;
}

std::vector<double> cesaro_means(std::span<const double> sequence) {
  std::vector<double> out;
  out.reserve(sequence.size());
  CompensatedSum running;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    running += sequence[i];
    out.push_back(running.value() / static_cast<double>(i + 1));
  }
  return out;
}

std::vector<double> iterated_window_means(std::span<const double> sequence, int rounds, long long window) {
  if (window < 1) throw std::invalid_argument("window must be positive");
  std::vector<double> current(sequence.begin(), sequence.end());
  const auto w = static_cast<std::size_t>(window);
  for (int r = 0; r < rounds; ++r) {
    if (current.size() < w) throw std::invalid_argument("sequence shorter than the averaging window");
    // Window sums as differences of compensated prefix sums, head and tail kept apart.
    std::vector<double> head(current.size() + 1, 0.0), tail(current.size() + 1, 0.0);
    CompensatedSum prefix;
    for (std::size_t i = 0; i < current.size(); ++i) {
      prefix += current[i];
      head[i + 1] = prefix.head();
      tail[i + 1] = prefix.tail();
    }
    std::vector<double> next;
    next.reserve(current.size() - w + 1);
    for (std::size_t end = w; end <= current.size(); ++end) {
      const double window_sum = (head[end] - head[end - w]) + (tail[end] - tail[end - w]);
      next.push_back(window_sum / static_cast<double>(w));
    }
    current = std::move(next);
  }
  return current;
}

double richardson_tail(std::span<const double> sums) {
  if (sums.size() != 3) throw std::invalid_argument("richardson_tail expects S_N, S_N/2, S_N/4");
  return (8.0 * sums[0] - 6.0 * sums[1] + sums[2]) / 3.0;
}

double plain_tail_bound(long long terms, int power) {
  if (power < 2) return std::numeric_limits<double>::infinity();
  return std::pow(static_cast<double>(terms), 1.0 - power) / (power - 1.0);
}

OracleEstimate estimate(const SeriesSpec& spec, double x, const OracleConfig& config) {
  config.validate();
  require_in_domain(spec, x);
  if (near_divergent_endpoint(spec, x, config.endpoint_margin)) {
    throw NonConvergent(refuse_message(spec, x, "too close to a divergent endpoint of " + spec.validity.to_string()),
                        std::nullopt);
  }

  const long long n = config.terms;
  const long long last_k = term_frequency(spec.family.index, n - 1);
  OracleMethod method;
  if (config.method) {
    method = *config.method;
  } else if (spec.power == 1) {
    method = OracleMethod::CesaroIterated;
  } else if (plain_tail_bound(last_k, spec.power) <= config.target_tol) {
    method = OracleMethod::PlainTail;
  } else {
    method = OracleMethod::RichardsonTail;
  }

  // Close to, but not at, a resonance the first n terms cannot see the kink the
  // limit has there. Far enough inside target_tol the kink is simply added to the bound.
  const double resonance = resonance_distance(spec, x);
  double kink = 0.0;
  if (method != OracleMethod::PlainTail && resonance * static_cast<double>(n) < 64.0) {
    if (resonance > config.target_tol / 16.0) {
      throw NonConvergent(refuse_message(spec, x, "term budget too small to resolve the nearby resonance"),
                          std::nullopt);
    }
    kink = kSafety * std::numbers::pi / 2.0 * resonance;
  }

  const std::vector<double> sums = partial_sums(spec, x, n);
  const std::span<const double> all(sums);
  const double floor = rounding_floor(spec, x, n) + kink;
  const int rounds = config.cesaro_rounds;
  OracleEstimate est;
  est.terms_used = n;
  est.method = method;

  switch (method) {
    case OracleMethod::PlainTail: {
      est.value = sums.back();
      est.error_bound = plain_tail_bound(last_k, spec.power) + floor;
      break;
    }
    case OracleMethod::CesaroIterated: {
      const Level full = averaged_level(all, n, rounds, resonance);
      const Level half = averaged_level(all, n / 2, rounds, resonance);
      est.value = full.value;
      est.error_bound = kSafety * std::max(full.spread, std::fabs(full.value - half.value)) + floor;
      break;
    }
    case OracleMethod::RichardsonTail: {
      // Extrapolate averaged sums, not raw ones: averaging removes the oscillating
      // part of the tail, and windows proportional to n keep the rest a series in 1/n.
      const long long unit = 8LL * (2 * rounds + 2);
      const long long top = std::max(unit, n / unit * unit);
      Level level[4];
      for (int i = 0; i < 4; ++i) level[i] = averaged_level(all, top >> i, rounds, resonance);
      const double full_in[3] = {level[0].value, level[1].value, level[2].value};
      const double half_in[3] = {level[1].value, level[2].value, level[3].value};
      const double full = richardson_tail(full_in);
      const double half = richardson_tail(half_in);
      // What is left of the oscillation enters with the extrapolation weights.
      const double residual = (8.0 * level[0].spread + 6.0 * level[1].spread + level[2].spread) / 3.0;
      est.value = full;
      est.terms_used = top;
      est.error_bound = kSafety * (residual + std::fabs(full - half)) + floor;
      break;
    }
  }

  if (!(est.error_bound <= config.target_tol)) {
    std::ostringstream why;
    why.precision(3);
    why << "error bound " << est.error_bound << " exceeds target " << config.target_tol;
    throw NonConvergent(refuse_message(spec, x, why.str()), est);
  }
  return est;
}

}  // namespace trigsum
