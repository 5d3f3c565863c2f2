#pragma once

// Independent estimate of an in-family series by direct summation.
//
// Nothing here touches the kernels or the integral representation: terms
// are generated from their definition, summed in increasing index order with
// compensated summation, and accelerated.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trigsum/error.hpp"
#include "trigsum/series_spec.hpp"

namespace trigsum {

enum class OracleMethod { PlainTail, CesaroIterated, RichardsonTail };

std::string method_name(OracleMethod method);

struct OracleConfig {
  long long terms = 20000;
  /// nullopt: iterated averaging for power 1, plain tail when its bound already meets
  /// target_tol, Richardson extrapolation of averaged sums otherwise.
  std::optional<OracleMethod> method;
  int cesaro_rounds = 3;
  double target_tol = 1e-6;
  /// Minimum distance from a divergent (open) endpoint.
  double endpoint_margin = 0.05;

  /// Throws std::invalid_argument unless terms >= 100 and 1 <= cesaro_rounds <= 5.
  void validate() const;
};

struct OracleEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  long long terms_used = 0;
  OracleMethod method = OracleMethod::PlainTail;

  bool operator==(const OracleEstimate&) const = default;
};

/// The bound exceeded target_tol (best() holds the estimate), or the point was refused
/// outright: too close to a divergent endpoint, or to a resonance the term budget cannot resolve.
class NonConvergent : public Error {
 public:
  NonConvergent(const std::string& message, std::optional<OracleEstimate> best);
  const std::optional<OracleEstimate>& best() const noexcept { return best_; }

 private:
  std::optional<OracleEstimate> best_;
};

/// S_1..S_N: running partial sums over the first N terms.
std::vector<double> partial_sums(const SeriesSpec& spec, double x, long long terms);

/// One round of classical Cesaro averaging: sigma_n = (S_1 + ... + S_n) / n.
std::vector<double> cesaro_means(std::span<const double> sequence);

/// `rounds` passes of a trailing moving average of width `window`. Each pass
/// shortens the sequence by window - 1 and damps oscillation of frequency phi
/// by a factor of at most 1 / (window |sin(phi/2)|).
std::vector<double> iterated_window_means(std::span<const double> sequence, int rounds, long long window);

/// Richardson extrapolation of S_N, S_{N/2}, S_{N/4} assuming S_n = S + c1/n + c2/n^2 + ...
double richardson_tail(std::span<const double> sums);

/// Upper bound on sum_{k>N} k^{-power} (power >= 2): N^{1-power}/(power-1).
double plain_tail_bound(long long terms, int power);

/// Throws OutOfDomain or NonConvergent.
OracleEstimate estimate(const SeriesSpec& spec, double x, const OracleConfig& config = {});

}  // namespace trigsum
