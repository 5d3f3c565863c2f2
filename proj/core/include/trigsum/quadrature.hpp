#pragma once

#include <functional>
#include <span>

#include "trigsum/error.hpp"
#include "trigsum/laplace_rewrite.hpp"

namespace trigsum {

struct QuadConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 40;
  long long max_evals = 200000;
  /// Test hook: when false, no panel break is placed at the kernel's denominator minimum.
  bool split_near_singular = true;

  /// Throws std::invalid_argument unless all limits are positive and max_depth <= 60.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long long evals = 0;
  bool converged = false;
  int panels = 0;

  bool operator==(const QuadResult&) const = default;
};

/// Budget exhausted before the tolerance was met. Carries the best estimate seen.
class NoConvergence : public Error {
 public:
  explicit NoConvergence(QuadResult best);
  const QuadResult& best() const noexcept { return best_; }

 private:
  QuadResult best_;
};

/// 10-point Gauss / 21-point Kronrod estimate on one panel.
struct PanelRule {
  double kronrod = 0.0;
  double gauss = 0.0;
  double abs_integral = 0.0;  // Kronrod estimate of int |f|
};

using Integrand = std::function<double(double)>;

/// Throws NonFinite if f is NaN or infinite at a node.
PanelRule gauss_kronrod21(const Integrand& f, double a, double b);

/// Adaptive Gauss-Kronrod integration.
///
/// Panels are refined largest-error-first, ties going to the lower left
/// endpoint, and summed in left-to-right order, so the result depends only on
/// the inputs. Each panel's error is |K21 - G10| plus a rounding floor.
class Integrator {
 public:
  explicit Integrator(QuadConfig config = {});

  const QuadConfig& config() const noexcept { return config_; }

  /// Evaluates the representation at its bound x. Throws NoConvergence or NonFinite.
  QuadResult integrate(const IntegralRep& rep) const;

  /// int_0^a g(u) (ln u)^log_power du via u = e^{-t} on [-ln a, T], with the
  /// tail beyond T bounded and added to the error estimate. Requires log_power >= 1.
  QuadResult integrate_log_endpoint(const Integrand& g, int log_power, double a) const;

  /// f over [breaks.front(), breaks.back()], with the interior breaks as initial panel edges.
  QuadResult integrate_function(const Integrand& f, std::span<const double> breaks) const;

 private:
  QuadConfig config_;
};

QuadResult integrate(const IntegralRep& rep, const QuadConfig& config = {});
QuadResult integrate_log_endpoint(const Integrand& g, int log_power, double a, const QuadConfig& config = {});

/// Initial panel breaks used for `rep`: 0, 0.5, 1, the denominator minimum and, when the
/// peak there is narrow, a mesh graded geometrically towards it.
std::vector<double> panel_breaks(const IntegralRep& rep, const QuadConfig& config);

}  // namespace trigsum
