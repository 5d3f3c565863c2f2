#pragma once

// Closed-form inner sums h(t) = sum_{k in I} sign_k trig(k x) e^{-k t}.
//
// With u = e^{-t} every kernel is a rational function of u whose
// coefficients are trigonometric polynomials in x. The coefficient data is
// derived from the geometric identities
//   sum_{k>=1} z^k       = z / (1 - z)
//   sum_{n>=0} z^{2n+1}  = z / (1 - z^2),     z = u e^{ix},
// and the alternating families from a phase rotation of z:
//   (-1)^k z^k           -> z e^{i pi}               (x -> x + pi)
//   (-1)^n z^{2n+1}      -> -i (z e^{i pi/2})^{2n+1} (x -> x + pi/2, then C+iS -> S-iC).

#include <optional>
#include <vector>

#include "trigsum/series_spec.hpp"

namespace trigsum {

/// coefficient * {1 | cos(multiple x) | sin(multiple x)}
struct TrigTerm {
  enum class Atom { One, Cos, Sin };

  double coefficient = 1.0;
  Atom atom = Atom::One;
  int multiple = 1;

  bool operator==(const TrigTerm&) const = default;
};

using TrigPoly = std::vector<TrigTerm>;

double evaluate(const TrigPoly& poly, double x) noexcept;

/// The same polynomial in x + quarter_turns * pi/2, rewritten in cos/sin of multiples of x.
TrigPoly shift_quarter_turns(const TrigPoly& poly, int quarter_turns);

/// Denominator shape (u^power - cos theta)^2 + sin^2 theta with
/// theta = multiple * x + quarter_turns * pi/2.
struct PoleShape {
  int power = 1;
  int multiple = 1;
  int quarter_turns = 0;

  bool operator==(const PoleShape&) const = default;
};

/// Kernel in the compact convention used by the integral representation:
///   compact(x, u) = factor(x) * N(x, u) / D(x, u),   h(t) = u * compact(x, u),  u = e^{-t}.
struct KernelForm {
  Family family;
  TrigPoly factor;                    // sin x for sine families, cos x or 1 otherwise
  std::vector<TrigPoly> numerator;    // ascending powers of u
  std::vector<TrigPoly> denominator;  // ascending powers of u; equals the expanded pole shape
  PoleShape pole;

  double factor_at(double x) const noexcept;
  double numerator_at(double x, double u) const noexcept;
  /// Evaluated through the pole shape, which stays accurate near u^power = cos theta.
  double denominator_at(double x, double u) const noexcept;
  /// numerator / denominator. Throws DomainError if the denominator is below 1e-300.
  double reduced(double x, double u) const;
  /// reduced(x, 1 - v), computed in v throughout so that it stays accurate as v -> 0.
  double reduced_reflected(double x, double v) const;
  /// factor * reduced.
  double compact(double x, double u) const;
  /// h expressed in u: u * compact(x, u). Zero at u = 0.
  double generating(double x, double u) const;

  /// u in (0, 1] where the denominator is minimal, if cos theta > 0.
  std::optional<double> minimum_location(double x) const noexcept;
  /// sin^2 theta, the smallest denominator value on [0, 1] when minimum_location() exists.
  double minimum_value(double x) const noexcept;
};

/// Compiled-in kernel for each of the eight families.
const KernelForm& kernel_form(Family family);

/// h(t) via the hyperbolic closed forms (independent of the u-form coefficient data).
/// Throws DomainError for t <= 0 or a vanishing denominator.
double kernel_in_t(Family family, double x, double t);

/// compact(x, u). Throws DomainError unless 0 <= u < 1.
double kernel_in_u(Family family, double x, double u);

/// First `terms` summands of h(t), compensated summation.
double kernel_partial_sum(Family family, double x, double t, int terms);

/// |kernel_in_t - kernel_partial_sum|.
double kernel_consistency_check(Family family, double x, double t, int terms);

/// e^{-(terms+1) t} / (1 - e^{-t}): bound on the omitted terms of h.
double kernel_tail_bound(double t, int terms) noexcept;

}  // namespace trigsum
