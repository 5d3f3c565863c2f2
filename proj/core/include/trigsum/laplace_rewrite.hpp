#pragma once

// Series -> finite integral over [0, 1].
//
// With 1/k^nu = 1/(nu-1)! * int_0^inf e^{-k t} t^{nu-1} dt, exchanging sum and
// integral and substituting u = e^{-t} gives
//
//   sum_k sign_k trig(k x) / k^nu
//     = (-1)^{nu-1}/(nu-1)! * factor(x) * int_0^1 N(x,u)/D(x,u) (ln u)^{nu-1} du
//
// where factor * N/D is the compact kernel of the family. The index set only
// changes the kernel; the weight (ln u)^{nu-1} is the same for every family.

#include <optional>
#include <string>
#include <vector>

#include "trigsum/kernels.hpp"
#include "trigsum/series_spec.hpp"

namespace trigsum {

enum class SingularityKind {
  LogEndpoint,   // (ln u)^k at u = 0
  KernelPole,    // denominator vanishes (only at u = 1 on a closed endpoint)
  NearSingular,  // denominator minimum sin^2(theta) inside (0, 1)
};

struct Singularity {
  double location = 0.0;
  SingularityKind kind = SingularityKind::LogEndpoint;
  int order = 0;            // log power, or pole order of N/D
  double minimum = 0.0;     // denominator minimum for NearSingular
  bool removable = false;   // integrand stays bounded

  bool operator==(const Singularity&) const = default;
};

struct IntegralRep {
  SeriesSpec spec;
  std::optional<double> x;        // unset for a symbolic representation
  double constant = 1.0;          // (-1)^(nu-1) / (nu-1)!
  const KernelForm* kernel = nullptr;
  TrigPoly trig_factor;           // sin x for sine families, kept out of the integrand
  int log_power = 0;              // nu - 1
  double lower = 0.0;
  double upper = 1.0;
  std::vector<Singularity> singularities;

  /// trig_factor at x. Requires a bound x.
  double trig_factor_value() const;
  /// N/D at u, the bounded part of the integrand.
  double kernel_value(double u) const;
  /// constant * trig_factor * N/D * (ln u)^log_power.
  double integrand(double u) const;
};

/// 1/(nu-1)! with the sign (-1)^(nu-1). Exact in binary64 for nu <= 8.
double laplace_prefactor(int nu);

/// |(1/(nu-1)!) int_0^inf e^{-n t} t^{nu-1} dt - 1/n^nu| with the integral done numerically.
double laplace_weight(int nu, long long n);

IntegralRep build_integral_rep(const SeriesSpec& spec);
/// Throws OutOfDomain unless validate_point(spec, x) accepts x.
IntegralRep build_integral_rep(const SeriesSpec& spec, double x);

enum class RenderFormat { Text, Latex };

/// The compact integral, e.g. "∫₀¹ (cos x − u)/(1 − 2 cos x u + u²) du".
std::string render(const IntegralRep& rep, RenderFormat format);

/// Derivation steps: the series, the Laplace identity instance, the kernel
/// collapse in t, and the compact form in u (last line ends with render()).
std::vector<std::string> render_derivation(const SeriesSpec& spec, RenderFormat format);

}  // namespace trigsum
