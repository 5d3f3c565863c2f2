#include "trigsum/angle.hpp"

#include <cmath>
#include <numbers>

namespace trigsum {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

constexpr int mod4(long long q) noexcept { return static_cast<int>(((q % 4) + 4) % 4); }

// Rotates (sin a, cos a) to (sin(a + q*pi/2), cos(a + q*pi/2)).
SinCos rotate(SinCos v, int q) noexcept {
  switch (mod4(q)) {
    case 0: return v;
    case 1: return {v.cos, -v.sin};
    case 2: return {-v.sin, -v.cos};
    default: return {-v.cos, v.sin};
  }
}

}  // namespace

SinCos rotated(SinCos value, int quarter_turns) noexcept { return rotate(value, quarter_turns); }

std::optional<int> exact_quarter_turns(double x) noexcept {
  if (!std::isfinite(x)) return std::nullopt;
  const double k = std::nearbyint(x / kHalfPi);
  if (std::fabs(k) > 64.0) return std::nullopt;
  if (static_cast<double>(k) * kHalfPi != x) return std::nullopt;
  return static_cast<int>(k);
}

SinCos sincos_of(Phase phase, int multiple) noexcept {
  if (auto k = exact_quarter_turns(phase.x)) {
    const long long turns = static_cast<long long>(multiple) * (*k + phase.quarter_turns);
    return rotate(SinCos{0.0, 1.0}, mod4(turns));
  }
  const double angle = static_cast<double>(multiple) * phase.x;
  const SinCos base{std::sin(angle), std::cos(angle)};
  return rotate(base, mod4(static_cast<long long>(multiple) * phase.quarter_turns));
}

}  // namespace trigsum
