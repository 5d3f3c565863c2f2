#pragma once

// Trigonometric evaluation of angles of the form m*x + q*(pi/2).
//
// When x is the binary64 value nearest k*(pi/2) for a small integer k, the
// angle is treated as an exact multiple of pi/2 and sin/cos are returned
// exactly (0, +-1). This keeps closed endpoints such as x = 2*pi on the
// removable side of the kernel poles instead of a 1e-16 neighbourhood.

#include <optional>

namespace trigsum {

struct SinCos {
  double sin = 0.0;
  double cos = 1.0;
};

/// x + quarter_turns * pi/2, kept symbolic in the quarter turns.
struct Phase {
  double x = 0.0;
  int quarter_turns = 0;
};

/// k such that x == k * (pi/2) exactly in binary64, for |k| <= 64.
std::optional<int> exact_quarter_turns(double x) noexcept;

/// (sin, cos) of a + quarter_turns * pi/2, given (sin a, cos a).
SinCos rotated(SinCos value, int quarter_turns) noexcept;

/// sin and cos of multiple * (phase.x + phase.quarter_turns * pi/2).
SinCos sincos_of(Phase phase, int multiple = 1) noexcept;

/// 1 - cos a from (sin a, cos a), without cancellation when cos a is close to 1.
inline double one_minus_cos(SinCos v) noexcept {
  return v.cos > 0.0 ? v.sin * v.sin / (1.0 + v.cos) : 1.0 - v.cos;
}

inline double sin_of(Phase phase, int multiple = 1) noexcept { return sincos_of(phase, multiple).sin; }
inline double cos_of(Phase phase, int multiple = 1) noexcept { return sincos_of(phase, multiple).cos; }

}  // namespace trigsum
