#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "trigsum/error.hpp"
#include "trigsum/expr.hpp"

namespace trigsum {

enum class Trig { Sin, Cos };
enum class SignMode { Plain, Alternating };
enum class IndexSet { AllPositive, OddViaShift };

/// (trig, sign, index) triple. Eight families in total.
struct Family {
  Trig trig = Trig::Cos;
  SignMode sign = SignMode::Plain;
  IndexSet index = IndexSet::AllPositive;

  bool operator==(const Family&) const = default;
};

/// Short CLI name: "cos", "sin-alt", "cos-odd", "sin-alt-odd", ...
std::string family_name(Family family);
std::optional<Family> parse_family_name(std::string_view name);

/// Interval with endpoints at integer multiples of pi/2.
struct Interval {
  int lo_quarter_turns = 0;
  int hi_quarter_turns = 4;
  bool lo_closed = false;
  bool hi_closed = false;

  double lo() const noexcept;
  double hi() const noexcept;
  /// e.g. "0<x<2π", "−π/2≤x≤π/2".
  std::string to_string() const;

  bool operator==(const Interval&) const = default;
};

inline constexpr int kMaxPower = 8;

/// Normalized description of a supported series
///   sum over k in I of sign_k * trig(k x) / k^power
/// with I = {1,2,...} (AllPositive) or {1,3,5,...} written as 2n+1, n >= 0.
struct SeriesSpec {
  Family family;
  int power = 1;
  Interval validity;

  bool operator==(const SeriesSpec&) const = default;
};

/// Builds a spec with the validity interval filled in. Throws Unsupported for power outside 1..8.
SeriesSpec make_spec(Family family, int power);

Interval validity_interval(Family family, int power);

/// Maps a parsed sum onto its SeriesSpec. Throws Unsupported naming the offending subterm.
SeriesSpec classify(const Expr& expr);

/// Canonical DSL text of the spec, e.g. "sum(n=0..inf, (-1)^n*sin((2*n+1)*x)/(2*n+1)^2)".
std::string canonical_text(const SeriesSpec& spec);
Expr to_expr(const SeriesSpec& spec);

/// sign * trig(k x) / k^power for the j-th term (j = 0, 1, ...), k its frequency.
double term_value(const SeriesSpec& spec, long long j, double x);
/// Frequency k of the j-th term: j+1 or 2j+1.
long long term_frequency(IndexSet index, long long j) noexcept;
/// +1 or -1 for the j-th term.
double term_sign(const Family& family, long long j) noexcept;

enum class PointClass { InDomain, OnBoundary, OutOfDomain };

PointClass validate_point(const SeriesSpec& spec, double x) noexcept;

/// x lies outside the validity interval or on an open endpoint.
class OutOfDomain : public DomainError {
 public:
  OutOfDomain(double x, Interval interval);
  double x() const noexcept { return x_; }
  const Interval& interval() const noexcept { return interval_; }

 private:
  double x_;
  Interval interval_;
};

/// Throws OutOfDomain unless validate_point() accepts x.
void require_in_domain(const SeriesSpec& spec, double x);

/// x shifted by a multiple of 2*pi into the validity interval, if such a shift exists.
std::optional<double> normalize_angle(const SeriesSpec& spec, double x);

}  // namespace trigsum
