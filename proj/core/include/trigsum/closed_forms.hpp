#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trigsum/series_spec.hpp"

namespace trigsum {

/// A tabulated exact identity for one (family, power) pair.
struct ClosedForm {
  SeriesSpec spec;
  std::string id;       // "eq1" .. "eq7", "intro"
  std::string formula;  // right-hand side as text
  double (*evaluator)(double x) = nullptr;
};

/// The eight identities, in table order (eq1..eq7, intro).
const std::vector<ClosedForm>& closed_form_table();

/// The tabulated identity for this spec, if any.
const ClosedForm* find_closed_form(const SeriesSpec& spec);

/// Exact value of the series at x, or nullopt when no identity is tabulated.
/// Throws OutOfDomain if x is outside the validity interval or on an open endpoint.
std::optional<double> closed_form(const SeriesSpec& spec, double x);

/// Integrates (pi - s)/2 over [0, x] on `panels` Gauss-Kronrod panels and
/// returns |(pi^2/6 - integral) - (3x^2 - 6 pi x + 2 pi^2)/12|.
/// Requires 0 <= x <= 2 pi and panels >= 1.
double integrate_identity_check(double x, int panels = 64);

}  // namespace trigsum
