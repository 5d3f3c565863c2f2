#pragma once

// Three-way evaluation of a series at one point, plus JSON and CSV output.

#include <optional>
#include <string>
#include <vector>

#include "trigsum/quadrature.hpp"
#include "trigsum/series_spec.hpp"
#include "trigsum/summation_oracle.hpp"

namespace trigsum {

inline constexpr const char* kSchema = "trigsum/1";

struct Thresholds {
  double quadrature_closed = 1e-9;
  double oracle_closed = 1e-5;
  double oracle_quadrature = 1e-5;

  bool operator==(const Thresholds&) const = default;
};

enum class Verdict { Agree, Disagree, Partial };

std::string verdict_name(Verdict verdict);

/// Why fewer than three backends contributed.
enum class Shortfall {
  None,
  Unavailable,     // no closed form tabulated, or the oracle declined the point
  Requested,       // a backend was switched off
  BackendFailure,  // quadrature did not converge
};

struct Deviations {
  std::optional<double> quadrature_closed;
  std::optional<double> oracle_closed;
  std::optional<double> oracle_quadrature;

  bool operator==(const Deviations&) const = default;
};

struct EvalReport {
  std::string input;
  SeriesSpec spec;
  double x = 0.0;
  std::optional<std::string> closed_form_id;
  std::optional<double> closed_form;
  QuadResult quadrature;
  std::optional<OracleEstimate> oracle;
  Deviations deviations;
  Thresholds thresholds;
  Verdict verdict = Verdict::Partial;
  Shortfall shortfall = Shortfall::None;
  std::vector<std::string> notes;

  bool operator==(const EvalReport&) const = default;
};

struct EvalOptions {
  bool use_closed_form = true;
  bool use_oracle = true;
  QuadConfig quadrature;
  OracleConfig oracle;
  Thresholds thresholds;
};

/// Runs quadrature, and the closed form and oracle when enabled.
/// Throws OutOfDomain before any backend runs if x is not admissible.
EvalReport evaluate_report(const std::string& input, const SeriesSpec& spec, double x, const EvalOptions& options = {});

/// Recomputes deviations and verdict from the backend fields and shortfall.
void assess(EvalReport& report);

/// 0 for AGREE or for PARTIAL without a backend failure, 2 otherwise.
int exit_code(const EvalReport& report);

/// Evenly spaced interior points lo + (hi - lo) i / (points + 1), i = 1..points.
std::vector<double> interior_grid(const Interval& interval, int points);

struct IdentitySummary {
  std::string id;
  SeriesSpec spec;
  std::vector<EvalReport> points;
  double max_quadrature_closed = 0.0;
  double max_oracle_closed = 0.0;
  double max_oracle_quadrature = 0.0;
  bool all_agree = true;

  bool operator==(const IdentitySummary&) const = default;
};

/// AGREE if every point agrees, DISAGREE if any point disagrees, PARTIAL otherwise.
Verdict summary_verdict(const IdentitySummary& summary);

/// Evaluates one tabulated identity on its interior grid.
IdentitySummary check_identity(const std::string& id, const SeriesSpec& spec, int grid, const EvalOptions& options = {});

// JSON. Floats use the shortest text that reads back to the same binary64 value.
std::string to_json(const EvalReport& report, int indent = 2);
EvalReport report_from_json(const std::string& text);
std::string reports_to_json(const std::vector<EvalReport>& reports, int indent = 2);
std::string check_to_json(const std::vector<IdentitySummary>& rows, int grid, int indent = 2);

// CSV, LF line endings, quoted where needed, floats as %.17g.
std::string csv_header();
std::string csv_row(const EvalReport& report);
std::string reports_to_csv(const std::vector<EvalReport>& reports);

/// %.17g
std::string format_double(double value);

}  // namespace trigsum
