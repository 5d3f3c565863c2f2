#include "trigsum_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "trigsum/closed_forms.hpp"
#include "trigsum/expr.hpp"
#include "trigsum/laplace_rewrite.hpp"
#include "trigsum/report.hpp"

namespace trigsum::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Backends {
  bool no_oracle = false;
  std::optional<double> abs_tol;
  std::optional<double> rel_tol;
};

void add_backend_flags(CLI::App* cmd, Backends& b) {
  cmd->add_flag("--no-oracle", b.no_oracle, "Skip the direct-summation oracle");
  cmd->add_option("--abs-tol", b.abs_tol, "Quadrature absolute tolerance");
  cmd->add_option("--rel-tol", b.rel_tol, "Quadrature relative tolerance");
}

long long max_evals_from_env(long long fallback) {
  const char* raw = std::getenv("TRIGSUM_MAX_EVALS");
  if (raw == nullptr || *raw == '\0') return fallback;
  const std::string_view text(raw);
  long long value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value <= 0) {
    throw UsageError("TRIGSUM_MAX_EVALS must be a positive integer, got '" + std::string(text) + "'");
  }
  return value;
}

EvalOptions make_options(const Backends& b) {
  EvalOptions o;
  o.use_oracle = !b.no_oracle;
  if (b.abs_tol) o.quadrature.abs_tol = *b.abs_tol;
  if (b.rel_tol) o.quadrature.rel_tol = *b.rel_tol;
  o.quadrature.max_evals = max_evals_from_env(o.quadrature.max_evals);
  try {
    o.quadrature.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return o;
}

SeriesSpec spec_of(const std::string& text) { return classify(parse(text)); }

double prepare_x(const SeriesSpec& spec, double x, bool normalize) {
  if (!std::isfinite(x)) throw UsageError("x must be finite");
  if (normalize) {
    if (auto moved = normalize_angle(spec, x)) return *moved;
  }
  return x;
}

std::string optional_text(const std::optional<double>& v) { return v ? format_double(*v) : "n/a"; }

void print_report(std::ostream& out, const EvalReport& r) {
  out << "series:     " << canonical_text(r.spec) << '\n';
  out << "family:     " << family_name(r.spec.family) << ", nu = " << r.spec.power
      << ", valid on " << r.spec.validity.to_string() << '\n';
  out << "x:          " << format_double(r.x) << '\n';
  if (r.closed_form) {
    out << "closed:     " << format_double(*r.closed_form) << "  (" << *r.closed_form_id << ")\n";
  } else {
    out << "closed:     n/a\n";
  }
  out << "quadrature: " << format_double(r.quadrature.value) << "  +/- " << format_double(r.quadrature.error_estimate)
      << "  (" << r.quadrature.evals << " evals" << (r.quadrature.converged ? "" : ", not converged") << ")\n";
  if (r.oracle) {
    out << "oracle:     " << format_double(r.oracle->value) << "  +/- " << format_double(r.oracle->error_bound) << "  ("
        << method_name(r.oracle->method) << ", " << r.oracle->terms_used << " terms)\n";
  } else {
    out << "oracle:     n/a\n";
  }
  out << "|quad-closed| = " << optional_text(r.deviations.quadrature_closed)
      << ", |oracle-closed| = " << optional_text(r.deviations.oracle_closed)
      << ", |oracle-quad| = " << optional_text(r.deviations.oracle_quadrature) << '\n';
  for (const auto& note : r.notes) out << "note: " << note << '\n';
  out << "verdict:    " << verdict_name(r.verdict) << '\n';
}

int cmd_eval(const std::string& series, double x, const std::string& format, bool normalize, const Backends& b,
             std::ostream& out) {
  const EvalOptions options = make_options(b);
  const SeriesSpec spec = spec_of(series);
  const EvalReport r = evaluate_report(series, spec, prepare_x(spec, x, normalize), options);
  if (format == "json") {
    out << to_json(r) << '\n';
  } else if (format == "csv") {
    out << csv_header() << csv_row(r);
  } else {
    print_report(out, r);
  }
  return exit_code(r);
}

int cmd_rewrite(const std::string& series, const std::string& format, std::ostream& out) {
  const SeriesSpec spec = spec_of(series);
  const auto fmt = format == "latex" ? RenderFormat::Latex : RenderFormat::Text;
  for (const auto& line : render_derivation(spec, fmt)) out << line << '\n';
  return 0;
}

int cmd_check(bool all, const std::optional<std::string>& family, const std::optional<int>& nu, int grid,
              const std::string& format, const Backends& b, std::ostream& out) {
  if (grid < 1) throw UsageError("--grid must be at least 1");
  if (all && (family || nu)) throw UsageError("--all cannot be combined with --family or --nu");
  std::optional<Family> wanted;
  if (family) {
    wanted = parse_family_name(*family);
    if (!wanted) throw UsageError("unknown family '" + *family + "'");
  }
  const EvalOptions options = make_options(b);

  std::vector<IdentitySummary> rows;
  for (const auto& cf : closed_form_table()) {
    if (wanted && cf.spec.family != *wanted) continue;
    if (nu && cf.spec.power != *nu) continue;
    rows.push_back(check_identity(cf.id, cf.spec, grid, options));
  }
  if (rows.empty()) throw UsageError("no tabulated identity matches the filter");

  int code = 0;
  for (const auto& row : rows) {
    for (const auto& r : row.points) code = std::max(code, exit_code(r));
  }

  if (format == "json") {
    out << check_to_json(rows, grid) << '\n';
  } else if (format == "csv") {
    out << "id,family,nu,points,max_dev_quadrature_closed,max_dev_oracle_closed,max_dev_oracle_quadrature,verdict\n";
    for (const auto& row : rows) {
      out << row.id << ',' << family_name(row.spec.family) << ',' << row.spec.power << ',' << row.points.size() << ','
          << format_double(row.max_quadrature_closed) << ',' << format_double(row.max_oracle_closed) << ','
          << format_double(row.max_oracle_quadrature) << ',' << verdict_name(summary_verdict(row)) << '\n';
    }
  } else {
    char line[200];
    std::snprintf(line, sizeof line, "%-6s %-12s %3s %6s  %-12s %-12s %-12s %s\n", "id", "family", "nu", "points",
                  "quad-closed", "orc-closed", "orc-quad", "verdict");
    out << line;
    for (const auto& row : rows) {
      std::snprintf(line, sizeof line, "%-6s %-12s %3d %6zu  %-12.3e %-12.3e %-12.3e %s\n", row.id.c_str(),
                    family_name(row.spec.family).c_str(), row.spec.power, row.points.size(),
                    row.max_quadrature_closed, row.max_oracle_closed, row.max_oracle_quadrature,
                    verdict_name(summary_verdict(row)).c_str());
      out << line;
    }
  }
  return code;
}

int cmd_table(const std::string& series, const std::vector<double>& xs, const std::string& format, bool normalize,
              const Backends& b, std::ostream& out) {
  if (xs.empty()) throw UsageError("table needs at least one x value (--x a,b,c)");
  const EvalOptions options = make_options(b);
  const SeriesSpec spec = spec_of(series);
  std::vector<EvalReport> reports;
  int code = 0;
  for (double x : xs) {
    reports.push_back(evaluate_report(series, spec, prepare_x(spec, x, normalize), options));
    code = std::max(code, exit_code(reports.back()));
  }
  if (format == "json") {
    out << reports_to_json(reports) << '\n';
  } else {
    out << reports_to_csv(reports);
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evaluate and cross-check trigonometric series sum trig(k x)/k^nu", "trigsum"};
  app.require_subcommand(1);

  std::string series;
  double x = 0.0;
  std::vector<double> xs;
  std::string format = "ascii";
  bool normalize = false;
  bool all = false;
  std::optional<std::string> family;
  std::optional<int> nu;
  int grid = 25;
  Backends backends;

  auto* eval = app.add_subcommand("eval", "Evaluate a series at one point with all backends");
  eval->add_option("series", series, "Series in the sum(...) notation")->required();
  eval->add_option("--x", x, "Evaluation point")->required();
  eval->add_option("--format", format, "Output format")->check(CLI::IsMember({"ascii", "json", "csv"}));
  eval->add_flag("--normalize-angle", normalize, "Shift x by a multiple of 2 pi into the validity interval");
  add_backend_flags(eval, backends);

  auto* rewrite = app.add_subcommand("rewrite", "Print the integral representation");
  rewrite->add_option("series", series, "Series in the sum(...) notation")->required();
  rewrite->add_option("--format", format, "Output format")->check(CLI::IsMember({"ascii", "latex"}));

  auto* check = app.add_subcommand("check", "Verify the tabulated identities on an interior grid");
  check->add_flag("--all", all, "All tabulated identities (the default)");
  check->add_option("--family", family, "Family name: cos, sin, cos-alt, cos-odd, sin-alt-odd, ...");
  check->add_option("--nu", nu, "Power of the index in the denominator");
  check->add_option("--grid", grid, "Interior grid points per identity");
  check->add_option("--format", format, "Output format")->check(CLI::IsMember({"ascii", "json", "csv"}));
  add_backend_flags(check, backends);

  auto* table = app.add_subcommand("table", "Emit a value table for several x");
  table->add_option("--series", series, "Series in the sum(...) notation")->required();
  table->add_option("--x", xs, "Comma-separated evaluation points")->delimiter(',');
  table->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  table->add_flag("--normalize-angle", normalize, "Shift x by a multiple of 2 pi into the validity interval");
  add_backend_flags(table, backends);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*eval) return cmd_eval(series, x, format, normalize, backends, out);
    if (*rewrite) return cmd_rewrite(series, format, out);
    if (*check) return cmd_check(all, family, nu, grid, format, backends, out);
    if (*table) return cmd_table(series, xs, table->count("--format") ? format : "csv", normalize, backends, out);
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace trigsum::cli
