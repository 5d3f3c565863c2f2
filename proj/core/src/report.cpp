#include "trigsum/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "trigsum/closed_forms.hpp"
#include "trigsum/laplace_rewrite.hpp"

namespace trigsum {

namespace {

using Json = nlohmann::ordered_json;

void raise(Shortfall& current, Shortfall s) {
  if (static_cast<int>(s) > static_cast<int>(current)) current = s;
}

std::string shortfall_name(Shortfall s) {
  switch (s) {
    case Shortfall::None: return "none";
    case Shortfall::Unavailable: return "unavailable";
    case Shortfall::Requested: return "requested";
    case Shortfall::BackendFailure: return "backend-failure";
  }
  return "none";
}

Shortfall parse_shortfall(const std::string& s) {
  for (Shortfall v : {Shortfall::None, Shortfall::Unavailable, Shortfall::Requested, Shortfall::BackendFailure}) {
    if (shortfall_name(v) == s) return v;
  }
  throw std::invalid_argument("unknown shortfall: " + s);
}

Verdict parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::Agree, Verdict::Disagree, Verdict::Partial}) {
    if (verdict_name(v) == s) return v;
  }
  throw std::invalid_argument("unknown verdict: " + s);
}

OracleMethod parse_method(const std::string& s) {
  for (OracleMethod m : {OracleMethod::PlainTail, OracleMethod::CesaroIterated, OracleMethod::RichardsonTail}) {
    if (method_name(m) == s) return m;
  }
  throw std::invalid_argument("unknown oracle method: " + s);
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> read_optional(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

Json series_json(const SeriesSpec& spec) {
  Json j;
  j["family"] = family_name(spec.family);
  j["power"] = spec.power;
  j["validity"] = spec.validity.to_string();
  j["canonical"] = canonical_text(spec);
  return j;
}

SeriesSpec series_from_json(const Json& j) {
  const auto family = parse_family_name(j.at("family").get<std::string>());
  if (!family) throw std::invalid_argument("unknown family in report");
  return make_spec(*family, j.at("power").get<int>());
}

Json report_json(const EvalReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["input"] = r.input;
  j["series"] = series_json(r.spec);
  j["x"] = r.x;
  j["closed_form_id"] = r.closed_form_id ? Json(*r.closed_form_id) : Json(nullptr);
  j["closed_form"] = optional_number(r.closed_form);
  j["quadrature"] = Json{{"value", r.quadrature.value},
                         {"error_estimate", r.quadrature.error_estimate},
                         {"evals", r.quadrature.evals},
                         {"converged", r.quadrature.converged},
                         {"panels", r.quadrature.panels}};
  if (r.oracle) {
    j["oracle"] = Json{{"value", r.oracle->value},
                       {"error_bound", r.oracle->error_bound},
                       {"terms", r.oracle->terms_used},
                       {"method", method_name(r.oracle->method)}};
  } else {
    j["oracle"] = nullptr;
  }
  j["deviations"] = Json{{"quadrature_closed", optional_number(r.deviations.quadrature_closed)},
                         {"oracle_closed", optional_number(r.deviations.oracle_closed)},
                         {"oracle_quadrature", optional_number(r.deviations.oracle_quadrature)}};
  j["thresholds"] = Json{{"quadrature_closed", r.thresholds.quadrature_closed},
                         {"oracle_closed", r.thresholds.oracle_closed},
                         {"oracle_quadrature", r.thresholds.oracle_quadrature}};
  j["verdict"] = verdict_name(r.verdict);
  j["shortfall"] = shortfall_name(r.shortfall);
  j["notes"] = r.notes;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::string verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::Agree: return "AGREE";
    case Verdict::Disagree: return "DISAGREE";
    case Verdict::Partial: return "PARTIAL";
  }
  return "PARTIAL";
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void assess(EvalReport& r) {
  const bool have_quad = r.quadrature.converged;
  const bool have_closed = r.closed_form.has_value();
  const bool have_oracle = r.oracle.has_value();
  r.deviations = {};
  if (have_quad && have_closed) r.deviations.quadrature_closed = std::fabs(r.quadrature.value - *r.closed_form);
  if (have_oracle && have_closed) r.deviations.oracle_closed = std::fabs(r.oracle->value - *r.closed_form);
  if (have_oracle && have_quad) r.deviations.oracle_quadrature = std::fabs(r.oracle->value - r.quadrature.value);

  const auto exceeds = [](const std::optional<double>& d, double limit) { return d && !(*d <= limit); };
  if (exceeds(r.deviations.quadrature_closed, r.thresholds.quadrature_closed) ||
      exceeds(r.deviations.oracle_closed, r.thresholds.oracle_closed) ||
      exceeds(r.deviations.oracle_quadrature, r.thresholds.oracle_quadrature)) {
    r.verdict = Verdict::Disagree;
  } else if (r.shortfall != Shortfall::None) {
    r.verdict = Verdict::Partial;
  } else {
    r.verdict = Verdict::Agree;
  }
}

int exit_code(const EvalReport& r) {
  switch (r.verdict) {
    case Verdict::Agree: return 0;
    case Verdict::Disagree: return 2;
    case Verdict::Partial: return r.shortfall == Shortfall::BackendFailure ? 2 : 0;
  }
  return 2;
}

EvalReport evaluate_report(const std::string& input, const SeriesSpec& spec, double x, const EvalOptions& options) {
  if (!std::isfinite(x)) throw DomainError("x must be finite");
  require_in_domain(spec, x);

  EvalReport r;
  r.input = input;
  r.spec = spec;
  r.x = x;
  r.thresholds = options.thresholds;

  if (!options.use_closed_form) {
    raise(r.shortfall, Shortfall::Requested);
    r.notes.push_back("closed form disabled");
  } else if (const ClosedForm* cf = find_closed_form(spec)) {
    r.closed_form_id = cf->id;
    r.closed_form = closed_form(spec, x);
  } else {
    raise(r.shortfall, Shortfall::Unavailable);
    r.notes.push_back("no tabulated closed form");
  }

  try {
    r.quadrature = integrate(build_integral_rep(spec, x), options.quadrature);
  } catch (const NoConvergence& e) {
    r.quadrature = e.best();
    raise(r.shortfall, Shortfall::BackendFailure);
    r.notes.push_back(std::string("quadrature: ") + e.what());
  } catch (const NonFinite& e) {
    raise(r.shortfall, Shortfall::BackendFailure);
    r.notes.push_back(std::string("quadrature: ") + e.what());
  }

  if (!options.use_oracle) {
    raise(r.shortfall, Shortfall::Requested);
    r.notes.push_back("oracle disabled");
  } else {
    try {
      r.oracle = estimate(spec, x, options.oracle);
    } catch (const NonConvergent& e) {
      raise(r.shortfall, Shortfall::Unavailable);
      r.notes.push_back(std::string("oracle: ") + e.what());
    }
  }

  assess(r);
  return r;
}

std::vector<double> interior_grid(const Interval& interval, int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(points));
  const double lo = interval.lo();
  const double width = interval.hi() - lo;
  for (int i = 1; i <= points; ++i) xs.push_back(lo + width * i / (points + 1));
  return xs;
}

IdentitySummary check_identity(const std::string& id, const SeriesSpec& spec, int grid, const EvalOptions& options) {
  IdentitySummary s;
  s.id = id;
  s.spec = spec;
  const std::string text = canonical_text(spec);
  for (double x : interior_grid(spec.validity, grid)) {
    EvalReport r = evaluate_report(text, spec, x, options);
    const auto bump = [](double& m, const std::optional<double>& d) {
      if (d) m = std::max(m, *d);
    };
    bump(s.max_quadrature_closed, r.deviations.quadrature_closed);
    bump(s.max_oracle_closed, r.deviations.oracle_closed);
    bump(s.max_oracle_quadrature, r.deviations.oracle_quadrature);
    if (r.verdict != Verdict::Agree) s.all_agree = false;
    s.points.push_back(std::move(r));
  }
  return s;
}

Verdict summary_verdict(const IdentitySummary& summary) {
  if (summary.all_agree) return Verdict::Agree;
  for (const auto& r : summary.points) {
    if (r.verdict == Verdict::Disagree) return Verdict::Disagree;
  }
  return Verdict::Partial;
}

std::string to_json(const EvalReport& report, int indent) { return report_json(report).dump(indent); }

EvalReport report_from_json(const std::string& text) {
  const Json j = Json::parse(text);
  if (j.at("schema").get<std::string>() != kSchema) throw std::invalid_argument("unexpected schema");
  EvalReport r;
  r.input = j.at("input").get<std::string>();
  r.spec = series_from_json(j.at("series"));
  r.x = j.at("x").get<double>();
  if (!j.at("closed_form_id").is_null()) r.closed_form_id = j.at("closed_form_id").get<std::string>();
  r.closed_form = read_optional(j.at("closed_form"));
  const Json& q = j.at("quadrature");
  r.quadrature.value = q.at("value").get<double>();
  r.quadrature.error_estimate = q.at("error_estimate").get<double>();
  r.quadrature.evals = q.at("evals").get<long long>();
  r.quadrature.converged = q.at("converged").get<bool>();
  r.quadrature.panels = q.at("panels").get<int>();
  if (const Json& o = j.at("oracle"); !o.is_null()) {
    OracleEstimate e;
    e.value = o.at("value").get<double>();
    e.error_bound = o.at("error_bound").get<double>();
    e.terms_used = o.at("terms").get<long long>();
    e.method = parse_method(o.at("method").get<std::string>());
    r.oracle = e;
  }
  const Json& d = j.at("deviations");
  r.deviations.quadrature_closed = read_optional(d.at("quadrature_closed"));
  r.deviations.oracle_closed = read_optional(d.at("oracle_closed"));
  r.deviations.oracle_quadrature = read_optional(d.at("oracle_quadrature"));
  const Json& t = j.at("thresholds");
  r.thresholds.quadrature_closed = t.at("quadrature_closed").get<double>();
  r.thresholds.oracle_closed = t.at("oracle_closed").get<double>();
  r.thresholds.oracle_quadrature = t.at("oracle_quadrature").get<double>();
  r.verdict = parse_verdict(j.at("verdict").get<std::string>());
  r.shortfall = parse_shortfall(j.at("shortfall").get<std::string>());
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

std::string reports_to_json(const std::vector<EvalReport>& reports, int indent) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  return arr.dump(indent);
}

std::string check_to_json(const std::vector<IdentitySummary>& rows, int grid, int indent) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = "check";
  j["grid"] = grid;
  bool all = true;
  Json out = Json::array();
  for (const auto& s : rows) {
    all = all && s.all_agree;
    Json row;
    row["id"] = s.id;
    row["series"] = series_json(s.spec);
    row["points"] = s.points.size();
    row["max_deviation"] = Json{{"quadrature_closed", s.max_quadrature_closed},
                                {"oracle_closed", s.max_oracle_closed},
                                {"oracle_quadrature", s.max_oracle_quadrature}};
    row["verdict"] = verdict_name(summary_verdict(s));
    Json pts = Json::array();
    for (const auto& r : s.points) pts.push_back(report_json(r));
    row["reports"] = std::move(pts);
    out.push_back(std::move(row));
  }
  j["all_agree"] = all;
  j["rows"] = std::move(out);
  return j.dump(indent);
}

std::string csv_header() {
  return "x,family,nu,closed,quadrature,oracle,dev_quadrature_closed,dev_oracle_closed,dev_oracle_quadrature,verdict\n";
}

std::string csv_row(const EvalReport& r) {
  std::string line;
  line += format_double(r.x) + ',';
  line += csv_field(family_name(r.spec.family)) + ',';
  line += std::to_string(r.spec.power) + ',';
  line += csv_number(r.closed_form) + ',';
  line += csv_number(r.quadrature.converged ? std::optional<double>(r.quadrature.value) : std::nullopt) + ',';
  line += csv_number(r.oracle ? std::optional<double>(r.oracle->value) : std::nullopt) + ',';
  line += csv_number(r.deviations.quadrature_closed) + ',';
  line += csv_number(r.deviations.oracle_closed) + ',';
  line += csv_number(r.deviations.oracle_quadrature) + ',';
  line += verdict_name(r.verdict);
  return line + '\n';
}

std::string reports_to_csv(const std::vector<EvalReport>& reports) {
  std::string out = csv_header();
  for (const auto& r : reports) out += csv_row(r);
  return out;
}

}  // namespace trigsum
