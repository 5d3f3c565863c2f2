#include <doctest.h>

#include <cmath>
#include <numbers>

#include "trigsum/closed_forms.hpp"
#include "trigsum/report.hpp"

using namespace trigsum;

namespace {

constexpr double kPi = std::numbers::pi;
const SeriesSpec kSin1 = make_spec({Trig::Sin, SignMode::Plain, IndexSet::AllPositive}, 1);

}  // namespace

TEST_SUITE("report") {
  TEST_CASE("three backends agree") {
    const EvalReport r = evaluate_report("s", kSin1, 1.0);
    CHECK(r.verdict == Verdict::Agree);
    CHECK(r.shortfall == Shortfall::None);
    CHECK(exit_code(r) == 0);
    REQUIRE(r.closed_form);
    CHECK(*r.closed_form_id == "eq3");
    CHECK(r.quadrature.value == doctest::Approx((kPi - 1.0) / 2).epsilon(1e-12));
    CHECK(r.deviations.quadrature_closed);
    CHECK(r.deviations.oracle_closed);
    CHECK(r.deviations.oracle_quadrature);
  }

  TEST_CASE("disabled oracle gives a requested partial") {
    EvalOptions o;
    o.use_oracle = false;
    const EvalReport r = evaluate_report("s", kSin1, 1.0, o);
    CHECK(r.verdict == Verdict::Partial);
    CHECK(r.shortfall == Shortfall::Requested);
    CHECK(exit_code(r) == 0);
    CHECK_FALSE(r.oracle);
  }

  TEST_CASE("no identity for the power") {
    const SeriesSpec cos3 = make_spec({Trig::Cos, SignMode::Plain, IndexSet::AllPositive}, 3);
    const EvalReport r = evaluate_report("s", cos3, 1.0);
    CHECK(r.verdict == Verdict::Partial);
    CHECK(r.shortfall == Shortfall::Unavailable);
    CHECK(exit_code(r) == 0);
    REQUIRE(r.oracle);
    CHECK(std::fabs(r.oracle->value - r.quadrature.value) <= 1e-6);
  }

  TEST_CASE("oracle refusal counts as unavailable") {
    const SeriesSpec cos1 = make_spec({Trig::Cos, SignMode::Plain, IndexSet::AllPositive}, 1);
    const EvalReport r = evaluate_report("s", cos1, 0.01);
    CHECK(r.verdict == Verdict::Partial);
    CHECK(r.shortfall == Shortfall::Unavailable);
    CHECK(exit_code(r) == 0);
  }

  TEST_CASE("quadrature failure") {
    EvalOptions o;
    o.quadrature.max_evals = 50;
    const EvalReport r = evaluate_report("s", kSin1, 0.01, o);
    CHECK(r.shortfall == Shortfall::BackendFailure);
    CHECK_FALSE(r.quadrature.converged);
    CHECK(exit_code(r) == 2);
  }

  TEST_CASE("disagreement") {
    EvalReport r = evaluate_report("s", kSin1, 1.0);
    r.closed_form = *r.closed_form + 1e-8;
    assess(r);
    CHECK(r.verdict == Verdict::Disagree);
    CHECK(exit_code(r) == 2);
  }

  TEST_CASE("domain errors precede evaluation") {
    CHECK_THROWS_AS(evaluate_report("s", kSin1, 0.0), OutOfDomain);
    CHECK_THROWS_AS(evaluate_report("s", kSin1, NAN), DomainError);
  }

  TEST_CASE("interior grid") {
    const auto g = interior_grid(Interval{0, 4, false, false}, 3);
    REQUIRE(g.size() == 3);
    CHECK(g[1] == doctest::Approx(kPi));
    CHECK_THROWS(interior_grid(Interval{}, 0));
  }

  TEST_CASE("json round-trips every golden report") {
    EvalOptions o;
    for (const auto& cf : closed_form_table()) {
      const IdentitySummary s = check_identity(cf.id, cf.spec, 5, o);
      CHECK(summary_verdict(s) == Verdict::Agree);
      for (const auto& r : s.points) CHECK(report_from_json(to_json(r)) == r);
    }
    EvalOptions partial;
    partial.use_oracle = false;
    const EvalReport r = evaluate_report("sum(n=1..inf, cos(n*x)/n^3)", make_spec({Trig::Cos, SignMode::Plain, IndexSet::AllPositive}, 3), 0.5, partial);
    CHECK(report_from_json(to_json(r)) == r);
    CHECK(report_from_json(to_json(r, -1)) == r);
  }

  TEST_CASE("json carries the schema tag") {
    const std::string j = to_json(evaluate_report("s", kSin1, 1.0));
    CHECK(j.find("\"schema\": \"trigsum/1\"") != std::string::npos);
    CHECK_THROWS(report_from_json("{\"schema\": \"other/2\"}"));
  }

  TEST_CASE("csv") {
    std::vector<EvalReport> rs;
    for (double x : {0.5, 1.0}) rs.push_back(evaluate_report("sum(n=1..inf, sin(n*x)/n)", kSin1, x));
    const std::string csv = reports_to_csv(rs);
    CHECK(csv.rfind(csv_header(), 0) == 0);
    std::size_t lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 3);
    CHECK(csv.find('\r') == std::string::npos);
    CHECK(format_double(0.1) == "0.10000000000000001");
  }
}
