#include <doctest.h>

#include <cmath>
#include <numbers>

#include "trigsum/closed_forms.hpp"
#include "trigsum/report.hpp"
#include "trigsum/summation_oracle.hpp"

using namespace trigsum;

namespace {

constexpr double kPi = std::numbers::pi;
const SeriesSpec kSin1 = make_spec({Trig::Sin, SignMode::Plain, IndexSet::AllPositive}, 1);
const SeriesSpec kCos1 = make_spec({Trig::Cos, SignMode::Plain, IndexSet::AllPositive}, 1);
const SeriesSpec kCos2 = make_spec({Trig::Cos, SignMode::Plain, IndexSet::AllPositive}, 2);

}  // namespace

TEST_SUITE("summation-oracle") {
  TEST_CASE("partial sums") {
    const auto s = partial_sums(kSin1, 1.0, 5);
    REQUIRE(s.size() == 5);
    CHECK(s[0] == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
    CHECK(s[4] == doctest::Approx(0.96217422214775).epsilon(1e-13));

    const auto c = partial_sums(kCos2, 0.0, 1000);
    CHECK(c.back() == doctest::Approx(1.64393456668156).epsilon(1e-13));

    const SeriesSpec sin_odd = make_spec({Trig::Sin, SignMode::Alternating, IndexSet::OddViaShift}, 2);
    for (double v : partial_sums(sin_odd, 0.0, 10)) CHECK(v == 0.0);
    CHECK(partial_sums(kSin1, 1.0, 0).empty());
  }

  TEST_CASE("one round of averaging sums the Grandi sequence") {
    constexpr int n = 1001;
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = i % 2 == 0 ? 1.0 : 0.0;
    const auto mean = cesaro_means(s);
    CHECK(std::fabs(mean.back() - 0.5) <= 1.0 / n);
    const auto windowed = iterated_window_means(s, 1, 100);
    CHECK(windowed.size() == static_cast<std::size_t>(n - 99));
    CHECK(std::fabs(windowed.back() - 0.5) <= 1.0 / 100);
  }

  TEST_CASE("richardson is exact on a quadratic in 1/n") {
    auto seq = [](double n) { return 1.0 + 2.0 / n + 3.0 / (n * n); };
    const double sums[] = {seq(400), seq(200), seq(100)};
    CHECK(richardson_tail(sums) == doctest::Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("plain tail bound is monotone in the term count") {
    for (int power = 2; power <= 8; ++power) {
      double previous = INFINITY;
      for (long long n = 100; n <= 100000; n *= 3) {
        const double b = plain_tail_bound(n, power);
        CHECK(b <= previous);
        previous = b;
      }
    }
    CHECK(std::isinf(plain_tail_bound(1000, 1)));
  }

  TEST_CASE("estimate examples") {
    const OracleEstimate a = estimate(kSin1, 1.0);
    CHECK(a.method == OracleMethod::CesaroIterated);
    CHECK(std::fabs(a.value - (kPi - 1.0) / 2) < 1e-6);
    CHECK(a.error_bound < 1e-6);
    CHECK(a.error_bound > 0.0);

    const OracleEstimate b = estimate(kCos1, kPi / 2);
    CHECK(std::fabs(b.value + 0.5 * std::log(2.0)) < 1e-6);

    const OracleEstimate c = estimate(kCos2, 0.0);
    CHECK(std::fabs(c.value - kPi * kPi / 6) < 1e-6);
    CHECK(c.error_bound < 1e-6);
  }

  TEST_CASE("plain tail is used when it already meets the target") {
    const SeriesSpec cos4 = make_spec({Trig::Cos, SignMode::Plain, IndexSet::AllPositive}, 4);
    const OracleEstimate e = estimate(cos4, 1.0);
    CHECK(e.method == OracleMethod::PlainTail);
    CHECK(e.error_bound >= plain_tail_bound(20000, 4));
  }

  TEST_CASE("estimates bracket the closed form") {
    for (const auto& cf : closed_form_table()) {
      for (double x : interior_grid(cf.spec.validity, 9)) {
        CAPTURE(cf.id);
        CAPTURE(x);
        const OracleEstimate e = estimate(cf.spec, x);
        CHECK(std::fabs(e.value - cf.evaluator(x)) <= e.error_bound);
        CHECK(e.error_bound <= 1e-5);
      }
    }
  }

  TEST_CASE("refusals") {
    CHECK_THROWS_AS(estimate(kCos1, 0.01), NonConvergent);
    CHECK_THROWS_AS(estimate(kCos1, 2 * kPi - 0.01), NonConvergent);
    CHECK_THROWS_AS(estimate(kCos1, 0.0), OutOfDomain);
    // A resonance the term budget cannot resolve.
    CHECK_THROWS_AS(estimate(kCos2, 1e-4), NonConvergent);
    OracleConfig few;
    few.terms = 100;
    few.target_tol = 1e-12;
    try {
      estimate(kSin1, 1.0, few);
      FAIL("expected NonConvergent");
    } catch (const NonConvergent& e) {
      REQUIRE(e.best().has_value());
      CHECK(e.best()->error_bound > 1e-12);
    }
  }

  TEST_CASE("config validation") {
    OracleConfig c;
    c.terms = 99;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.cesaro_rounds = 6;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.cesaro_rounds = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }
}
