#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "reference.hpp"
#include "trigsum/closed_forms.hpp"
#include "trigsum/quadrature.hpp"
#include "trigsum/report.hpp"

using namespace trigsum;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCatalan = 0.915965594177219015054603514932384110774;

double exact_error(const ClosedForm& cf, double x, double value) {
  return static_cast<double>(std::fabs(static_cast<long double>(value) - testing::reference_value(cf.id, x)));
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("sine nu = 1 at pi/2 is pi/4") {
    const auto spec = make_spec({Trig::Sin, SignMode::Plain, IndexSet::AllPositive}, 1);
    const QuadResult r = integrate(build_integral_rep(spec, kPi / 2));
    CHECK(r.converged);
    CHECK(std::fabs(r.value - kPi / 4) < 1e-12);
    CHECK(r.error_estimate < 1e-12);
  }

  TEST_CASE("cosine nu = 2 at 0 is pi^2/6") {
    const auto spec = make_spec({Trig::Cos, SignMode::Plain, IndexSet::AllPositive}, 2);
    const QuadResult r = integrate(build_integral_rep(spec, 0.0));
    CHECK(r.converged);
    CHECK(std::fabs(r.value - kPi * kPi / 6) < 1e-12);
  }

  TEST_CASE("identically zero integrand costs nothing") {
    const auto spec = make_spec({Trig::Sin, SignMode::Plain, IndexSet::AllPositive}, 2);
    const QuadResult r = integrate(build_integral_rep(spec, 0.0));
    CHECK(r.converged);
    CHECK(r.value == 0.0);
    CHECK(r.evals <= 21);
  }

  TEST_CASE("log endpoint examples") {
    const Integrand one = [](double) { return 1.0; };
    const QuadResult a = integrate_log_endpoint(one, 1, 1.0);
    CHECK(std::fabs(a.value + 1.0) < 1e-13);
    const QuadResult b = integrate_log_endpoint(one, 2, 1.0);
    CHECK(std::fabs(b.value - 2.0) < 1e-12);
    const Integrand lorentz = [](double u) { return 1.0 / (1.0 + u * u); };
    const QuadResult c = integrate_log_endpoint(lorentz, 1, 1.0);
    CHECK(std::fabs(c.value + kCatalan) < 1e-10);
    // Partial interval: int_0^a ln u du = a ln a - a.
    const QuadResult d = integrate_log_endpoint(one, 1, 0.25);
    CHECK(std::fabs(d.value - (0.25 * std::log(0.25) - 0.25)) < 1e-13);
    CHECK_THROWS(integrate_log_endpoint(one, 0, 1.0));
  }

  TEST_CASE("converged results meet the tolerance") {
    for (const auto& cf : closed_form_table()) {
      for (double x : interior_grid(cf.spec.validity, 7)) {
        const QuadResult r = integrate(build_integral_rep(cf.spec, x));
        CHECK(r.converged);
        CHECK(r.error_estimate <= std::max(1e-12, 1e-10 * std::fabs(r.value)));
      }
    }
  }

  TEST_CASE("error estimates are honest close to the endpoints") {
    std::mt19937_64 rng(20261016);
    for (const auto& cf : closed_form_table()) {
      const Interval& iv = cf.spec.validity;
      std::uniform_real_distribution<double> exponent(-12.0, -0.5);
      for (int i = 0; i < 60; ++i) {
        const double d = std::pow(10.0, exponent(rng));
        const double x = i % 2 == 0 ? iv.lo() + d : iv.hi() - d;
        if (validate_point(cf.spec, x) == PointClass::OutOfDomain) continue;
        const QuadResult r = integrate(build_integral_rep(cf.spec, x));
        CAPTURE(cf.id);
        CAPTURE(x);
        CHECK(r.converged);
        CHECK(exact_error(cf, x, r.value) <= 10.0 * r.error_estimate + 1e-15);
      }
    }
  }

  TEST_CASE("results are bit-identical across runs") {
    const auto spec = make_spec({Trig::Cos, SignMode::Alternating, IndexSet::AllPositive}, 2);
    const auto rep = build_integral_rep(spec, 2.9);
    CHECK(integrate(rep) == integrate(rep));
  }

  TEST_CASE("panel splitting at the denominator minimum is load-bearing") {
    // Grid points never get this close to an endpoint; stress points do.
    QuadConfig off;
    off.split_near_singular = false;
    int failures = 0;
    for (const auto& cf : closed_form_table()) {
      for (double d : {1e-3, 1e-6, 1e-9}) {
        for (double x : {cf.spec.validity.lo() + d, cf.spec.validity.hi() - d}) {
          const auto rep = build_integral_rep(cf.spec, x);
          if (!rep.kernel->minimum_location(x) || rep.kernel->minimum_value(x) >= 1e-4) continue;
          const QuadResult on = integrate(rep);
          CHECK(exact_error(cf, x, on.value) <= std::min(1e-9, 10.0 * on.error_estimate + 1e-15));
          try {
            const QuadResult r = integrate(rep, off);
            const double err = exact_error(cf, x, r.value);
            if (err > 1e-9 || err > 10.0 * r.error_estimate + 1e-15) ++failures;
          } catch (const NoConvergence&) {
            ++failures;
          }
        }
      }
    }
    CHECK(failures >= 1);
  }

  TEST_CASE("budget exhaustion") {
    const auto spec = make_spec({Trig::Sin, SignMode::Plain, IndexSet::AllPositive}, 1);
    const auto rep = build_integral_rep(spec, 0.01);
    QuadConfig tiny;
    tiny.max_evals = 50;
    try {
      integrate(rep, tiny);
      FAIL("expected NoConvergence");
    } catch (const NoConvergence& e) {
      CHECK_FALSE(e.best().converged);
      CHECK(std::fabs(e.best().value - (kPi - 0.01) / 2) < 1.0);
    }
  }

  TEST_CASE("more budget never increases the error estimate of a failed run") {
    const auto spec = make_spec({Trig::Cos, SignMode::Plain, IndexSet::AllPositive}, 1);
    const auto rep = build_integral_rep(spec, 0.01);
    double previous = INFINITY;
    for (long long budget = 42; budget <= 2000; budget += 42) {
      QuadConfig c;
      c.max_evals = budget;
      c.split_near_singular = false;
      try {
        integrate(rep, c);
        break;
      } catch (const NoConvergence& e) {
        CHECK(e.best().error_estimate <= previous);
        previous = e.best().error_estimate;
      }
    }
  }

  TEST_CASE("non-finite integrand is reported") {
    const Integrand bad = [](double u) { return u > 0.3 ? NAN : 1.0; };
    const double breaks[] = {0.0, 1.0};
    CHECK_THROWS_AS(Integrator().integrate_function(bad, breaks), NonFinite);
  }

  TEST_CASE("config validation") {
    QuadConfig c;
    c.max_depth = 61;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.abs_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  }

  TEST_CASE("panel breaks include 0, 1/2, 1 and the minimum") {
    const auto spec = make_spec({Trig::Cos, SignMode::Plain, IndexSet::AllPositive}, 1);
    const auto rep = build_integral_rep(spec, 1.2);
    const auto breaks = panel_breaks(rep, {});
    auto has = [&](double b) { return std::find(breaks.begin(), breaks.end(), b) != breaks.end(); };
    CHECK(has(0.0));
    CHECK(has(0.5));
    CHECK(has(1.0));
    CHECK(has(std::cos(1.2)));
    CHECK(std::is_sorted(breaks.begin(), breaks.end()));
  }
}
