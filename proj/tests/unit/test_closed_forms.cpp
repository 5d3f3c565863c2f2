#include <doctest.h>

#include <cmath>
#include <numbers>

#include "trigsum/closed_forms.hpp"
#include "trigsum/report.hpp"

using namespace trigsum;

namespace {

constexpr double kPi = std::numbers::pi;

const ClosedForm& by_id(const std::string& id) {
  for (const auto& cf : closed_form_table()) {
    if (cf.id == id) return cf;
  }
  throw std::invalid_argument(id);
}

}  // namespace

TEST_SUITE("closed-forms") {
  TEST_CASE("table has one entry per identity") {
    const auto& table = closed_form_table();
    REQUIRE(table.size() == 8);
    const char* ids[] = {"eq1", "eq2", "eq3", "eq4", "eq5", "eq6", "eq7", "intro"};
    for (std::size_t i = 0; i < 8; ++i) CHECK(table[i].id == ids[i]);
    for (std::size_t i = 0; i < table.size(); ++i)
      for (std::size_t j = i + 1; j < table.size(); ++j) CHECK_FALSE(table[i].spec == table[j].spec);
  }

  TEST_CASE("anchor values") {
    CHECK(*closed_form(by_id("eq1").spec, kPi) == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
    CHECK(*closed_form(by_id("eq2").spec, kPi) == doctest::Approx(-kPi * kPi / 12).epsilon(1e-15));
    CHECK(*closed_form(by_id("eq2").spec, 0.0) == doctest::Approx(kPi * kPi / 6).epsilon(1e-15));
    CHECK(*closed_form(by_id("eq3").spec, kPi / 2) == doctest::Approx(kPi / 4).epsilon(1e-15));
    CHECK(*closed_form(by_id("intro").spec, kPi / 2) == doctest::Approx(kPi * kPi / 8).epsilon(1e-15));
    CHECK(std::fabs(*closed_form(by_id("eq7").spec, kPi / 2)) < 1e-15);
  }

  TEST_CASE("specs without an identity") {
    const auto spec = make_spec({Trig::Cos, SignMode::Plain, IndexSet::AllPositive}, 3);
    CHECK_FALSE(closed_form(spec, 1.0).has_value());
    CHECK(find_closed_form(spec) == nullptr);
  }

  TEST_CASE("open endpoints are out of domain") {
    for (const auto& cf : closed_form_table()) {
      const Interval& iv = cf.spec.validity;
      if (!iv.lo_closed) CHECK_THROWS_AS(closed_form(cf.spec, iv.lo()), OutOfDomain);
      if (!iv.hi_closed) CHECK_THROWS_AS(closed_form(cf.spec, iv.hi()), OutOfDomain);
      CHECK_THROWS_AS(closed_form(cf.spec, iv.hi() + 0.1), OutOfDomain);
    }
  }

  TEST_CASE("logarithmic identities grow without bound towards their endpoints") {
    const auto& eq1 = by_id("eq1").spec;
    CHECK(*closed_form(eq1, 1e-8) > *closed_form(eq1, 1e-4));
    CHECK(*closed_form(eq1, 2 * kPi - 1e-8) > *closed_form(eq1, 2 * kPi - 1e-4));
  }

  TEST_CASE("quadratic identity is symmetric about pi") {
    const auto& eq2 = by_id("eq2").spec;
    for (double x : interior_grid(eq2.validity, 25)) {
      CHECK(*closed_form(eq2, x) == doctest::Approx(*closed_form(eq2, 2 * kPi - x)).epsilon(1e-14));
    }
  }

  TEST_CASE("odd part is half the difference of all and alternating") {
    const auto& eq6 = by_id("eq6").spec;
    for (double x : interior_grid(eq6.validity, 25)) {
      const double all = *closed_form(by_id("eq1").spec, x);
      const double alt = *closed_form(by_id("eq4").spec, x);
      CHECK(std::fabs(*closed_form(eq6, x) - (0.5 * all - 0.5 * alt)) <= 1e-12);
    }
  }

  TEST_CASE("integrating the sawtooth gives the quadratic") {
    CHECK(integrate_identity_check(kPi) < 1e-10);
    CHECK(integrate_identity_check(1e-12) < 1e-10);
    CHECK(integrate_identity_check(2 * kPi) < 1e-10);
    for (double x : interior_grid(Interval{0, 4, false, false}, 25)) CHECK(integrate_identity_check(x) < 1e-10);
    CHECK_THROWS(integrate_identity_check(-0.1));
    CHECK_THROWS(integrate_identity_check(1.0, 0));
  }
}
