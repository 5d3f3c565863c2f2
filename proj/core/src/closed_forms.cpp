#include "trigsum/closed_forms.hpp"

#include <cmath>
#include <numbers>

#include "trigsum/compensated_sum.hpp"
#include "trigsum/quadrature.hpp"

namespace trigsum {

namespace {

constexpr double kPi = std::numbers::pi;

double eq1(double x) { return -std::log(2.0 * std::sin(x / 2.0)); }
double eq2(double x) { return (3.0 * x * x - 6.0 * kPi * x + 2.0 * kPi * kPi) / 12.0; }
double eq3(double x) { return (kPi - x) / 2.0; }
double eq4(double x) { return -std::log(2.0 * std::cos(x / 2.0)); }
double eq5(double x) { return (3.0 * x * x - kPi * kPi) / 12.0; }
double eq6(double x) { return -0.5 * std::log(std::tan(x / 2.0)); }
double eq7(double x) { return (kPi * kPi - 2.0 * kPi * x) / 8.0; }
double intro(double x) { return kPi * x / 4.0; }

}  // namespace

const std::vector<ClosedForm>& closed_form_table() {
  using enum Trig;
  static const std::vector<ClosedForm> table = {
      {make_spec({Cos, SignMode::Plain, IndexSet::AllPositive}, 1), "eq1", "−ln(2 sin(x/2))", eq1},
      {make_spec({Cos, SignMode::Plain, IndexSet::AllPositive}, 2), "eq2", "(3x² − 6πx + 2π²)/12", eq2},
      {make_spec({Sin, SignMode::Plain, IndexSet::AllPositive}, 1), "eq3", "(π − x)/2", eq3},
      {make_spec({Cos, SignMode::Alternating, IndexSet::AllPositive}, 1), "eq4", "−ln(2 cos(x/2))", eq4},
      {make_spec({Cos, SignMode::Alternating, IndexSet::AllPositive}, 2), "eq5", "(3x² − π²)/12", eq5},
      {make_spec({Cos, SignMode::Plain, IndexSet::OddViaShift}, 1), "eq6", "−(1/2) ln tan(x/2)", eq6},
      {make_spec({Cos, SignMode::Plain, IndexSet::OddViaShift}, 2), "eq7", "(π² − 2πx)/8", eq7},
      {make_spec({Sin, SignMode::Alternating, IndexSet::OddViaShift}, 2), "intro", "πx/4", intro},
  };
  return table;
}

const ClosedForm* find_closed_form(const SeriesSpec& spec) {
  for (const auto& cf : closed_form_table()) {
    if (cf.spec == spec) return &cf;
  }
  return nullptr;
}

std::optional<double> closed_form(const SeriesSpec& spec, double x) {
  require_in_domain(spec, x);
  const ClosedForm* cf = find_closed_form(spec);
  if (cf == nullptr) return std::nullopt;
  return cf->evaluator(x);
}

double integrate_identity_check(double x, int panels) {
  if (!(x >= 0.0 && x <= 2.0 * kPi)) throw DomainError("integrate_identity_check requires 0 <= x <= 2π");
  if (panels < 1) throw DomainError("integrate_identity_check requires at least one panel");
  const Integrand sawtooth = [](double s) { return eq3(s); };
  CompensatedSum integral;
  const double h = x / panels;
  for (int i = 0; i < panels; ++i) {
    const double a = i * h;
    const double b = i + 1 == panels ? x : (i + 1) * h;
    integral += gauss_kronrod21(sawtooth, a, b).kronrod;
  }
  const double lhs = kPi * kPi / 6.0 - integral.value();
  return std::fabs(lhs - eq2(x));
}

}  // namespace trigsum
