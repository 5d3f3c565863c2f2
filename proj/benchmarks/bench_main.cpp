#include <benchmark/benchmark.h>

#include <numbers>

#include "trigsum/closed_forms.hpp"
#include "trigsum/expr.hpp"
#include "trigsum/laplace_rewrite.hpp"
#include "trigsum/quadrature.hpp"
#include "trigsum/summation_oracle.hpp"

using namespace trigsum;

namespace {

const SeriesSpec& spec_of(int64_t slot) {
  return closed_form_table()[static_cast<std::size_t>(slot)].spec;
}

void BM_ParseClassify(benchmark::State& state) {
  const std::string text = "sum(n=0..inf, (-1)^n * sin((2*n+1)*x)/(2*n+1)^2)";
  for (auto _ : state) benchmark::DoNotOptimize(classify(parse(text)));
}
BENCHMARK(BM_ParseClassify);

void BM_Quadrature(benchmark::State& state) {
  const SeriesSpec& spec = spec_of(state.range(0));
  const double x = 0.5 * (spec.validity.lo() + spec.validity.hi()) + 0.1;
  const IntegralRep rep = build_integral_rep(spec, x);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(rep));
}
BENCHMARK(BM_Quadrature)->DenseRange(0, 7);

void BM_QuadratureNearPole(benchmark::State& state) {
  const SeriesSpec spec = make_spec({Trig::Cos, SignMode::Plain, IndexSet::AllPositive}, 1);
  const IntegralRep rep = build_integral_rep(spec, 1e-6);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(rep));
}
BENCHMARK(BM_QuadratureNearPole);

void BM_Oracle(benchmark::State& state) {
  const SeriesSpec& spec = spec_of(state.range(0));
  const double x = 0.5 * (spec.validity.lo() + spec.validity.hi()) + 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(estimate(spec, x));
}
BENCHMARK(BM_Oracle)->DenseRange(0, 7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
