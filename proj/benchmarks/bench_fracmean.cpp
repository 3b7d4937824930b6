#include <benchmark/benchmark.h>

#include "fracmean/complex.hpp"
#include "fracmean/distributions.hpp"
#include "fracmean/frac_moment.hpp"
#include "fracmean/rng.hpp"

using namespace fracmean;

static void BM_Gamma(benchmark::State& state) {
  Complex z{0.3, -2.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fracmean::gamma(z));
    z += Complex{1e-9, 0.0};
  }
}
BENCHMARK(BM_Gamma);

static void BM_PrincipalPow(benchmark::State& state) {
  Complex z{-0.7, 0.2}, l{-0.5, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(principal_pow(z, l));
}
BENCHMARK(BM_PrincipalPow);

static void BM_Philox(benchmark::State& state) {
  PhiloxStream rng(7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng());
}
BENCHMARK(BM_Philox);

static void BM_Draw(benchmark::State& state) {
  DistributionModel m = state.range(0) == 0   ? DistributionModel{Cauchy{}}
                        : state.range(0) == 1 ? DistributionModel{ScaledT3{}}
                                              : DistributionModel{Poincare{}};
  PhiloxStream rng(7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(draw(m, rng));
  state.SetLabel(model_name(m));
}
BENCHMARK(BM_Draw)->DenseRange(0, 2);

static void BM_NegativeRoute(benchmark::State& state) {
  QuadratureConfig q;
  for (auto _ : state) benchmark::DoNotOptimize(frac_moment_neg(Cauchy{}, kI, FracOrder(Complex{-0.5, 0.3}), q));
}
BENCHMARK(BM_NegativeRoute)->Unit(benchmark::kMicrosecond);

static void BM_PositiveRoute(benchmark::State& state) {
  QuadratureConfig q;
  for (auto _ : state) benchmark::DoNotOptimize(frac_moment_pos(Poincare{}, 0.0, FracOrder(1.5), q));
}
BENCHMARK(BM_PositiveRoute)->Unit(benchmark::kMicrosecond);

static void BM_PowerMeanQuad(benchmark::State& state) {
  RouteConfig rc;
  double p = state.range(0) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(power_mean_expectation(Poincare{}, {p, 2, 0.0}, Route::Quad, rc));
}
BENCHMARK(BM_PowerMeanQuad)->Arg(-5)->Arg(5)->Unit(benchmark::kMicrosecond);

static void BM_PowerMeanMC(benchmark::State& state) {
  RouteConfig rc;
  rc.mc.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(power_mean_expectation(Poincare{}, {0.5, 2, 0.0}, Route::MonteCarlo, rc));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PowerMeanMC)->Arg(1 << 14)->Arg(1 << 17)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
