#include <benchmark/benchmark.h>

#include "cbl/exact.hpp"
#include "cbl/limit_law.hpp"
#include "cbl/mc.hpp"
#include "cbl/spectral.hpp"
#include "cbl/tail_bounds.hpp"

namespace {

const cbl::ModelParams kCritical{0.5, 1.5, 1.5, 0.5};

void BM_ExactPmf(benchmark::State& state) {
  const auto sz = cbl::SystemSize::split(static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(cbl::exact_pmf(kCritical, sz).log_partition());
  state.SetItemsProcessed(state.iterations() * (sz.n1 + 1) * (sz.n2 + 1));
}
BENCHMARK(BM_ExactPmf)->Arg(200)->Arg(800)->Arg(3200)->Unit(benchmark::kMillisecond);

void BM_Summarize(benchmark::State& state) {
  const auto s = cbl::spectral_data(kCritical);
  const auto tm = cbl::limit_coefficients(kCritical, s);
  const auto pts = cbl::rescaled_transformed_pmf(
      cbl::exact_pmf(kCritical, cbl::SystemSize::split(static_cast<int>(state.range(0)), 0.5)), s);
  for (auto _ : state) benchmark::DoNotOptimize(cbl::summarize(pts, tm).ks_x2);
}
BENCHMARK(BM_Summarize)->Arg(800)->Arg(3200)->Unit(benchmark::kMillisecond);

void BM_GlauberSweep(benchmark::State& state) {
  const auto sz = cbl::SystemSize::split(static_cast<int>(state.range(0)), 0.5);
  cbl::Rng rng(1);
  auto s = cbl::random_initial_state(sz, rng);
  for (auto _ : state) {
    for (int k = 0; k < sz.n(); ++k) s = cbl::glauber_step(s, kCritical, sz, rng);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * sz.n());
}
BENCHMARK(BM_GlauberSweep)->Arg(100)->Arg(20000);

void BM_DirectSampling(benchmark::State& state) {
  const auto pmf = cbl::exact_pmf(kCritical, {50, 50});
  for (auto _ : state) benchmark::DoNotOptimize(cbl::sample_direct(pmf, 100000, 7).draws.size());
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_DirectSampling)->Unit(benchmark::kMillisecond);

void BM_LimitLawCdf(benchmark::State& state) {
  const cbl::LimitLaw law(0.25, 1.0 / 24);
  double t = -3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(law.marginal_cdf_x2(t));
    t = t > 3 ? -3 : t + 0.001;
  }
}
BENCHMARK(BM_LimitLawCdf);

void BM_ExcludedBallIntegral(benchmark::State& state) {
  const auto s = cbl::spectral_data(kCritical);
  const auto c = cbl::transformed_coefficients(kCritical, s);
  for (auto _ : state)
    benchmark::DoNotOptimize(cbl::excluded_ball_integral(0.5, c, static_cast<double>(state.range(0)), 0.1, 40));
}
BENCHMARK(BM_ExcludedBallIntegral)->Arg(1)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
