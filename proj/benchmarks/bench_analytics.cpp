#include <benchmark/benchmark.h>

#include "qramph/analytics.h"
#include "qramph/error_model.h"

using namespace qramph;

static void BM_HeraldingSweep(benchmark::State& state) {
  for (auto _ : state) {
    double acc = 0.0;
    for (int n = 1; n <= 10; ++n)
      for (double tm : {0.5, 2.0, 10.0})
        acc += heralding_rate({n, Encoding::HybridDualRail, Duration::ns(350), Duration::us(100), Duration::us(tm)})
                   .rate_hz;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_HeraldingSweep);

static void BM_MonteCarloSuccess(benchmark::State& state) {
  QramConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_success_prob(cfg, NoiseModel{}, 10000, 1).p);
}
BENCHMARK(BM_MonteCarloSuccess)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
