#include <benchmark/benchmark.h>

#include <cmath>

#include "qramph/error_model.h"
#include "qramph/qram.h"

using namespace qramph;

static void BM_ClassicalQuery(benchmark::State& state) {
  QramConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.encoding = state.range(1) ? Encoding::StandardDualRailVacuum : Encoding::HybridDualRail;
  const std::size_t N = std::size_t{1} << cfg.n;
  const std::vector<cdouble> address(N, cdouble(1.0 / std::sqrt(static_cast<double>(N))));
  std::vector<int> bits(N);
  for (std::size_t i = 0; i < N; ++i) bits[i] = static_cast<int>(i % 3 == 0);
  const DataRegister data = DataRegister::classical(bits);
  for (auto _ : state) benchmark::DoNotOptimize(query(cfg, address, data).leaked);
}
BENCHMARK(BM_ClassicalQuery)->ArgsProduct({{2, 4, 6}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_Trajectory(benchmark::State& state) {
  QramConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  NoiseModel noise;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_trajectory(cfg, noise, seed++).detected);
}
BENCHMARK(BM_Trajectory)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
