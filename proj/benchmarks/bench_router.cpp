#include <benchmark/benchmark.h>

#include "qramph/router.h"

using namespace qramph;

static void BM_SimulateRouting(benchmark::State& state) {
  RouterSimConfig c;
  c.window = Duration::ns(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_routing(c).fidelity);
}
BENCHMARK(BM_SimulateRouting)->Arg(350)->Arg(1000)->Arg(3500)->Unit(benchmark::kMillisecond);

static void BM_DistortionIntegral(benchmark::State& state) {
  const WavePacket p{state.range(0) ? PulseShape::HyperbolicSecant : PulseShape::Gaussian};
  const ReflectionResponse r{AngularRate::two_pi_mhz(static_cast<double>(state.range(1)))};
  for (auto _ : state) benchmark::DoNotOptimize(distortion_fidelity(p, r));
}
BENCHMARK(BM_DistortionIntegral)->ArgsProduct({{0, 1}, {10, 200, 1000}})->Unit(benchmark::kMicrosecond);
