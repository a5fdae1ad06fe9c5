#include <benchmark/benchmark.h>

#include "ifgi/analytics.hpp"
#include "ifgi/chain.hpp"
#include "ifgi/montecarlo.hpp"
#include "ifgi/sample.hpp"

namespace {

using namespace ifgi;

void BM_ComputeTransfer(benchmark::State& state) {
  const ChainParams params(static_cast<int>(state.range(0)), 0.18, 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_transfer(params));
  }
}
BENCHMARK(BM_ComputeTransfer)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);

void BM_GenerateShot(benchmark::State& state) {
  const int pixels = static_cast<int>(state.range(0));
  long long shot = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_shot(42, shot++, 100.0, pixels));
  }
  state.SetItemsProcessed(state.iterations() * pixels);
}
BENCHMARK(BM_GenerateShot)->Arg(256)->Arg(1024)->Arg(4096);

void BM_DetectorReadout(benchmark::State& state) {
  const BinarySample sample =
      synthesize(SamplePattern::checkerboard, 32, 32, 1.0, 0);
  const auto tc = compute_transfer(ChainParams(10, 0.18, 0.0));
  const auto field = generate_shot(42, 0, 100.0, sample.total());
  const DetectorMode mode =
      state.range(0) ? DetectorMode::poisson : DetectorMode::continuous;
  long long shot = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        detector_readout(field, sample, tc, mode, 42, shot++));
  }
  state.SetItemsProcessed(state.iterations() * sample.total());
}
BENCHMARK(BM_DetectorReadout)->Arg(0)->Arg(1);

void BM_Accumulate(benchmark::State& state) {
  const BinarySample sample =
      synthesize(SamplePattern::checkerboard, 32, 32, 1.0, 0);
  const auto tc = compute_transfer(ChainParams(5, 0.0, 0.0));
  const auto field = generate_shot(42, 0, 100.0, sample.total());
  const ShotReadout readout = detector_readout(
      field, sample, tc, DetectorMode::continuous, 42, 0);
  ShotAccumulator acc(sample.total());
  for (auto _ : state) {
    acc.add(readout);
  }
  benchmark::DoNotOptimize(acc.count());
}
BENCHMARK(BM_Accumulate);

void BM_RunSimulation(benchmark::State& state) {
  const BinarySample sample =
      synthesize(SamplePattern::checkerboard, 16, 16, 1.0, 0);
  const SimConfig cfg{ChainParams(5, 0.0, 0.0), sample,
                      state.range(0),           50.0,
                      7,                        DetectorMode::continuous,
                      1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunSimulation)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_OptimizeGamma0(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_gamma0(10, 0.0, 4.0));
  }
}
BENCHMARK(BM_OptimizeGamma0);

}  // namespace

BENCHMARK_MAIN();
