#include <benchmark/benchmark.h>

#include "rfiqkd/protocol.hpp"
#include "rfiqkd/scenario.hpp"

namespace {

using namespace rfiqkd;

DriftTrajectory walk() {
  return DriftTrajectory({DriftKind::random_walk, 1.5, 0.0, kSlowDriftSigma}, {}, 1e6,
                         make_rng(1, Stream::drift));
}

void BM_RunPulse(benchmark::State& state) {
  const SourceConfig source;
  const DetectorConfig detector;
  DriftTrajectory drift = walk();
  Rng rng = make_rng(1, Stream::test);
  std::uint64_t pulse = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_pulse(pulse++, source, detector, drift, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RunPulse);

// One window at pulse_scale 100, by worker count.
void BM_AccumulateWindow(benchmark::State& state) {
  const SourceConfig source;
  const DetectorConfig detector;
  const WindowPlan plan{1, 0, 0, 100, 100'000};
  for (auto _ : state) {
    DriftTrajectory drift = walk();
    benchmark::DoNotOptimize(
        accumulate_window(plan, source, detector, drift, static_cast<unsigned>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(plan.simulated_pulses));
}
BENCHMARK(BM_AccumulateWindow)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_BurstPreset(benchmark::State& state) {
  const ScenarioConfig config = burst_preset();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_scenario(config, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_BurstPreset)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
