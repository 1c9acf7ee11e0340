#include "rfiqkd/scenario.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace rfiqkd {

#ifndef RFIQKD_VERSION
#define RFIQKD_VERSION "0.0.0"
#endif

std::string_view version() noexcept { return RFIQKD_VERSION; }

namespace {

WindowPlan plan_for(const ScenarioConfig& config, std::uint64_t window_index) {
  const std::uint64_t per_window = config.windows.pulses_per_window(config.source.repetition_rate);
  WindowPlan plan;
  plan.seed = config.seed;
  plan.window_index = window_index;
  plan.first_pulse = window_index * per_window;
  plan.pulse_stride = config.pulse_scale;
  plan.simulated_pulses = per_window / config.pulse_scale;
  return plan;
}

}  // namespace

ScenarioRun run_scenario(const ScenarioConfig& config, unsigned threads) {
  config.validate();

  ScenarioRun run;
  run.config = config;
  const std::uint64_t per_window = config.windows.pulses_per_window(config.source.repetition_rate);
  if (per_window % config.pulse_scale != 0) {
    run.notes.push_back("pulse_scale " + std::to_string(config.pulse_scale) + " does not divide " +
                        std::to_string(per_window) + " pulses per window; dropping " +
                        std::to_string(per_window % config.pulse_scale) + " pulses per window");
  }
  if (per_window / config.pulse_scale == 0) {
    run.notes.push_back("pulse_scale exceeds the pulses per window; every window is empty");
  }

  DriftTrajectory drift(config.drift, config.bursts, config.source.repetition_rate,
                        make_rng(config.seed, Stream::drift));
  run.tallies.reserve(config.windows.n_windows);
  run.checkpoints.reserve(config.windows.n_windows);

  for (std::uint64_t w = 0; w < config.windows.n_windows; ++w) {
    run.checkpoints.push_back(drift);
    const WindowPlan plan = plan_for(config, w);
    const WindowAccumulator acc = accumulate_window(plan, config.source, config.detector, drift, threads);
    run.tallies.push_back(acc.tally);

    WindowResult base;
    base.window_index = static_cast<std::int64_t>(w);
    base.t_start = static_cast<double>(w) * config.windows.window_duration;
    base.mean_beta = acc.pulses > 0 ? acc.beta_sum / static_cast<double>(acc.pulses)
                                    : std::numeric_limits<double>::quiet_NaN();
    base.detection_rate = static_cast<double>(acc.tally.sifted()) * static_cast<double>(config.pulse_scale) /
                          config.windows.window_duration;
    if (config.run_rfi) {
      WindowResult row = base;
      row.report = analyze_rfi(acc.tally, config.eve_formula);
      run.rows.push_back(std::move(row));
    }
    if (config.run_bb84) {
      WindowResult row = base;
      row.report = analyze_bb84(acc.tally);
      run.rows.push_back(std::move(row));
    }
  }
  return run;
}

WindowAccumulator rerun_window(const ScenarioConfig& config, std::uint64_t window_index,
                               DriftTrajectory checkpoint, unsigned threads) {
  config.validate();
  return accumulate_window(plan_for(config, window_index), config.source, config.detector, checkpoint,
                           threads);
}

}  // namespace rfiqkd
