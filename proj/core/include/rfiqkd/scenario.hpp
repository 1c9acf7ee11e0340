#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rfiqkd/drift.hpp"
#include "rfiqkd/keyrate.hpp"
#include "rfiqkd/photonics.hpp"
#include "rfiqkd/protocol.hpp"

namespace rfiqkd {

std::string_view version() noexcept;

/// Full description of one simulated key exchange.
struct ScenarioConfig {
  std::string name = "custom";
  SourceConfig source;
  DetectorConfig detector;
  DriftProcess drift;
  BurstSchedule bursts;
  WindowSchedule windows;
  std::uint64_t seed = 1;
  std::uint64_t pulse_scale = 1;  // simulate 1/pulse_scale of each window
  EveFormula eve_formula = EveFormula::proof;
  bool run_rfi = true;
  bool run_bb84 = true;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
  std::uint64_t simulated_pulses_per_window() const;
  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Default slow random-walk sigma: about 0.05 rad of spread per 10 s at 1 MHz.
inline constexpr double kSlowDriftSigma = 1.6e-5;
/// Default burst sigma, 300x the slow walk. Enough to scramble the frame
/// completely within one window.
inline constexpr double kBurstSigma = 300 * kSlowDriftSigma;

/// Well-aligned start, linear drift 0 -> pi/2 over 240 s.
ScenarioConfig drift_preset();
/// Misaligned slow walk, rapid noise for 60 s <= t < 120 s, calm afterwards.
ScenarioConfig burst_preset();

struct PresetInfo {
  std::string_view name;
  std::string_view description;
};
std::vector<PresetInfo> presets();
/// Throws ConfigError for an unknown preset name.
ScenarioConfig preset(std::string_view name);

/// key = value text with [section] headers.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);
/// Exact round trip: parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);
/// FNV-1a of the serialized config, as 16 hex digits.
std::string config_hash(const ScenarioConfig& config);

struct WindowResult {
  std::int64_t window_index = 0;
  double t_start = 0.0;         // s
  double mean_beta = 0.0;       // rad, unwrapped
  double detection_rate = 0.0;  // detected events per second, rescaled by pulse_scale
  KeyRateReport report;
};

struct ScenarioRun {
  ScenarioConfig config;
  std::vector<WindowResult> rows;       // window-major, rfi before bb84
  std::vector<TallyMatrix> tallies;     // one per window
  std::vector<DriftTrajectory> checkpoints;  // trajectory state at each window start
  std::vector<std::string> notes;
};

/// Runs every window along one drift trajectory.
ScenarioRun run_scenario(const ScenarioConfig& config, unsigned threads = 1);

/// Re-runs a single window from its checkpoint.
WindowAccumulator rerun_window(const ScenarioConfig& config, std::uint64_t window_index,
                               DriftTrajectory checkpoint, unsigned threads = 1);

enum class OutputFormat : std::uint8_t { csv, json };

/// Number formatting used in every output: 9 significant digits, "nan" for NaN.
std::string format_number(double value);

void write_csv(std::ostream& out, const ScenarioRun& run);
void write_json(std::ostream& out, const ScenarioRun& run);
/// Throws IoError naming the path when it cannot be written.
void emit_results(const ScenarioRun& run, OutputFormat format, const std::filesystem::path& path);

}  // namespace rfiqkd
