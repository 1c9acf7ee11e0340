#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "rfiqkd/bloch.hpp"
#include "rfiqkd/drift.hpp"
#include "rfiqkd/photonics.hpp"
#include "rfiqkd/rng.hpp"

namespace rfiqkd {

/// Detection counts n[prep_basis][prep_bit][meas_basis][outcome] for one window.
struct TallyMatrix {
  using Counts = std::array<std::array<std::array<std::array<std::uint64_t, 2>, 3>, 2>, 3>;

  Counts counts{};
  std::uint64_t discarded_no_click = 0;
  std::uint64_t double_clicks = 0;
  std::int64_t window_index = -1;

  std::uint64_t& at(Basis prep, int prep_bit, Basis meas, int outcome) noexcept {
    return counts[index(prep)][prep_bit][index(meas)][outcome];
  }
  std::uint64_t at(Basis prep, int prep_bit, Basis meas, int outcome) const noexcept {
    return counts[index(prep)][prep_bit][index(meas)][outcome];
  }

  /// Sum of all counts, i.e. detected events kept for analysis.
  std::uint64_t sifted() const noexcept;
  /// Events with preparation basis `prep` measured in `meas`.
  std::uint64_t cell_total(Basis prep, Basis meas) const noexcept;

  /// Element-wise sum. Keeps the window index of `*this` unless it is unset.
  TallyMatrix& operator+=(const TallyMatrix& other) noexcept;
  friend TallyMatrix operator+(TallyMatrix a, const TallyMatrix& b) noexcept { return a += b; }
  friend bool operator==(const TallyMatrix&, const TallyMatrix&) = default;
};

/// Equal-length estimation windows along one run.
struct WindowSchedule {
  double window_duration = 10.0;  // s
  std::uint32_t n_windows = 24;

  void validate() const;
  /// Physical pulses per window at the given repetition rate (>= 1).
  std::uint64_t pulses_per_window(double repetition_rate) const;
  friend bool operator==(const WindowSchedule&, const WindowSchedule&) = default;
};

struct SiftedEvent {
  Basis prep_basis = Basis::Z;
  std::uint8_t prep_bit = 0;
  Basis meas_basis = Basis::Z;
  std::uint8_t outcome = 0;
  bool double_click = false;
};

struct PulseResult {
  double beta = 0.0;
  std::optional<SiftedEvent> event;  // empty when no detector clicked
};

/// Squashes a double click to a uniformly random outcome.
/// Throws ContractViolation unless both detectors clicked.
std::uint8_t resolve_double_click(const ClickRecord& record, Rng& rng);

/// One round: random state, random basis, channel rotation, detection.
PulseResult run_pulse(std::uint64_t pulse_index, const SourceConfig& source,
                      const DetectorConfig& detector, DriftTrajectory& drift, Rng& rng);

/// Adds the outcome of one pulse to `tally`.
void record(TallyMatrix& tally, const PulseResult& result) noexcept;

/// Where a window's simulated pulses sit on the physical pulse axis.
///
/// Simulated pulse i maps to physical pulse first_pulse + i * pulse_stride.
/// Pulse i draws its randomness from its own generator seeded by
/// (seed, window_index, i), so results do not depend on how the window is
/// partitioned.
struct WindowPlan {
  std::uint64_t seed = 0;
  std::uint64_t window_index = 0;
  std::uint64_t first_pulse = 0;
  std::uint64_t pulse_stride = 1;
  std::uint64_t simulated_pulses = 0;

  std::uint64_t physical_index(std::uint64_t i) const noexcept { return first_pulse + i * pulse_stride; }
};

/// Tally plus the bookkeeping needed for per-window summaries.
struct WindowAccumulator {
  TallyMatrix tally;
  double beta_sum = 0.0;
  std::uint64_t pulses = 0;

  WindowAccumulator& operator+=(const WindowAccumulator& other) noexcept;
  friend bool operator==(const WindowAccumulator&, const WindowAccumulator&) = default;
};

/// Simulates simulated pulses [begin, end) of `plan` sequentially.
/// `drift` must not have been queried at or beyond the range's first pulse.
WindowAccumulator accumulate_range(const WindowPlan& plan, std::uint64_t begin, std::uint64_t end,
                                   const SourceConfig& source, const DetectorConfig& detector,
                                   DriftTrajectory& drift);

/// Simulates the whole window, splitting it over `threads` workers.
///
/// The drift trajectory is advanced once sequentially to checkpoint it at
/// chunk boundaries; chunks then run in parallel from copies of those
/// checkpoints. On return `drift` sits at the window's last pulse. Output is
/// identical for every thread count.
WindowAccumulator accumulate_window(const WindowPlan& plan, const SourceConfig& source,
                                    const DetectorConfig& detector, DriftTrajectory& drift,
                                    unsigned threads = 1);

}  // namespace rfiqkd
