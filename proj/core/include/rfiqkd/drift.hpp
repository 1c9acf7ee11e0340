#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "rfiqkd/rng.hpp"

namespace rfiqkd {

enum class DriftKind : std::uint8_t { static_offset, linear, random_walk };

/// Deterministic part plus (for random_walk) a Gaussian walk of the frame angle.
struct DriftProcess {
  DriftKind kind = DriftKind::static_offset;
  double beta0 = 0.0;       // rad
  double rate = 0.0;        // rad/s, linear only
  double step_sigma = 0.0;  // rad per physical pulse, random_walk only

  void validate() const;
  /// Per-pulse walk sigma outside bursts.
  double base_sigma() const noexcept { return kind == DriftKind::random_walk ? step_sigma : 0.0; }
  friend bool operator==(const DriftProcess&, const DriftProcess&) = default;
};

struct BurstInterval {
  double start = 0.0;        // s
  double end = 0.0;          // s
  double burst_sigma = 0.0;  // rad per physical pulse

  friend bool operator==(const BurstInterval&, const BurstInterval&) = default;
};

/// Periods of rapid fibre deformation. Intervals must be sorted and disjoint.
struct BurstSchedule {
  std::vector<BurstInterval> intervals;

  void validate(const DriftProcess& base) const;
  const BurstInterval* find(double t) const noexcept;
  friend bool operator==(const BurstSchedule&, const BurstSchedule&) = default;
};

/// One sequential realisation of beta(t) over physical pulse indices.
///
/// beta(p) = deterministic(p) + W(p), where W(0) = 0 and each physical pulse
/// k >= 1 adds N(0, sigma(k)^2), sigma(k) being the burst sigma inside a
/// burst and the base sigma elsewhere. Jumping over a gap of pulses draws one
/// Gaussian with the summed variance, so subsampled trajectories have the
/// same law as the full one.
///
/// Copying the object checkpoints it: the copy continues the same trajectory.
class DriftTrajectory {
public:
  DriftTrajectory(DriftProcess process, BurstSchedule bursts, double repetition_rate, Rng rng);

  /// Angle at `pulse_index`. Indices must strictly increase between calls.
  double beta_at(std::uint64_t pulse_index);

  /// Advances the walk without reporting, same contract as beta_at.
  void advance_to(std::uint64_t pulse_index) { (void)beta_at(pulse_index); }

  std::optional<std::uint64_t> last_index() const noexcept { return last_; }
  double time_of(std::uint64_t pulse_index) const noexcept;

  /// Total walk variance accumulated over pulses (from, to].
  double walk_variance(std::uint64_t from, std::uint64_t to) const noexcept;

private:
  double deterministic(std::uint64_t pulse_index) const noexcept;

  DriftProcess process_;
  BurstSchedule bursts_;
  double repetition_rate_;
  Rng rng_;
  std::normal_distribution<double> normal_;
  std::optional<std::uint64_t> last_;
  double walk_ = 0.0;
};

}  // namespace rfiqkd
