#include "rfiqkd/drift.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rfiqkd/errors.hpp"

namespace rfiqkd {

void DriftProcess::validate() const {
  if (!std::isfinite(beta0)) {
    throw ConfigError("drift.beta0", "must be finite");
  }
  if (!std::isfinite(rate)) {
    throw ConfigError("drift.rate", "must be finite");
  }
  if (!(std::isfinite(step_sigma) && step_sigma >= 0.0)) {
    throw ConfigError("drift.step_sigma", "must be >= 0");
  }
}

void BurstSchedule::validate(const DriftProcess& base) const {
  double previous_end = -INFINITY;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& b = intervals[i];
    const std::string field = "bursts.intervals[" + std::to_string(i) + "]";
    if (!(std::isfinite(b.start) && std::isfinite(b.end) && b.start >= 0.0 && b.start < b.end)) {
      throw ConfigError(field, "needs 0 <= start < end");
    }
    if (b.start < previous_end) {
      throw ConfigError(field, "overlaps or precedes the previous interval");
    }
    if (!(std::isfinite(b.burst_sigma) && b.burst_sigma > base.base_sigma())) {
      throw ConfigError(field, "burst_sigma must exceed the base step_sigma");
    }
    previous_end = b.end;
  }
}

const BurstInterval* BurstSchedule::find(double t) const noexcept {
  for (const auto& b : intervals) {
    if (t >= b.start && t < b.end) {
      return &b;
    }
  }
  return nullptr;
}

DriftTrajectory::DriftTrajectory(DriftProcess process, BurstSchedule bursts, double repetition_rate,
                                 Rng rng)
    : process_(process), bursts_(std::move(bursts)), repetition_rate_(repetition_rate), rng_(rng) {}

double DriftTrajectory::time_of(std::uint64_t pulse_index) const noexcept {
  return static_cast<double>(pulse_index) / repetition_rate_;
}

double DriftTrajectory::deterministic(std::uint64_t pulse_index) const noexcept {
  if (process_.kind == DriftKind::linear) {
    return process_.beta0 + process_.rate * time_of(pulse_index);
  }
  return process_.beta0;
}

double DriftTrajectory::walk_variance(std::uint64_t from, std::uint64_t to) const noexcept {
  if (to <= from) {
    return 0.0;
  }
  // Pulses k in (from, to]; the burst [s, e) covers k with s <= k / R < e.
  const double base = process_.base_sigma();
  const auto total = static_cast<double>(to - from);
  double variance = total * base * base;
  for (const auto& b : bursts_.intervals) {
    const auto lo = static_cast<std::uint64_t>(std::ceil(b.start * repetition_rate_));
    const auto hi = static_cast<std::uint64_t>(std::ceil(b.end * repetition_rate_));
    const std::uint64_t first = std::max(lo, from + 1);
    const std::uint64_t last = std::min(hi, to + 1);  // exclusive
    if (first < last) {
      const auto n = static_cast<double>(last - first);
      variance += n * (b.burst_sigma * b.burst_sigma - base * base);
    }
  }
  return variance;
}

double DriftTrajectory::beta_at(std::uint64_t pulse_index) {
  if (last_ && pulse_index <= *last_) {
    throw ContractViolation("drift trajectory queried out of order: pulse " +
                            std::to_string(pulse_index) + " after " + std::to_string(*last_));
  }
  const std::uint64_t from = last_.value_or(0);
  const double variance = walk_variance(from, pulse_index);
  if (variance > 0.0) {
    walk_ += std::sqrt(variance) * normal_(rng_);
  }
  last_ = pulse_index;
  return deterministic(pulse_index) + walk_;
}

}  // namespace rfiqkd
