#include "rfiqkd/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "rfiqkd/errors.hpp"

namespace rfiqkd {

namespace {

// Fixed partition used for parallel work; independent of the thread count.
constexpr std::uint64_t kChunkPulses = 1U << 14;

}  // namespace

std::uint64_t TallyMatrix::sifted() const noexcept {
  std::uint64_t total = 0;
  for (const auto& a : counts) {
    for (const auto& b : a) {
      for (const auto& c : b) {
        total += c[0] + c[1];
      }
    }
  }
  return total;
}

std::uint64_t TallyMatrix::cell_total(Basis prep, Basis meas) const noexcept {
  std::uint64_t total = 0;
  for (int bit = 0; bit < 2; ++bit) {
    total += at(prep, bit, meas, 0) + at(prep, bit, meas, 1);
  }
  return total;
}

TallyMatrix& TallyMatrix::operator+=(const TallyMatrix& other) noexcept {
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t bit = 0; bit < 2; ++bit) {
      for (std::size_t m = 0; m < 3; ++m) {
        for (std::size_t o = 0; o < 2; ++o) {
          counts[a][bit][m][o] += other.counts[a][bit][m][o];
        }
      }
    }
  }
  discarded_no_click += other.discarded_no_click;
  double_clicks += other.double_clicks;
  if (window_index < 0) {
    window_index = other.window_index;
  }
  return *this;
}

void WindowSchedule::validate() const {
  if (!(std::isfinite(window_duration) && window_duration > 0.0)) {
    throw ConfigError("windows.window_duration", "must be > 0");
  }
  if (n_windows == 0) {
    throw ConfigError("windows.n_windows", "must be >= 1");
  }
}

std::uint64_t WindowSchedule::pulses_per_window(double repetition_rate) const {
  const double n = std::round(window_duration * repetition_rate);
  if (!(n >= 1.0)) {
    throw ConfigError("windows.window_duration", "window holds less than one pulse");
  }
  return static_cast<std::uint64_t>(n);
}

std::uint8_t resolve_double_click(const ClickRecord& record, Rng& rng) {
  if (!record.both()) {
    throw ContractViolation("resolve_double_click called without a double click");
  }
  return static_cast<std::uint8_t>(rng() >> 63);
}

PulseResult run_pulse(std::uint64_t pulse_index, const SourceConfig& source,
                      const DetectorConfig& detector, DriftTrajectory& drift, Rng& rng) {
  PulseResult result;
  result.beta = drift.beta_at(pulse_index);

  const auto state_choice = static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, 5)(rng));
  const auto meas = static_cast<Basis>(std::uniform_int_distribution<int>(0, 2)(rng));
  const PolarizationState prepared(static_cast<Basis>(state_choice / 2), state_choice % 2);

  const std::uint32_t photons = sample_photon_number(source.mean_photon_number, rng);
  const BlochVector arriving = rotate(prepared, FrameRotation{result.beta});
  ClickRecord clicks = detect(arriving, meas, photons, detector, rng);
  clicks.pulse_index = pulse_index;
  if (!clicks.any()) {
    return result;
  }

  SiftedEvent ev;
  ev.prep_basis = prepared.basis();
  ev.prep_bit = prepared.bit();
  ev.meas_basis = meas;
  if (clicks.both()) {
    ev.double_click = true;
    ev.outcome = resolve_double_click(clicks, rng);
  } else {
    ev.outcome = clicks.click0 ? 0 : 1;
  }
  result.event = ev;
  return result;
}

void record(TallyMatrix& tally, const PulseResult& result) noexcept {
  if (!result.event) {
    ++tally.discarded_no_click;
    return;
  }
  const SiftedEvent& ev = *result.event;
  ++tally.at(ev.prep_basis, ev.prep_bit, ev.meas_basis, ev.outcome);
  if (ev.double_click) {
    ++tally.double_clicks;
  }
}

WindowAccumulator& WindowAccumulator::operator+=(const WindowAccumulator& other) noexcept {
  tally += other.tally;
  beta_sum += other.beta_sum;
  pulses += other.pulses;
  return *this;
}

WindowAccumulator accumulate_range(const WindowPlan& plan, std::uint64_t begin, std::uint64_t end,
                                   const SourceConfig& source, const DetectorConfig& detector,
                                   DriftTrajectory& drift) {
  WindowAccumulator acc;
  acc.tally.window_index = static_cast<std::int64_t>(plan.window_index);
  end = std::min(end, plan.simulated_pulses);
  for (std::uint64_t i = begin; i < end; ++i) {
    Rng rng = make_rng(plan.seed, Stream::pulses, {plan.window_index, i});
    const PulseResult result = run_pulse(plan.physical_index(i), source, detector, drift, rng);
    record(acc.tally, result);
    acc.beta_sum += result.beta;
    ++acc.pulses;
  }
  return acc;
}

WindowAccumulator accumulate_window(const WindowPlan& plan, const SourceConfig& source,
                                    const DetectorConfig& detector, DriftTrajectory& drift,
                                    unsigned threads) {
  const std::uint64_t n_chunks = (plan.simulated_pulses + kChunkPulses - 1) / kChunkPulses;
  std::vector<WindowAccumulator> parts(n_chunks);

  if (threads <= 1 || n_chunks <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
      parts[c] = accumulate_range(plan, c * kChunkPulses, (c + 1) * kChunkPulses, source, detector, drift);
    }
  } else {
    std::vector<DriftTrajectory> checkpoints;
    checkpoints.reserve(n_chunks);
    for (std::uint64_t c = 0; c < n_chunks; ++c) {
      checkpoints.push_back(drift);
      const std::uint64_t end = std::min((c + 1) * kChunkPulses, plan.simulated_pulses);
      for (std::uint64_t i = c * kChunkPulses; i < end; ++i) {
        drift.advance_to(plan.physical_index(i));
      }
    }
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
      for (std::uint64_t c = next++; c < n_chunks; c = next++) {
        parts[c] = accumulate_range(plan, c * kChunkPulses, (c + 1) * kChunkPulses, source, detector,
                                    checkpoints[c]);
      }
    };
    std::vector<std::jthread> pool;
    const auto n_workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_chunks));
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) {
      pool.emplace_back(worker);
    }
  }

  WindowAccumulator total;
  total.tally.window_index = static_cast<std::int64_t>(plan.window_index);
  for (const auto& p : parts) {
    total += p;
  }
  return total;
}

}  // namespace rfiqkd
