#include "rfiqkd/photonics.hpp"

#include <cmath>
#include <random>

#include "rfiqkd/errors.hpp"

namespace rfiqkd {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

void SourceConfig::validate() const {
  if (!(std::isfinite(mean_photon_number) && mean_photon_number > 0.0)) {
    throw ConfigError("source.mean_photon_number", "must be > 0");
  }
  if (!(std::isfinite(repetition_rate) && repetition_rate > 0.0)) {
    throw ConfigError("source.repetition_rate", "must be > 0");
  }
  if (!(std::isfinite(pulse_width) && pulse_width > 0.0 && pulse_width < 1.0 / repetition_rate)) {
    throw ConfigError("source.pulse_width", "must be positive and shorter than the pulse period");
  }
}

void DetectorConfig::validate() const {
  if (!is_probability(efficiency)) {
    throw ConfigError("detector.efficiency", "must lie in [0, 1]");
  }
  if (!is_probability(dark_count_prob)) {
    throw ConfigError("detector.dark_count_prob", "must lie in [0, 1]");
  }
  if (!is_probability(channel_transmittance)) {
    throw ConfigError("detector.channel_transmittance", "must lie in [0, 1]");
  }
  if (!(is_probability(misalignment_error) && misalignment_error < 0.5)) {
    throw ConfigError("detector.misalignment_error", "must lie in [0, 0.5)");
  }
}

std::uint32_t sample_photon_number(double mean_photon_number, Rng& rng) {
  return std::poisson_distribution<std::uint32_t>(mean_photon_number)(rng);
}

double multi_photon_probability(double mean_photon_number) noexcept {
  // 1 - e^-mu (1 + mu), written to avoid cancellation at small mu.
  const double mu = mean_photon_number;
  return -std::expm1(-mu) - mu * std::exp(-mu);
}

double flipped_probability(double p0, double misalignment_error) noexcept {
  return (1.0 - 2.0 * misalignment_error) * p0 + misalignment_error;
}

ClickRecord detect(const BlochVector& state, Basis basis, std::uint32_t n_photons,
                   const DetectorConfig& det, Rng& rng) {
  ClickRecord rec;
  const double survive = det.channel_transmittance * det.efficiency;
  const double p0 = flipped_probability(born_probability(state, basis), det.misalignment_error);
  for (std::uint32_t i = 0; i < n_photons; ++i) {
    if (rng.uniform() >= survive) {
      continue;
    }
    if (rng.uniform() < p0) {
      rec.click0 = true;
    } else {
      rec.click1 = true;
    }
  }
  if (det.dark_count_prob > 0.0) {
    rec.click0 = (rng.uniform() < det.dark_count_prob) || rec.click0;
    rec.click1 = (rng.uniform() < det.dark_count_prob) || rec.click1;
  }
  return rec;
}

}  // namespace rfiqkd
