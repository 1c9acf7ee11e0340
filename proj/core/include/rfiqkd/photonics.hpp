#pragma once

#include <cstdint>

#include "rfiqkd/bloch.hpp"
#include "rfiqkd/rng.hpp"

namespace rfiqkd {

/// Attenuated laser at the client output.
struct SourceConfig {
  double mean_photon_number = 0.1;  // photons per pulse after attenuation
  double repetition_rate = 1e6;     // Hz
  double pulse_width = 100e-9;      // s

  /// Throws ConfigError naming the field on violation.
  void validate() const;
  friend bool operator==(const SourceConfig&, const SourceConfig&) = default;
};

/// Return channel plus the two-detector measurement unit.
struct DetectorConfig {
  double efficiency = 0.15;
  double dark_count_prob = 1e-5;       // per detector per gate
  double channel_transmittance = 0.5;  // return fibre and coupling
  double misalignment_error = 0.01;    // intrinsic flip probability

  void validate() const;
  friend bool operator==(const DetectorConfig&, const DetectorConfig&) = default;
};

struct ClickRecord {
  std::uint64_t pulse_index = 0;
  bool click0 = false;
  bool click1 = false;

  bool any() const noexcept { return click0 || click1; }
  bool both() const noexcept { return click0 && click1; }
  friend bool operator==(const ClickRecord&, const ClickRecord&) = default;
};

/// Poisson photon number of a weak coherent pulse.
std::uint32_t sample_photon_number(double mean_photon_number, Rng& rng);

/// P(n > 1) for a Poisson source: 1 - e^-mu (1 + mu).
double multi_photon_probability(double mean_photon_number) noexcept;

/// Outcome-0 probability after the misalignment flip: (1 - 2e) p + e.
double flipped_probability(double p0, double misalignment_error) noexcept;

/// Measures `n_photons` copies of `state` in `basis`.
///
/// Each photon survives with probability transmittance * efficiency and then
/// lands on detector 0 with the flipped Born probability. Dark counts are
/// OR-ed onto both detectors independently afterwards.
ClickRecord detect(const BlochVector& state, Basis basis, std::uint32_t n_photons,
                   const DetectorConfig& det, Rng& rng);

}  // namespace rfiqkd
