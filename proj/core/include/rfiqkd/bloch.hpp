#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace rfiqkd {

/// Pauli measurement axis. The numeric value doubles as an array index.
enum class Basis : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline constexpr std::array<Basis, 3> kAllBases{Basis::X, Basis::Y, Basis::Z};

constexpr std::size_t index(Basis b) noexcept { return static_cast<std::size_t>(b); }
std::string_view to_string(Basis b) noexcept;

/// Real Bloch-sphere vector. States used here are always pure.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr bool operator==(const BlochVector&, const BlochVector&) = default;
};

double dot(const BlochVector& a, const BlochVector& b) noexcept;
double norm(const BlochVector& v) noexcept;

/// Unit vector along the +1 eigenvector of `b`.
BlochVector axis(Basis b) noexcept;

/// One of the six polarisation states D/A, R/L, H/V.
///
/// Bit 0 is the +1 eigenvector of its basis, bit 1 the -1 eigenvector.
class PolarizationState {
public:
  constexpr PolarizationState(Basis basis, std::uint8_t bit) noexcept
      : basis_(basis), bit_(bit & 1U) {}

  static constexpr PolarizationState D() noexcept { return {Basis::X, 0}; }
  static constexpr PolarizationState A() noexcept { return {Basis::X, 1}; }
  static constexpr PolarizationState R() noexcept { return {Basis::Y, 0}; }
  static constexpr PolarizationState L() noexcept { return {Basis::Y, 1}; }
  static constexpr PolarizationState H() noexcept { return {Basis::Z, 0}; }
  static constexpr PolarizationState V() noexcept { return {Basis::Z, 1}; }

  constexpr Basis basis() const noexcept { return basis_; }
  constexpr std::uint8_t bit() const noexcept { return bit_; }
  BlochVector bloch() const noexcept;

  friend constexpr bool operator==(const PolarizationState&, const PolarizationState&) = default;

private:
  Basis basis_;
  std::uint8_t bit_;
};

/// Unknown rotation of the receiver frame about Z.
///
/// Active convention: the Bloch vector is rotated by +beta. The angle is kept
/// unwrapped; reduction happens only inside sin/cos.
struct FrameRotation {
  double beta = 0.0;
};

BlochVector rotate(const BlochVector& v, FrameRotation rot) noexcept;
BlochVector rotate(const PolarizationState& state, FrameRotation rot) noexcept;

/// Probability that a measurement in `basis` yields outcome 0 (+1 eigenvalue).
double born_probability(const BlochVector& v, Basis basis) noexcept;

/// Noiseless <A B> for preparation basis A and measurement basis B at fixed beta.
double ideal_correlation(Basis prep, Basis meas, double beta) noexcept;

}  // namespace rfiqkd
