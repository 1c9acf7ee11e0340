#include "rfiqkd/bloch.hpp"

#include <algorithm>
#include <cmath>

namespace rfiqkd {

std::string_view to_string(Basis b) noexcept {
  switch (b) {
    case Basis::X: return "X";
    case Basis::Y: return "Y";
    case Basis::Z: return "Z";
  }
  return "?";
}

double dot(const BlochVector& a, const BlochVector& b) noexcept {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

double norm(const BlochVector& v) noexcept { return std::sqrt(dot(v, v)); }

BlochVector axis(Basis b) noexcept {
  switch (b) {
    case Basis::X: return {1.0, 0.0, 0.0};
    case Basis::Y: return {0.0, 1.0, 0.0};
    case Basis::Z: return {0.0, 0.0, 1.0};
  }
  return {};
}

BlochVector PolarizationState::bloch() const noexcept {
  BlochVector v = axis(basis_);
  if (bit_ == 1) {
    v = {-v.x, -v.y, -v.z};
  }
  return v;
}

BlochVector rotate(const BlochVector& v, FrameRotation rot) noexcept {
  const double c = std::cos(rot.beta);
  const double s = std::sin(rot.beta);
  return {v.x * c - v.y * s, v.x * s + v.y * c, v.z};
}

BlochVector rotate(const PolarizationState& state, FrameRotation rot) noexcept {
  return rotate(state.bloch(), rot);
}

double born_probability(const BlochVector& v, Basis basis) noexcept {
  const double p = 0.5 * (1.0 + dot(v, axis(basis)));
  return std::clamp(p, 0.0, 1.0);
}

double ideal_correlation(Basis prep, Basis meas, double beta) noexcept {
  // <A B> = axis(A) rotated by beta, projected on axis(B).
  if (prep == Basis::Z || meas == Basis::Z) {
    return prep == meas ? 1.0 : 0.0;
  }
  if (prep == meas) {
    return std::cos(beta);
  }
  return prep == Basis::X ? std::sin(beta) : -std::sin(beta);
}

}  // namespace rfiqkd
