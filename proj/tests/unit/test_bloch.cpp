#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "rfiqkd/bloch.hpp"

using namespace rfiqkd;

namespace {

constexpr std::array<PolarizationState, 6> kStates{
    PolarizationState::D(), PolarizationState::A(), PolarizationState::R(),
    PolarizationState::L(), PolarizationState::H(), PolarizationState::V(),
};

}  // namespace

TEST_CASE("six states sit on the Pauli axes") {
  CHECK(PolarizationState::D().bloch() == BlochVector{1, 0, 0});
  CHECK(PolarizationState::A().bloch() == BlochVector{-1, 0, 0});
  CHECK(PolarizationState::R().bloch() == BlochVector{0, 1, 0});
  CHECK(PolarizationState::L().bloch() == BlochVector{0, -1, 0});
  CHECK(PolarizationState::H().bloch() == BlochVector{0, 0, 1});
  CHECK(PolarizationState::V().bloch() == BlochVector{0, 0, -1});

  for (const auto& a : kStates) {
    CHECK(std::abs(norm(a.bloch()) - 1.0) <= 1e-12);
    for (const auto& b : kStates) {
      const double d = dot(a.bloch(), b.bloch());
      if (a.basis() != b.basis()) {
        CHECK(d == 0.0);
      } else if (a.bit() != b.bit()) {
        CHECK(d == -1.0);
      }
    }
  }
}

TEST_CASE("rotate examples") {
  CHECK(rotate(PolarizationState::H(), {1.234}) == BlochVector{0, 0, 1});

  const BlochVector quarter = rotate(PolarizationState::D(), {std::numbers::pi / 2});
  CHECK(quarter.x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(quarter.y == doctest::Approx(1.0));
  CHECK(quarter.z == 0.0);

  // Rotation matrix by hand at pi/4: (cos, sin) = (sqrt2/2, sqrt2/2).
  const BlochVector eighth = rotate(PolarizationState::D(), {std::numbers::pi / 4});
  CHECK(std::abs(eighth.x - std::sqrt(2.0) / 2) <= 1e-15);
  CHECK(std::abs(eighth.y - std::sqrt(2.0) / 2) <= 1e-15);
}

TEST_CASE("rotation preserves norm and z, and composes") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_real_distribution<double> angle(-20.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    const PolarizationState s = kStates[pick(rng)];
    const double b1 = angle(rng);
    const double b2 = angle(rng);
    const BlochVector once = rotate(s, {b1});
    CHECK(std::abs(norm(once) - 1.0) <= 1e-12);
    CHECK(once.z == s.bloch().z);

    const BlochVector twice = rotate(once, {b2});
    const BlochVector direct = rotate(s, {b1 + b2});
    CHECK(std::abs(twice.x - direct.x) <= 1e-10);
    CHECK(std::abs(twice.y - direct.y) <= 1e-10);
    CHECK(twice.z == direct.z);
  }
}

TEST_CASE("born probability") {
  const BlochVector d = PolarizationState::D().bloch();
  CHECK(born_probability(d, Basis::X) == 1.0);
  CHECK(born_probability(d, Basis::Y) == 0.5);
  CHECK(born_probability(d, Basis::Z) == 0.5);
  CHECK(born_probability(rotate(d, {std::numbers::pi / 3}), Basis::X) == doctest::Approx(0.75).epsilon(1e-14));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, 7.0);
  for (int i = 0; i < 200; ++i) {
    const BlochVector v = rotate(kStates[i % 6], {angle(rng)});
    for (const Basis b : kAllBases) {
      const double p0 = born_probability(v, b);
      CHECK(p0 >= 0.0);
      CHECK(p0 <= 1.0);
      CHECK(p0 + (1.0 - p0) == 1.0);
    }
  }
}

TEST_CASE("ideal correlations") {
  for (const double beta : {0.0, 0.3, 1.7, 5.0}) {
    CHECK(ideal_correlation(Basis::Z, Basis::Z, beta) == 1.0);
    CHECK(ideal_correlation(Basis::X, Basis::Z, beta) == 0.0);
    CHECK(ideal_correlation(Basis::Y, Basis::Z, beta) == 0.0);
    CHECK(ideal_correlation(Basis::Z, Basis::X, beta) == 0.0);
    CHECK(ideal_correlation(Basis::Z, Basis::Y, beta) == 0.0);
  }
  CHECK(ideal_correlation(Basis::X, Basis::X, 0.7) == std::cos(0.7));

  for (const double beta : {0.1, 0.7, 2.5, -4.0, 13.0}) {
    double c = 0.0;
    for (const Basis a : {Basis::X, Basis::Y}) {
      for (const Basis b : {Basis::X, Basis::Y}) {
        c += std::pow(ideal_correlation(a, b, beta), 2);
      }
    }
    CHECK(std::abs(c - 2.0) <= 1e-10);
  }
}

TEST_CASE("ideal correlation agrees with rotate + born rule") {
  for (const double beta : {0.0, 0.4, 2.2}) {
    for (const Basis prep : kAllBases) {
      for (const Basis meas : kAllBases) {
        const double p_plus = born_probability(rotate(PolarizationState(prep, 0), {beta}), meas);
        const double p_minus = born_probability(rotate(PolarizationState(prep, 1), {beta}), meas);
        // <AB> = P(agree) - P(disagree), averaged over the two prepared bits.
        const double expected = 0.5 * ((2 * p_plus - 1) - (2 * p_minus - 1));
        CHECK(ideal_correlation(prep, meas, beta) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}
