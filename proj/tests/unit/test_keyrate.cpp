#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "rfiqkd/errors.hpp"
#include "rfiqkd/keyrate.hpp"

using namespace rfiqkd;

namespace {

/// Tally whose <prep meas> cell has `agree` correlated events out of `total`.
void set_cell(TallyMatrix& t, Basis prep, Basis meas, std::uint64_t agree, std::uint64_t total) {
  const std::uint64_t disagree = total - agree;
  t.at(prep, 0, meas, 0) = agree / 2;
  t.at(prep, 1, meas, 1) = agree - agree / 2;
  t.at(prep, 0, meas, 1) = disagree / 2;
  t.at(prep, 1, meas, 0) = disagree - disagree / 2;
}

CorrelationSet frame_set(double xx, double xy, double yx, double yy, double zz = 1.0) {
  CorrelationSet s;
  for (auto& row : s.samples) row.fill(100);
  s.value[0][0] = xx;
  s.value[0][1] = xy;
  s.value[1][0] = yx;
  s.value[1][1] = yy;
  s.value[2][2] = zz;
  return s;
}

double oracle_e(double q, double c, bool proof) { return oracle::eve(q, c, proof).convert_to<double>(); }
double oracle_r(double q, double c, bool proof) { return oracle::rfi_rate(q, c, proof).convert_to<double>(); }

}  // namespace

TEST_CASE("correlation arithmetic") {
  CHECK(correlation(50, 50, 0, 0) == 1.0);
  CHECK(correlation(25, 25, 25, 25) == 0.0);
  CHECK(correlation(30, 30, 20, 20) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK_THROWS_AS(correlation(0, 0, 0, 0), UndefinedCellError);
}

TEST_CASE("QBER from <ZZ>") {
  CHECK(compute_q(frame_set(0, 0, 0, 0, 1.0)) == 0.0);
  CHECK(compute_q(frame_set(0, 0, 0, 0, -1.0)) == 1.0);
  CHECK(compute_q(frame_set(0, 0, 0, 0, 0.9)) == doctest::Approx(0.05).epsilon(1e-14));
  CorrelationSet empty;
  CHECK_THROWS_AS(compute_q(empty), UndefinedCellError);
}

TEST_CASE("C from the X/Y cells") {
  CHECK(compute_c(frame_set(1, 0, 0, 1)) == 2.0);
  CHECK(compute_c(frame_set(0, 0, 0, 0)) == 0.0);
  const double b = 0.7;
  CHECK(std::abs(compute_c(frame_set(std::cos(b), std::sin(b), -std::sin(b), std::cos(b))) - 2.0) <= 1e-12);
  CorrelationSet partial = frame_set(1, 0, 0, 1);
  partial.samples[1][0] = 0;
  CHECK_THROWS_AS(compute_c(partial), UndefinedCellError);
}

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.11) == doctest::Approx(0.49991595816452800).epsilon(1e-14));
  for (double x = 0.0; x <= 1.0; x += 0.037) {
    CHECK(binary_entropy(x) == doctest::Approx(binary_entropy(1.0 - x)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(binary_entropy(-1e-9), DomainError);
  CHECK_THROWS_AS(binary_entropy(1.5), DomainError);
  CHECK_THROWS_AS(binary_entropy(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("Eve's information anchors") {
  for (const auto f : {EveFormula::proof, EveFormula::typeset}) {
    const auto ideal = eve_information(0.0, 2.0, f);
    CHECK(ideal.u_max == 1.0);
    CHECK(ideal.q_times_v == 0.0);
    CHECK(ideal.bits == 0.0);

    const auto blind = eve_information(0.0, 0.0, f);
    CHECK(blind.u_max == 0.0);
    CHECK(blind.q_times_v == 0.0);
    CHECK(blind.bits == 1.0);
  }
  const auto mid = eve_information(0.05, 1.8, EveFormula::proof);
  CHECK(std::abs(mid.bits - oracle_e(0.05, 1.8, true)) <= 1e-10);
  CHECK(std::abs(mid.bits - 0.0578587684516776) <= 1e-12);
  CHECK(std::abs(eve_information(0.05, 1.8, EveFormula::typeset).bits - oracle_e(0.05, 1.8, false)) <= 1e-10);
}

TEST_CASE("Eve's information error paths") {
  CHECK_THROWS_AS(eve_information(0.16, 1.0), ApplicabilityError);
  CHECK_NOTHROW(eve_information(0.158, 1.0));
  CHECK_NOTHROW(eve_information(kRfiQberLimit, 1.0));
  CHECK_THROWS_AS(eve_information(-0.01, 1.0), DomainError);
  CHECK_THROWS_AS(eve_information(0.01, 2.1), DataIntegrityError);
  CHECK_THROWS_AS(eve_information(0.01, -0.1), DataIntegrityError);
  CHECK(eve_information(0.0, 2.0 + 1e-13).bits == 0.0);
}

TEST_CASE("rfi key rate") {
  CHECK(rfi_key_rate(0.0, 2.0) == 1.0);
  CHECK(rfi_key_rate(0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(rfi_key_rate(0.05, 1.9) - oracle_r(0.05, 1.9, true)) <= 1e-10);
  CHECK(std::abs(rfi_key_rate(0.05, 1.9, EveFormula::typeset) - oracle_r(0.05, 1.9, false)) <= 1e-10);
}

TEST_CASE("random (Q, C) pairs agree with the 50-digit oracle") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> q_dist(0.0, kRfiQberLimit);
  std::uniform_real_distribution<double> c_dist(0.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double q = q_dist(rng);
    const double c = c_dist(rng);
    for (const bool proof : {true, false}) {
      const auto f = proof ? EveFormula::proof : EveFormula::typeset;
      CHECK(std::abs(eve_information(q, c, f).bits - oracle_e(q, c, proof)) <= 1e-10);
      CHECK(std::abs(rfi_key_rate(q, c, f) - oracle_r(q, c, proof)) <= 1e-10);
    }
  }
}

TEST_CASE("E is non-increasing in C") {
  for (const auto f : {EveFormula::proof, EveFormula::typeset}) {
    for (int qi = 0; qi <= 159; ++qi) {
      const double q = qi * 1e-3;
      double previous = std::numeric_limits<double>::infinity();
      for (int ci = 0; ci <= 200; ++ci) {
        const double e = eve_information(q, ci * 0.01, f).bits;
        REQUIRE(e <= previous + 1e-15);
        previous = e;
      }
    }
  }
}

TEST_CASE("r is non-increasing in Q where C/2 <= (1 - 2Q)^2") {
  // That region holds every channel whose X/Y noise is at least what a
  // depolarising channel with the same Q would produce.
  for (const auto f : {EveFormula::proof, EveFormula::typeset}) {
    for (int ci = 0; ci <= 200; ++ci) {
      const double c = ci * 0.01;
      double previous = std::numeric_limits<double>::infinity();
      for (int qi = 0; qi <= 159; ++qi) {
        const double q = qi * 1e-3;
        if (0.5 * c > (1 - 2 * q) * (1 - 2 * q)) break;
        const double r = rfi_key_rate(q, c, f);
        REQUIRE(r <= previous + 1e-15);
        previous = r;
      }
    }
  }
}

TEST_CASE("r can rise with Q when C is close to its maximum") {
  // Larger Q lets the same C be explained with u_max closer to 1, which
  // lowers Eve's bound faster than h(Q) grows.
  CHECK(rfi_key_rate(0.157, 1.38) > rfi_key_rate(0.156, 1.38));
  CHECK(std::abs(rfi_key_rate(0.157, 1.38) - oracle_r(0.157, 1.38, true)) <= 1e-10);
  CHECK(rfi_key_rate(0.008, 1.97) > rfi_key_rate(0.007, 1.97));
}

TEST_CASE("BB84 rate") {
  CHECK(bb84_key_rate(0.0) == 1.0);
  CHECK(bb84_key_rate(0.11) == doctest::Approx(0.000168083670944).epsilon(1e-9));
  CHECK(bb84_key_rate(0.25) < 0.0);
  CHECK(bb84_key_rate(0.1099) > 0.0);
  CHECK(bb84_key_rate(0.1101) < 0.0);
}

TEST_CASE("uncertainty: sigma_Q is the binomial proportion error") {
  TallyMatrix t;
  set_cell(t, Basis::Z, Basis::Z, 950, 1000);
  for (const Basis a : {Basis::X, Basis::Y})
    for (const Basis b : {Basis::X, Basis::Y}) set_cell(t, a, b, 800, 1000);
  const Uncertainty u = estimate_uncertainty(t);
  CHECK(u.sigma_q == doctest::Approx(std::sqrt(0.05 * 0.95 / 1000)).epsilon(1e-12));
}

TEST_CASE("uncertainty: sigma_C shrinks with N") {
  double previous = 1.0;
  for (const std::uint64_t n : {100ULL, 10'000ULL, 1'000'000ULL, 100'000'000ULL}) {
    TallyMatrix t;
    set_cell(t, Basis::Z, Basis::Z, n, n);
    for (const Basis a : {Basis::X, Basis::Y})
      for (const Basis b : {Basis::X, Basis::Y}) set_cell(t, a, b, n * 7 / 10, n);
    const double s = estimate_uncertainty(t).sigma_c;
    CHECK(s < previous);
    previous = s;
  }
  CHECK(previous < 2e-4);
}

TEST_CASE("uncertainty: sigma_C matches a bootstrap within 10%") {
  // <XX> = <YY> = 0.6, <XY> = -<YX> = 0.8 with 1e4 events per cell.
  constexpr std::uint64_t n = 10'000;
  TallyMatrix t;
  set_cell(t, Basis::Z, Basis::Z, n, n);
  set_cell(t, Basis::X, Basis::X, 8000, n);
  set_cell(t, Basis::Y, Basis::Y, 8000, n);
  set_cell(t, Basis::X, Basis::Y, 9000, n);
  set_cell(t, Basis::Y, Basis::X, 1000, n);
  const double analytic = estimate_uncertainty(t).sigma_c;
  const double boot = oracle::bootstrap_sigma_c({{8000, n}, {8000, n}, {9000, n}, {1000, n}}, 2000, 5);
  CHECK(std::abs(analytic - boot) <= 0.1 * boot);
}

TEST_CASE("uncertainty: empty cell is flagged") {
  TallyMatrix t;
  set_cell(t, Basis::Z, Basis::Z, 10, 10);
  CHECK_THROWS_AS(estimate_uncertainty(t), UndefinedCellError);
}

TEST_CASE("window analysis") {
  TallyMatrix t;
  t.window_index = 4;
  set_cell(t, Basis::Z, Basis::Z, 990, 1000);
  set_cell(t, Basis::X, Basis::X, 900, 1000);
  set_cell(t, Basis::Y, Basis::Y, 900, 1000);
  set_cell(t, Basis::X, Basis::Y, 600, 1000);
  set_cell(t, Basis::Y, Basis::X, 400, 1000);

  SUBCASE("rfi report satisfies r = 1 - h(Q) - E") {
    const KeyRateReport rep = analyze_rfi(t);
    CHECK_FALSE(rep.aborted);
    CHECK(rep.window_index == 4);
    CHECK(rep.q == doctest::Approx(0.01));
    CHECK(rep.c == doctest::Approx(0.64 + 0.04 + 0.04 + 0.64));
    CHECK(std::abs(rep.r - (1.0 - binary_entropy(rep.q) - rep.e_bits)) <= 1e-12);
    CHECK(rep.sigma_r > 0.0);
  }
  SUBCASE("bb84 pools matched X and Z rounds") {
    const KeyRateReport rep = analyze_bb84(t);
    CHECK_FALSE(rep.aborted);
    CHECK(rep.q == doctest::Approx((10.0 + 100.0) / 2000.0));
    CHECK(rep.r == doctest::Approx(1.0 - 2.0 * binary_entropy(rep.q)));
    CHECK(std::isnan(rep.c));
  }
  SUBCASE("QBER above the limit aborts with a non-positive rate") {
    set_cell(t, Basis::Z, Basis::Z, 800, 1000);
    const KeyRateReport rep = analyze_rfi(t);
    CHECK(rep.aborted);
    CHECK(rep.abort_reason == "qber-above-limit");
    CHECK(rep.r <= 0.0);
  }
  SUBCASE("gross C overshoot is a data-integrity abort") {
    TallyMatrix bad;
    set_cell(bad, Basis::Z, Basis::Z, 1000, 1000);
    for (const Basis a : {Basis::X, Basis::Y})
      for (const Basis b : {Basis::X, Basis::Y}) set_cell(bad, a, b, 1000, 1000);
    const KeyRateReport rep = analyze_rfi(bad);
    CHECK(rep.aborted);
    CHECK(rep.abort_reason == "data-integrity");
  }
  SUBCASE("small overshoot is clamped") {
    TallyMatrix ok;
    set_cell(ok, Basis::Z, Basis::Z, 1000, 1000);
    set_cell(ok, Basis::X, Basis::X, 1000, 1000);
    set_cell(ok, Basis::Y, Basis::Y, 1000, 1000);
    set_cell(ok, Basis::X, Basis::Y, 520, 1000);
    set_cell(ok, Basis::Y, Basis::X, 480, 1000);
    const KeyRateReport rep = analyze_rfi(ok);
    CHECK_FALSE(rep.aborted);
    CHECK(rep.c > 2.0);
    CHECK(rep.c <= 2.0 + 3.0 * rep.sigma_c);
    CHECK(rep.r == 1.0);
  }
  SUBCASE("empty tally aborts both protocols") {
    TallyMatrix empty;
    CHECK(analyze_rfi(empty).abort_reason == "undefined-cell");
    CHECK(analyze_bb84(empty).abort_reason == "undefined-cell");
  }
}
