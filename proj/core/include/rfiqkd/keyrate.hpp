#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "rfiqkd/bloch.hpp"
#include "rfiqkd/protocol.hpp"

namespace rfiqkd {

/// Largest QBER for which the frame-independent bound on Eve is valid.
inline constexpr double kRfiQberLimit = 0.159;

/// Which algebraic reading of Eve's information bound to evaluate.
///
/// proof:   E = (1-Q) h((1+u_max)/2) + Q h((1+v)/2)
/// typeset: E = h((1 + (1-Q) u_max + Q v) / 2)
enum class EveFormula : std::uint8_t { proof, typeset };

/// Expectation values <A B> estimated from sign-weighted click counts.
struct CorrelationSet {
  std::array<std::array<double, 3>, 3> value{};
  std::array<std::array<std::uint64_t, 3>, 3> samples{};

  bool defined(Basis prep, Basis meas) const noexcept { return samples[index(prep)][index(meas)] > 0; }
  /// Throws UndefinedCellError when the cell has no samples.
  double at(Basis prep, Basis meas) const;
};

/// (n00 + n11 - n01 - n10) / total. Throws UndefinedCellError when total is 0.
double correlation(std::uint64_t n00, std::uint64_t n11, std::uint64_t n01, std::uint64_t n10);

/// All nine correlations; zero-sample cells are left undefined.
CorrelationSet correlations(const TallyMatrix& tally) noexcept;

/// Q = (1 - <ZZ>) / 2.
double compute_q(const CorrelationSet& corr);

/// C = <XX>^2 + <XY>^2 + <YX>^2 + <YY>^2.
double compute_c(const CorrelationSet& corr);

/// -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0.
/// Throws DomainError for x outside [0, 1].
double binary_entropy(double x);

struct EveInformation {
  double u_max = 0.0;
  double q_times_v = 0.0;  // Q v, evaluated without dividing by Q
  double bits = 0.0;
};

/// Eve's information for QBER `q` and frame-invariant correlation `c`.
///
/// Throws ApplicabilityError if q > kRfiQberLimit, DomainError if q < 0, and
/// DataIntegrityError if c lies outside [0, 2] (a 1e-12 slack is clamped).
/// Statistical overshoot beyond that must be resolved by the caller.
EveInformation eve_information(double q, double c, EveFormula formula = EveFormula::proof);

/// r = 1 - h(Q) - E(Q, C). May be negative.
double rfi_key_rate(double q, double c, EveFormula formula = EveFormula::proof);

/// Asymptotic BB84 rate 1 - 2 h(Q). Evaluated as-is for any Q in [0, 1].
double bb84_key_rate(double q);

struct Uncertainty {
  double sigma_q = 0.0;
  double sigma_c = 0.0;
};

/// Binomial standard errors of the correlations propagated to Q and C.
///
/// sigma_Q = sqrt(Q (1 - Q) / N_ZZ). For C each squared correlation
/// contributes 4 c^2 s^2 + 2 s^4 with s^2 = (1 - c^2) / N; the second term
/// keeps near-zero correlations from reporting zero spread.
/// Throws UndefinedCellError when a required cell is empty.
Uncertainty estimate_uncertainty(const TallyMatrix& tally);

enum class Protocol : std::uint8_t { rfi, bb84 };
std::string_view to_string(Protocol p) noexcept;

struct KeyRateReport {
  std::int64_t window_index = -1;
  Protocol protocol = Protocol::rfi;
  double q = 0.0;
  double c = 0.0;        // NaN for BB84
  double e_bits = 0.0;   // Eve's information; h(Q) for BB84
  double r = 0.0;
  double sigma_q = 0.0;
  double sigma_c = 0.0;  // NaN for BB84
  double sigma_r = 0.0;  // secant propagation of sigma_q and sigma_c
  bool aborted = false;
  std::string abort_reason;
};

/// Frame-independent analysis of one window.
///
/// Empty cells abort with reason "undefined-cell", Q above the applicability
/// limit aborts with "qber-above-limit" (E = 1, so r = -h(Q)), and C beyond
/// 2 + 3 sigma_C aborts with "data-integrity". C within that band is clamped.
KeyRateReport analyze_rfi(const TallyMatrix& tally, EveFormula formula = EveFormula::proof);

/// BB84 baseline on the same events: matched X/X and Z/Z rounds pooled.
KeyRateReport analyze_bb84(const TallyMatrix& tally);

}  // namespace rfiqkd
