#include "rfiqkd/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rfiqkd/errors.hpp"

namespace rfiqkd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kClampSlack = 1e-12;

constexpr std::array<std::pair<Basis, Basis>, 4> kFrameCells{{
    {Basis::X, Basis::X},
    {Basis::X, Basis::Y},
    {Basis::Y, Basis::X},
    {Basis::Y, Basis::Y},
}};

double cell_variance(const CorrelationSet& corr, Basis prep, Basis meas) {
  const double c = corr.at(prep, meas);
  return std::max(0.0, 1.0 - c * c) / static_cast<double>(corr.samples[index(prep)][index(meas)]);
}

bool frame_cells_defined(const CorrelationSet& corr) noexcept {
  return std::all_of(kFrameCells.begin(), kFrameCells.end(),
                     [&](const auto& cell) { return corr.defined(cell.first, cell.second); });
}

KeyRateReport aborted_report(const TallyMatrix& tally, Protocol protocol, std::string reason) {
  KeyRateReport rep;
  rep.window_index = tally.window_index;
  rep.protocol = protocol;
  rep.q = rep.c = rep.e_bits = rep.r = kNaN;
  rep.sigma_q = rep.sigma_c = rep.sigma_r = kNaN;
  rep.aborted = true;
  rep.abort_reason = std::move(reason);
  return rep;
}

}  // namespace

double CorrelationSet::at(Basis prep, Basis meas) const {
  if (!defined(prep, meas)) {
    throw UndefinedCellError(std::string("no samples for <") + std::string(to_string(prep)) +
                             std::string(to_string(meas)) + ">");
  }
  return value[index(prep)][index(meas)];
}

double correlation(std::uint64_t n00, std::uint64_t n11, std::uint64_t n01, std::uint64_t n10) {
  const std::uint64_t total = n00 + n11 + n01 + n10;
  if (total == 0) {
    throw UndefinedCellError("correlation of an empty cell");
  }
  const double agree = static_cast<double>(n00 + n11);
  const double disagree = static_cast<double>(n01 + n10);
  return (agree - disagree) / static_cast<double>(total);
}

CorrelationSet correlations(const TallyMatrix& tally) noexcept {
  CorrelationSet out;
  for (const Basis prep : kAllBases) {
    for (const Basis meas : kAllBases) {
      const std::uint64_t n00 = tally.at(prep, 0, meas, 0);
      const std::uint64_t n11 = tally.at(prep, 1, meas, 1);
      const std::uint64_t n01 = tally.at(prep, 0, meas, 1);
      const std::uint64_t n10 = tally.at(prep, 1, meas, 0);
      const std::uint64_t total = n00 + n11 + n01 + n10;
      out.samples[index(prep)][index(meas)] = total;
      out.value[index(prep)][index(meas)] = total == 0 ? kNaN : correlation(n00, n11, n01, n10);
    }
  }
  return out;
}

double compute_q(const CorrelationSet& corr) { return 0.5 * (1.0 - corr.at(Basis::Z, Basis::Z)); }

double compute_c(const CorrelationSet& corr) {
  double c = 0.0;
  for (const auto& [prep, meas] : kFrameCells) {
    const double v = corr.at(prep, meas);
    c += v * v;
  }
  return c;
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("binary_entropy argument outside [0, 1]: " + std::to_string(x));
  }
  if (x == 0.0 || x == 1.0) {
    return 0.0;
  }
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

EveInformation eve_information(double q, double c, EveFormula formula) {
  if (!(q >= 0.0)) {
    throw DomainError("QBER must be >= 0");
  }
  if (q > kRfiQberLimit) {
    throw ApplicabilityError("QBER " + std::to_string(q) + " exceeds the applicability limit");
  }
  if (!(c >= -kClampSlack && c <= 2.0 + kClampSlack)) {
    throw DataIntegrityError("C = " + std::to_string(c) + " outside [0, 2]");
  }
  c = std::clamp(c, 0.0, 2.0);

  EveInformation eve;
  const double half_c = 0.5 * c;
  const double one_minus_q = 1.0 - q;
  // Below saturation (1-Q) u_max = sqrt(C/2) exactly and Q v vanishes; taking
  // that branch explicitly avoids a sqrt of rounding noise.
  const double unsaturated = std::sqrt(half_c) / one_minus_q;
  if (unsaturated < 1.0) {
    eve.u_max = unsaturated;
    eve.q_times_v = 0.0;
  } else {
    eve.u_max = 1.0;
    eve.q_times_v = std::sqrt(std::max(0.0, half_c - one_minus_q * one_minus_q));
  }

  switch (formula) {
    case EveFormula::proof: {
      eve.bits = one_minus_q * binary_entropy(0.5 * (1.0 + eve.u_max));
      if (q > 0.0) {
        // v <= 1 for physical data; sampling noise can push it past 1.
        const double v = std::min(eve.q_times_v / q, 1.0);
        eve.bits += q * binary_entropy(0.5 * (1.0 + v));
      }
      break;
    }
    case EveFormula::typeset: {
      const double arg = std::min(0.5 * (1.0 + one_minus_q * eve.u_max + eve.q_times_v), 1.0);
      eve.bits = binary_entropy(arg);
      break;
    }
  }
  return eve;
}

double rfi_key_rate(double q, double c, EveFormula formula) {
  return 1.0 - binary_entropy(q) - eve_information(q, c, formula).bits;
}

double bb84_key_rate(double q) { return 1.0 - 2.0 * binary_entropy(q); }

Uncertainty estimate_uncertainty(const TallyMatrix& tally) {
  const CorrelationSet corr = correlations(tally);
  Uncertainty u;
  const double q = compute_q(corr);
  u.sigma_q = std::sqrt(q * (1.0 - q) / static_cast<double>(corr.samples[2][2]));
  double var_c = 0.0;
  for (const auto& [prep, meas] : kFrameCells) {
    const double c = corr.at(prep, meas);
    const double s2 = cell_variance(corr, prep, meas);
    var_c += 4.0 * c * c * s2 + 2.0 * s2 * s2;
  }
  u.sigma_c = std::sqrt(var_c);
  return u;
}

std::string_view to_string(Protocol p) noexcept {
  return p == Protocol::rfi ? "rfi" : "bb84";
}

KeyRateReport analyze_rfi(const TallyMatrix& tally, EveFormula formula) {
  const CorrelationSet corr = correlations(tally);
  if (!corr.defined(Basis::Z, Basis::Z) || !frame_cells_defined(corr)) {
    return aborted_report(tally, Protocol::rfi, "undefined-cell");
  }

  KeyRateReport rep;
  rep.window_index = tally.window_index;
  rep.protocol = Protocol::rfi;
  rep.q = compute_q(corr);
  rep.c = compute_c(corr);
  const Uncertainty unc = estimate_uncertainty(tally);
  rep.sigma_q = unc.sigma_q;
  rep.sigma_c = unc.sigma_c;

  if (rep.c > 2.0 + 3.0 * rep.sigma_c + kClampSlack) {
    rep.e_bits = rep.r = rep.sigma_r = kNaN;
    rep.aborted = true;
    rep.abort_reason = "data-integrity";
    return rep;
  }
  const double c_used = std::min(rep.c, 2.0);

  if (rep.q > kRfiQberLimit) {
    rep.e_bits = 1.0;
    rep.r = -binary_entropy(rep.q);
    rep.sigma_r = kNaN;
    rep.aborted = true;
    rep.abort_reason = "qber-above-limit";
    return rep;
  }

  rep.e_bits = eve_information(rep.q, c_used, formula).bits;
  rep.r = 1.0 - binary_entropy(rep.q) - rep.e_bits;

  // Secant steps toward the adverse side of each estimate.
  const double q_step = std::min(rep.q + rep.sigma_q, kRfiQberLimit);
  const double c_step = std::max(c_used - rep.sigma_c, 0.0);
  const double dq = rep.r - rfi_key_rate(q_step, c_used, formula);
  const double dc = rep.r - rfi_key_rate(rep.q, c_step, formula);
  rep.sigma_r = std::hypot(dq, dc);
  return rep;
}

KeyRateReport analyze_bb84(const TallyMatrix& tally) {
  const std::uint64_t total = tally.cell_total(Basis::X, Basis::X) + tally.cell_total(Basis::Z, Basis::Z);
  if (total == 0) {
    return aborted_report(tally, Protocol::bb84, "undefined-cell");
  }
  std::uint64_t errors = 0;
  for (const Basis b : {Basis::X, Basis::Z}) {
    errors += tally.at(b, 0, b, 1) + tally.at(b, 1, b, 0);
  }

  KeyRateReport rep;
  rep.window_index = tally.window_index;
  rep.protocol = Protocol::bb84;
  rep.q = static_cast<double>(errors) / static_cast<double>(total);
  rep.sigma_q = std::sqrt(rep.q * (1.0 - rep.q) / static_cast<double>(total));
  rep.c = rep.sigma_c = kNaN;
  rep.e_bits = binary_entropy(rep.q);
  rep.r = bb84_key_rate(rep.q);
  // Toward Q = 1/2 is adverse on either side of it.
  const double q_step = rep.q <= 0.5 ? std::min(rep.q + rep.sigma_q, 0.5) : std::max(rep.q - rep.sigma_q, 0.5);
  rep.sigma_r = std::abs(rep.r - bb84_key_rate(q_step));
  return rep;
}

}  // namespace rfiqkd
