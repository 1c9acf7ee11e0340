#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "rfiqkd/errors.hpp"
#include "rfiqkd/scenario.hpp"

namespace rfiqkd {

namespace {

constexpr const char* kColumns =
    "window_index,protocol,t_start_s,mean_beta_rad,Q,sigma_Q,C,sigma_C,E_bits,r,detection_rate_hz,aborted,"
    "abort_reason";

nlohmann::ordered_json json_number(double v) {
  if (!std::isfinite(v)) {
    return nullptr;
  }
  // Same rounding as the CSV so both formats parse to identical values.
  return std::strtod(format_number(v).c_str(), nullptr);
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_csv(std::ostream& out, const ScenarioRun& run) {
  out << "# rfiqkd " << version() << " scenario=" << run.config.name << " seed=" << run.config.seed
      << " pulse_scale=" << run.config.pulse_scale << " config_hash=" << config_hash(run.config) << "\n";
  out << kColumns << "\n";
  for (const auto& row : run.rows) {
    const KeyRateReport& rep = row.report;
    out << row.window_index << ',' << to_string(rep.protocol) << ',' << format_number(row.t_start) << ','
        << format_number(row.mean_beta) << ',' << format_number(rep.q) << ',' << format_number(rep.sigma_q)
        << ',' << format_number(rep.c) << ',' << format_number(rep.sigma_c) << ','
        << format_number(rep.e_bits) << ',' << format_number(rep.r) << ','
        << format_number(row.detection_rate) << ',' << (rep.aborted ? "true" : "false") << ','
        << rep.abort_reason << "\n";
  }
}

void write_json(std::ostream& out, const ScenarioRun& run) {
  nlohmann::ordered_json doc;
  doc["tool"] = "rfiqkd";
  doc["version"] = std::string(version());
  doc["scenario"] = run.config.name;
  doc["seed"] = run.config.seed;
  doc["pulse_scale"] = run.config.pulse_scale;
  doc["config_hash"] = config_hash(run.config);
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : run.rows) {
    const KeyRateReport& rep = row.report;
    rows.push_back({
        {"window_index", row.window_index},
        {"protocol", std::string(to_string(rep.protocol))},
        {"t_start_s", json_number(row.t_start)},
        {"mean_beta_rad", json_number(row.mean_beta)},
        {"Q", json_number(rep.q)},
        {"sigma_Q", json_number(rep.sigma_q)},
        {"C", json_number(rep.c)},
        {"sigma_C", json_number(rep.sigma_c)},
        {"E_bits", json_number(rep.e_bits)},
        {"r", json_number(rep.r)},
        {"detection_rate_hz", json_number(row.detection_rate)},
        {"aborted", rep.aborted},
        {"abort_reason", rep.abort_reason},
    });
  }
  out << doc.dump(2) << "\n";
}

void emit_results(const ScenarioRun& run, OutputFormat format, const std::filesystem::path& path) {
  if (run.rows.empty()) {
    throw ContractViolation("emit_results called with no rows");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError(path.string(), "cannot open for writing");
  }
  if (format == OutputFormat::csv) {
    write_csv(out, run);
  } else {
    write_json(out, run);
  }
  out.flush();
  if (!out) {
    throw IoError(path.string(), "write failed");
  }
}

}  // namespace rfiqkd
