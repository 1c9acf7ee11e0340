#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "rfiqkd/errors.hpp"
#include "rfiqkd/scenario.hpp"

namespace rfiqkd {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& field, std::string_view raw) {
  const std::string text = trim(raw);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(field, "expected a number, got '" + text + "'");
  }
  return value;
}

std::uint64_t parse_u64(const std::string& field, std::string_view raw) {
  const std::string text = trim(raw);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
  }
  return value;
}

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view to_string(DriftKind k) {
  switch (k) {
    case DriftKind::static_offset: return "static";
    case DriftKind::linear: return "linear";
    case DriftKind::random_walk: return "random_walk";
  }
  return "static";
}

std::string_view to_string(EveFormula f) { return f == EveFormula::proof ? "proof" : "typeset"; }

// Accepted keys per section; anything else is reported as a config error.
const std::set<std::string>& known_keys(const std::string& section) {
  static const std::set<std::string> scenario{"name", "seed", "pulse_scale", "eve_formula", "protocols"};
  static const std::set<std::string> source{"mean_photon_number", "repetition_rate", "pulse_width"};
  static const std::set<std::string> detector{"efficiency", "dark_count_prob", "channel_transmittance",
                                              "misalignment_error"};
  static const std::set<std::string> drift{"kind", "beta0", "rate", "step_sigma"};
  static const std::set<std::string> bursts{"intervals"};
  static const std::set<std::string> windows{"window_duration", "n_windows"};
  static const std::set<std::string> none;
  if (section == "scenario") return scenario;
  if (section == "source") return source;
  if (section == "detector") return detector;
  if (section == "drift") return drift;
  if (section == "bursts") return bursts;
  if (section == "windows") return windows;
  return none;
}

class Reader {
public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  void number(const char* section, const char* key, double& out) const {
    if (auto v = get(section, key)) out = parse_double(field(section, key), *v);
  }
  void integer(const char* section, const char* key, std::uint64_t& out) const {
    if (auto v = get(section, key)) out = parse_u64(field(section, key), *v);
  }
  std::optional<std::string> get(const char* section, const char* key) const {
    const auto node = tree_.get_child_optional(pt::ptree::path_type(std::string(section) + "." + key, '.'));
    if (!node) return std::nullopt;
    return trim(node->data());
  }
  static std::string field(const char* section, const char* key) { return std::string(section) + "." + key; }

private:
  const pt::ptree& tree_;
};

std::vector<BurstInterval> parse_intervals(const std::string& text) {
  std::vector<BurstInterval> out;
  std::stringstream items(text);
  std::string item;
  std::size_t i = 0;
  while (std::getline(items, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const std::string field = "bursts.intervals[" + std::to_string(i++) + "]";
    const auto a = item.find(':');
    const auto b = a == std::string::npos ? a : item.find(':', a + 1);
    if (b == std::string::npos) {
      throw ConfigError(field, "expected start:end:burst_sigma, got '" + item + "'");
    }
    out.push_back({parse_double(field, std::string_view(item).substr(0, a)),
                   parse_double(field, std::string_view(item).substr(a + 1, b - a - 1)),
                   parse_double(field, std::string_view(item).substr(b + 1))});
  }
  return out;
}

}  // namespace

void ScenarioConfig::validate() const {
  source.validate();
  detector.validate();
  drift.validate();
  bursts.validate(drift);
  windows.validate();
  (void)windows.pulses_per_window(source.repetition_rate);
  if (pulse_scale < 1) {
    throw ConfigError("scenario.pulse_scale", "must be >= 1");
  }
  if (!run_rfi && !run_bb84) {
    throw ConfigError("scenario.protocols", "enable at least one of rfi, bb84");
  }
}

std::uint64_t ScenarioConfig::simulated_pulses_per_window() const {
  return windows.pulses_per_window(source.repetition_rate) / pulse_scale;
}

ScenarioConfig drift_preset() {
  ScenarioConfig c;
  c.name = "drift";
  c.drift.kind = DriftKind::linear;
  c.drift.beta0 = 0.0;
  c.drift.rate = (std::numbers::pi / 2.0) / 240.0;
  c.windows = {10.0, 24};
  c.pulse_scale = 100;
  return c;
}

ScenarioConfig burst_preset() {
  ScenarioConfig c;
  c.name = "burst";
  c.drift.kind = DriftKind::random_walk;
  c.drift.beta0 = 1.5;
  c.drift.step_sigma = kSlowDriftSigma;
  c.bursts.intervals = {{60.0, 120.0, kBurstSigma}};
  c.windows = {10.0, 24};
  c.pulse_scale = 100;
  return c;
}

std::vector<PresetInfo> presets() {
  return {
      {"drift", "24 x 10 s, aligned start, linear frame drift 0 -> pi/2 over 240 s"},
      {"burst", "24 x 10 s, misaligned slow walk, rapid noise for 60 s <= t < 120 s"},
  };
}

ScenarioConfig preset(std::string_view name) {
  if (name == "drift") return drift_preset();
  if (name == "burst") return burst_preset();
  throw ConfigError("scenario", "unknown preset '" + std::string(name) + "'");
}

ScenarioConfig parse_config(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", std::string("malformed config: ") + e.what());
  }

  for (const auto& [section, body] : tree) {
    const auto& keys = known_keys(section);
    if (keys.empty()) {
      throw ConfigError(section, "unknown section");
    }
    for (const auto& [key, value] : body) {
      if (!keys.contains(key)) {
        throw ConfigError(section + "." + key, "unknown key");
      }
    }
  }

  ScenarioConfig c;
  const Reader r(tree);
  if (auto v = r.get("scenario", "name")) c.name = *v;
  r.integer("scenario", "seed", c.seed);
  r.integer("scenario", "pulse_scale", c.pulse_scale);
  if (auto v = r.get("scenario", "eve_formula")) {
    if (*v == "proof") {
      c.eve_formula = EveFormula::proof;
    } else if (*v == "typeset") {
      c.eve_formula = EveFormula::typeset;
    } else {
      throw ConfigError("scenario.eve_formula", "expected proof or typeset, got '" + *v + "'");
    }
  }
  if (auto v = r.get("scenario", "protocols")) {
    c.run_rfi = c.run_bb84 = false;
    std::stringstream items(*v);
    std::string item;
    while (std::getline(items, item, ',')) {
      item = trim(item);
      if (item == "rfi") {
        c.run_rfi = true;
      } else if (item == "bb84") {
        c.run_bb84 = true;
      } else if (!item.empty()) {
        throw ConfigError("scenario.protocols", "unknown protocol '" + item + "'");
      }
    }
  }

  r.number("source", "mean_photon_number", c.source.mean_photon_number);
  r.number("source", "repetition_rate", c.source.repetition_rate);
  r.number("source", "pulse_width", c.source.pulse_width);

  r.number("detector", "efficiency", c.detector.efficiency);
  r.number("detector", "dark_count_prob", c.detector.dark_count_prob);
  r.number("detector", "channel_transmittance", c.detector.channel_transmittance);
  r.number("detector", "misalignment_error", c.detector.misalignment_error);

  if (auto v = r.get("drift", "kind")) {
    if (*v == "static") {
      c.drift.kind = DriftKind::static_offset;
    } else if (*v == "linear") {
      c.drift.kind = DriftKind::linear;
    } else if (*v == "random_walk") {
      c.drift.kind = DriftKind::random_walk;
    } else {
      throw ConfigError("drift.kind", "expected static, linear or random_walk, got '" + *v + "'");
    }
  }
  r.number("drift", "beta0", c.drift.beta0);
  r.number("drift", "rate", c.drift.rate);
  r.number("drift", "step_sigma", c.drift.step_sigma);

  if (auto v = r.get("bursts", "intervals")) c.bursts.intervals = parse_intervals(*v);

  r.number("windows", "window_duration", c.windows.window_duration);
  std::uint64_t n_windows = c.windows.n_windows;
  r.integer("windows", "n_windows", n_windows);
  if (n_windows > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("windows.n_windows", "too large");
  }
  c.windows.n_windows = static_cast<std::uint32_t>(n_windows);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError(path.string(), "cannot open for reading");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "[scenario]\n"
      << "name = " << c.name << "\n"
      << "seed = " << c.seed << "\n"
      << "pulse_scale = " << c.pulse_scale << "\n"
      << "eve_formula = " << to_string(c.eve_formula) << "\n"
      << "protocols = " << (c.run_rfi ? "rfi" : "") << (c.run_rfi && c.run_bb84 ? ", " : "")
      << (c.run_bb84 ? "bb84" : "") << "\n\n";
  out << "[source]\n"
      << "mean_photon_number = " << exact(c.source.mean_photon_number) << "\n"
      << "repetition_rate = " << exact(c.source.repetition_rate) << "\n"
      << "pulse_width = " << exact(c.source.pulse_width) << "\n\n";
  out << "[detector]\n"
      << "efficiency = " << exact(c.detector.efficiency) << "\n"
      << "dark_count_prob = " << exact(c.detector.dark_count_prob) << "\n"
      << "channel_transmittance = " << exact(c.detector.channel_transmittance) << "\n"
      << "misalignment_error = " << exact(c.detector.misalignment_error) << "\n\n";
  out << "[drift]\n"
      << "kind = " << to_string(c.drift.kind) << "\n"
      << "beta0 = " << exact(c.drift.beta0) << "\n"
      << "rate = " << exact(c.drift.rate) << "\n"
      << "step_sigma = " << exact(c.drift.step_sigma) << "\n\n";
  out << "[bursts]\n"
      << "intervals =";
  for (std::size_t i = 0; i < c.bursts.intervals.size(); ++i) {
    const auto& b = c.bursts.intervals[i];
    out << (i == 0 ? " " : ", ") << exact(b.start) << ":" << exact(b.end) << ":" << exact(b.burst_sigma);
  }
  out << "\n\n";
  out << "[windows]\n"
      << "window_duration = " << exact(c.windows.window_duration) << "\n"
      << "n_windows = " << c.windows.n_windows << "\n";
  return out.str();
}

std::string config_hash(const ScenarioConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : serialize_config(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rfiqkd
