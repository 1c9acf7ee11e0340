#include "cli.hpp"

#include <algorithm>
#include <ostream>
#include <string_view>
#include <thread>

#include <CLI11.hpp>

#include "rfiqkd/errors.hpp"
#include "rfiqkd/scenario.hpp"

namespace rfiqkd::cli {

namespace {

constexpr std::string_view kPresetPrefix = "preset:";

ScenarioConfig resolve_scenario(const std::string& source) {
  if (source.rfind(kPresetPrefix, 0) == 0) {
    return preset(std::string_view(source).substr(kPresetPrefix.size()));
  }
  return load_config(source);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo simulator for reference-frame-independent QKD", "rfiqkd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  std::string scenario;
  std::uint64_t seed = 0;
  std::uint64_t pulse_scale = 0;
  std::string out_path;
  std::string format = "csv";
  unsigned threads = 1;

  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write its windowed key-rate series");
  run_cmd->add_option("--scenario", scenario, "Config file or preset:drift / preset:burst")->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "RNG seed (overrides the scenario)");
  auto* scale_opt =
      run_cmd->add_option("--pulse-scale", pulse_scale, "Simulate 1/n of each window's pulses")
          ->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", out_path, "Output file")->required();
  run_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--threads", threads, "Worker threads per window")->check(CLI::PositiveNumber);

  auto* presets_cmd = app.add_subcommand("presets", "List built-in scenarios");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario config without running it");
  validate_cmd->add_option("--scenario", validate_path, "Config file or preset name")->required();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (presets_cmd->parsed()) {
      for (const auto& p : presets()) {
        out << "preset:" << p.name << "\t" << p.description << "\n";
      }
      return kSuccess;
    }

    if (validate_cmd->parsed()) {
      const ScenarioConfig config = resolve_scenario(validate_path);
      config.validate();
      out << "ok " << config.name << " config_hash=" << config_hash(config) << "\n";
      return kSuccess;
    }

    ScenarioConfig config = resolve_scenario(scenario);
    if (*seed_opt) config.seed = seed;
    if (*scale_opt) config.pulse_scale = pulse_scale;
    const ScenarioRun result = run_scenario(config, std::max(1U, threads));
    for (const auto& note : result.notes) {
      err << "note: " << note << "\n";
    }
    emit_results(result, format == "json" ? OutputFormat::json : OutputFormat::csv, out_path);
    return kSuccess;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace rfiqkd::cli
