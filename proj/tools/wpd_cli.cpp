// wpd: coherence, visibility and predictability traces for two-site Hubbard systems.
//
//   wpd run <config.json>       [--output path] [--format csv|json] [--method ...]
//                               [--grid start:step:count] [--hbar x]
//   wpd reproduce fig1|fig2     (same flags)
//   wpd validate <config.json>
//
// Exit codes: 0 ok, 2 config error, 3 closed form unavailable, 4 invariant violated.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wpd/scenario.hpp"

namespace {

struct OutputFlags {
  std::string output;
  std::string format = "csv";
  std::string method;
  std::string grid;
  std::optional<double> hbar;
};

void add_output_flags(CLI::App* cmd, OutputFlags& flags) {
  cmd->add_option("--output,-o", flags.output, "Write to this file instead of stdout");
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--method", flags.method, "Propagator")
      ->check(CLI::IsMember({"eigen", "closed", "rk4", "all"}));
  cmd->add_option("--grid", flags.grid, "Time grid as start:step:count");
  cmd->add_option("--hbar", flags.hbar, "Reduced Planck constant");
}

void apply_overrides(wpd::ScenarioConfig& config, const OutputFlags& flags) {
  if (!flags.method.empty()) {
    if (flags.method == "all") {
      config.method.reset();
    } else {
      config.method = *wpd::parse_method(flags.method);
    }
  }
  if (!flags.grid.empty()) config.grid = wpd::parse_grid_spec(flags.grid, config.grid.axis);
  if (flags.hbar) config.params.hbar = *flags.hbar;
}

int emit(const wpd::ScenarioConfig& config, const OutputFlags& flags) {
  const wpd::ScenarioResult result = wpd::run_scenario(config);

  std::ofstream file;
  if (!flags.output.empty()) {
    file.open(flags.output, std::ios::binary);
    if (!file) throw wpd::ConfigError("cannot open output file '" + flags.output + "'");
  }
  std::ostream& os = flags.output.empty() ? std::cout : file;
  if (flags.format == "json") {
    os << wpd::result_to_json(result).dump(2) << '\n';
  } else {
    wpd::write_csv(os, result);
  }
  os.flush();
  return wpd::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence, visibility and predictability of two-site Hubbard dynamics"};
  app.require_subcommand(1);

  OutputFlags run_flags;
  std::string run_path;
  auto* run = app.add_subcommand("run", "Run a scenario from a JSON config file");
  run->add_option("config", run_path, "Config file")->required();
  add_output_flags(run, run_flags);

  OutputFlags repro_flags;
  std::string figure;
  auto* repro = app.add_subcommand("reproduce", "Emit the data behind a built-in figure preset");
  repro->add_option("figure", figure, "fig1 or fig2")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2"}));
  add_output_flags(repro, repro_flags);

  std::string validate_path;
  auto* check = app.add_subcommand("validate", "Check a config file without running it");
  check->add_option("config", validate_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wpd::kExitConfig;
  }

  try {
    if (*run) {
      wpd::ScenarioConfig config = wpd::load_config(run_path);
      apply_overrides(config, run_flags);
      return emit(config, run_flags);
    }
    if (*repro) {
      wpd::ScenarioConfig config =
          wpd::preset(figure == "fig1" ? wpd::Figure::Fig1 : wpd::Figure::Fig2);
      apply_overrides(config, repro_flags);
      return emit(config, repro_flags);
    }
    if (*check) {
      const wpd::ScenarioConfig config = wpd::load_config(validate_path);
      const wpd::ValidationReport report = wpd::check_config(config);
      std::cout << "config ok; initial state: " << report.describe() << '\n';
      return wpd::kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "wpd: " << e.what() << '\n';
    return wpd::exit_code_for(e);
  }
  return wpd::kExitFailure;
}
