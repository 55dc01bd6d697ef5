// scenario.hpp
//
// Scenario configuration, execution and output for the wpd command-line tool.
//
// Config files are JSON. Complex numbers are [re, im] pairs.
//
//   {
//     "system":   "one_electron" | "two_electron" | "interferometer" | "dephasing",
//     "params":   {"epsilon": [e1, e2], "hopping": T, "interaction": U, "hbar": 1},
//     "initial":  {"amplitudes": [[re, im], ...]}            // or
//                 {"density": [[[re, im], ...], ...], "time": t0},
//     "paths":    n,                                          // interferometer/dephasing only
//     "distribution": {"kind": "delta", "phi0": x}
//                   | {"kind": "uniform", "lo": a, "hi": b}
//                   | {"kind": "gaussian", "mean": m, "sigma": s}
//                   | {"kind": "discrete", "points": [[w, phi], ...]},
//     "grid":     "start:step:count" | {"start", "step", "count", "axis"}
//                                    | {"start", "stop", "count", "axis"},
//     "measures": ["VisibilityVC", "Predictability", ...],
//     "method":   "eigen" | "closed" | "rk4" | "all",
//     "rk4_step": dt
//   }
//
// Grid values are omega_12 t unless "axis" is "absolute".

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wpd/densmat.hpp"
#include "wpd/dynamics.hpp"
#include "wpd/hubbard.hpp"
#include "wpd/interferometer.hpp"
#include "wpd/measures.hpp"

namespace wpd {

// Malformed or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitRegime = 3,
  kExitInvariant = 4,
};

enum class SystemKind { OneElectron, TwoElectron, Interferometer, Dephasing };

struct InitialCondition {
  std::variant<std::vector<Complex>, CMatrix> value;
  double time = 0.0;  // grid units
};

struct ScenarioConfig {
  SystemKind system = SystemKind::OneElectron;
  HubbardParams params;
  std::optional<InitialCondition> initial;
  std::optional<int> paths;
  std::optional<PhaseDistribution> distribution;
  TimeGrid grid;
  std::vector<MeasureKind> measures;
  std::optional<Method> method;  // nullopt means every applicable method
  std::optional<double> rk4_step;
};

enum class Figure { Fig1, Fig2 };

// Throw ConfigError with a message naming the offending field.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);
nlohmann::json to_json(const ScenarioConfig& config);

// "start:step:count"
TimeGrid parse_grid_spec(const std::string& spec, TimeAxis axis = TimeAxis::Omega12);

// 0 to 4 pi in omega_12 t, 1000 points.
TimeGrid default_grid();

ScenarioConfig preset(Figure figure);

// Initial density matrix and Hamiltonian for a config; throws ConfigError.
DensityMatrix initial_density(const ScenarioConfig& config);
std::optional<Hamiltonian> scenario_hamiltonian(const ScenarioConfig& config);

// Full check of a config without running it: ConfigError on bad fields,
// RegimeError if a closed form is requested outside its regime.
ValidationReport check_config(const ScenarioConfig& config);

struct ScenarioResult {
  ScenarioConfig config;
  ObservableTrace trace;
  std::optional<std::vector<double>> method_deviation;
  std::optional<Complex> dephasing;
  DensityMatrix final_state;
};

ScenarioResult run_scenario(const ScenarioConfig& config);

std::vector<std::string> column_names(const ScenarioResult& result);

// 17 significant digits, ',' delimiter, '\n' line endings, header row first.
void write_csv(std::ostream& os, const ScenarioResult& result);

// Columns and rows plus the final density matrix and a "continuation" config
// that restarts the run from it.
nlohmann::json result_to_json(const ScenarioResult& result);

// Maps the library's exception types to the tool's exit codes.
int exit_code_for(const std::exception& e);

}  // namespace wpd
