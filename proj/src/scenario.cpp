#include "wpd/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace wpd {

using nlohmann::json;

namespace {

constexpr std::string_view kDeviationColumn = "MaxMethodDeviation";

std::string_view system_name(SystemKind s) {
  switch (s) {
    case SystemKind::OneElectron: return "one_electron";
    case SystemKind::TwoElectron: return "two_electron";
    case SystemKind::Interferometer: return "interferometer";
    case SystemKind::Dephasing: return "dephasing";
  }
  throw std::logic_error("unknown SystemKind");
}

SystemKind parse_system(const std::string& s) {
  for (SystemKind k : {SystemKind::OneElectron, SystemKind::TwoElectron, SystemKind::Interferometer,
                       SystemKind::Dephasing}) {
    if (system_name(k) == s) return k;
  }
  throw ConfigError("unknown system '" + s +
                    "' (expected one_electron, two_electron, interferometer or dephasing)");
}

bool is_dynamic(SystemKind s) { return s == SystemKind::OneElectron || s == SystemKind::TwoElectron; }

double number(const json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError("field '" + field + "' must be a number");
  return j.get<double>();
}

Complex complex_from(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("field '" + field + "' must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("'initial.density' must be a non-empty array");
  const auto n = static_cast<Eigen::Index>(j.size());
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ConfigError("'initial.density' must be square");
    }
    for (Eigen::Index c = 0; c < n; ++c) {
      m(r, c) = complex_from(row[static_cast<std::size_t>(c)],
                             "initial.density[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

TimeAxis parse_axis(const json& j) {
  const std::string s = j.get<std::string>();
  if (s == "omega12") return TimeAxis::Omega12;
  if (s == "absolute") return TimeAxis::Absolute;
  throw ConfigError("grid axis must be 'omega12' or 'absolute', got '" + s + "'");
}

std::string_view axis_name(TimeAxis a) { return a == TimeAxis::Omega12 ? "omega12" : "absolute"; }

TimeGrid parse_grid(const json& j) {
  if (j.is_string()) return parse_grid_spec(j.get<std::string>());
  if (!j.is_object()) throw ConfigError("'grid' must be a string or an object");
  const TimeAxis axis = j.contains("axis") ? parse_axis(j["axis"]) : TimeAxis::Omega12;
  const double start = j.contains("start") ? number(j["start"], "grid.start") : 0.0;
  if (!j.contains("count") || !j["count"].is_number_integer() || j["count"].get<long>() < 1) {
    throw ConfigError("'grid.count' must be a positive integer");
  }
  const auto count = j["count"].get<std::size_t>();
  TimeGrid grid;
  if (j.contains("step")) {
    grid = {start, number(j["step"], "grid.step"), count, axis};
  } else if (j.contains("stop")) {
    if (count < 2) throw ConfigError("'grid' with 'stop' needs count >= 2");
    grid = TimeGrid::span(start, number(j["stop"], "grid.stop"), count, axis);
  } else {
    throw ConfigError("'grid' needs either 'step' or 'stop'");
  }
  if (!(grid.step > 0.0)) throw ConfigError("grid step must be > 0");
  return grid;
}

PhaseDistribution parse_distribution(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("'distribution' needs a 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  auto field = [&](const char* name) {
    if (!j.contains(name)) throw ConfigError(std::string("'distribution.") + name + "' missing");
    return number(j[name], std::string("distribution.") + name);
  };
  try {
    if (kind == "delta") return PhaseDistribution(phase::Delta{field("phi0")});
    if (kind == "uniform") return PhaseDistribution(phase::Uniform{field("lo"), field("hi")});
    if (kind == "gaussian") return PhaseDistribution(phase::Gaussian{field("mean"), field("sigma")});
    if (kind == "discrete") {
      phase::Discrete d;
      if (!j.contains("points") || !j["points"].is_array()) {
        throw ConfigError("'distribution.points' must be a list of [weight, phi]");
      }
      for (const json& p : j["points"]) {
        if (!p.is_array() || p.size() != 2) {
          throw ConfigError("'distribution.points' entries must be [weight, phi]");
        }
        d.points.emplace_back(number(p[0], "distribution weight"), number(p[1], "distribution phi"));
      }
      return PhaseDistribution(std::move(d));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("distribution: ") + e.what());
  }
  throw ConfigError("unknown distribution kind '" + kind + "'");
}

json distribution_to(const PhaseDistribution& d) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, phase::Delta>) {
          return {{"kind", "delta"}, {"phi0", v.phi0}};
        } else if constexpr (std::is_same_v<T, phase::Uniform>) {
          return {{"kind", "uniform"}, {"lo", v.lo}, {"hi", v.hi}};
        } else if constexpr (std::is_same_v<T, phase::Gaussian>) {
          return {{"kind", "gaussian"}, {"mean", v.mean}, {"sigma", v.sigma}};
        } else {
          json pts = json::array();
          for (const auto& [w, phi] : v.points) pts.push_back(json::array({w, phi}));
          return {{"kind", "discrete"}, {"points", pts}};
        }
      },
      d.variant());
}

std::vector<MeasureKind> default_measures(SystemKind s) {
  switch (s) {
    case SystemKind::OneElectron:
      return {MeasureKind::VisibilityVC, MeasureKind::Predictability};
    case SystemKind::TwoElectron:
      return {MeasureKind::VisibilityV, MeasureKind::VisibilityVC};
    default:
      return {MeasureKind::CoherenceL1, MeasureKind::VisibilityV, MeasureKind::VisibilityVC};
  }
}

std::size_t system_dim(const ScenarioConfig& c) {
  switch (c.system) {
    case SystemKind::OneElectron: return 2;
    case SystemKind::TwoElectron: return 4;
    default: return 0;  // free
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// Parsing

TimeGrid parse_grid_spec(const std::string& spec, TimeAxis axis) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw ConfigError("grid spec must be start:step:count, got '" + spec + "'");
  try {
    std::size_t used = 0;
    const double start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    const double step = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("step");
    const long count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
    if (!(step > 0.0) || count < 1) throw std::invalid_argument("range");
    return {start, step, static_cast<std::size_t>(count), axis};
  } catch (const std::exception&) {
    throw ConfigError("grid spec '" + spec + "' needs numeric start, step > 0 and count >= 1");
  }
}

TimeGrid default_grid() { return TimeGrid::span(0.0, 4.0 * std::numbers::pi, 1000); }

ScenarioConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ScenarioConfig c;
  try {
    if (!j.contains("system")) throw ConfigError("'system' is required");
    c.system = parse_system(j["system"].get<std::string>());

    if (j.contains("params")) {
      const json& p = j["params"];
      if (p.contains("epsilon")) {
        const json& e = p["epsilon"];
        if (e.is_number()) {
          c.params.epsilon = {e.get<double>(), e.get<double>()};
        } else if (e.is_array() && e.size() == 2) {
          c.params.epsilon = {number(e[0], "params.epsilon[0]"), number(e[1], "params.epsilon[1]")};
        } else {
          throw ConfigError("'params.epsilon' must be a number or a pair");
        }
      }
      if (p.contains("hopping")) c.params.hopping = number(p["hopping"], "params.hopping");
      if (p.contains("interaction")) c.params.interaction = number(p["interaction"], "params.interaction");
      if (p.contains("hbar")) c.params.hbar = number(p["hbar"], "params.hbar");
    }

    if (j.contains("initial")) {
      const json& init = j["initial"];
      InitialCondition ic;
      if (init.contains("amplitudes")) {
        std::vector<Complex> amps;
        std::size_t k = 0;
        for (const json& a : init["amplitudes"]) {
          amps.push_back(complex_from(a, "initial.amplitudes[" + std::to_string(k++) + "]"));
        }
        ic.value = std::move(amps);
      } else if (init.contains("density")) {
        ic.value = matrix_from(init["density"]);
      } else {
        throw ConfigError("'initial' needs 'amplitudes' or 'density'");
      }
      if (init.contains("time")) ic.time = number(init["time"], "initial.time");
      c.initial = std::move(ic);
    }

    if (j.contains("paths")) {
      if (!j["paths"].is_number_integer()) throw ConfigError("'paths' must be an integer");
      c.paths = j["paths"].get<int>();
    }
    if (j.contains("distribution")) c.distribution = parse_distribution(j["distribution"]);

    c.grid = j.contains("grid") ? parse_grid(j["grid"]) : default_grid();

    if (j.contains("measures")) {
      for (const json& m : j["measures"]) {
        const std::string name = m.get<std::string>();
        const auto kind = parse_measure_kind(name);
        if (!kind) {
          throw ConfigError("unknown measure '" + name +
                            "' (expected CoherenceL1, VisibilityV, VisibilityVC, Predictability, "
                            "Purity or DualityGap)");
        }
        c.measures.push_back(*kind);
      }
    } else {
      c.measures = default_measures(c.system);
    }

    const std::string method = j.value("method", std::string("eigen"));
    if (method == "all") {
      c.method.reset();
    } else if (auto m = parse_method(method)) {
      c.method = *m;
    } else {
      throw ConfigError("unknown method '" + method + "' (expected eigen, closed, rk4 or all)");
    }

    if (j.contains("rk4_step")) c.rk4_step = number(j["rk4_step"], "rk4_step");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const ScenarioConfig& c) {
  json j;
  j["system"] = system_name(c.system);
  j["params"] = {{"epsilon", {c.params.epsilon[0], c.params.epsilon[1]}},
                 {"hopping", c.params.hopping},
                 {"interaction", c.params.interaction},
                 {"hbar", c.params.hbar}};
  if (c.initial) {
    json init;
    if (const auto* amps = std::get_if<std::vector<Complex>>(&c.initial->value)) {
      json a = json::array();
      for (Complex z : *amps) a.push_back(complex_to(z));
      init["amplitudes"] = a;
    } else {
      init["density"] = matrix_to(std::get<CMatrix>(c.initial->value));
    }
    init["time"] = c.initial->time;
    j["initial"] = init;
  }
  if (c.paths) j["paths"] = *c.paths;
  if (c.distribution) j["distribution"] = distribution_to(*c.distribution);
  j["grid"] = {{"start", c.grid.start},
               {"step", c.grid.step},
               {"count", c.grid.count},
               {"axis", axis_name(c.grid.axis)}};
  json measures = json::array();
  for (MeasureKind k : c.measures) measures.push_back(to_string(k));
  j["measures"] = measures;
  j["method"] = c.method ? std::string(to_string(*c.method)) : std::string("all");
  if (c.rk4_step) j["rk4_step"] = *c.rk4_step;
  return j;
}

ScenarioConfig preset(Figure figure) {
  ScenarioConfig c;
  c.params.hopping = 1.0;
  c.grid = default_grid();
  c.method = Method::Closed;
  InitialCondition ic;
  if (figure == Figure::Fig1) {
    c.system = SystemKind::OneElectron;
    ic.value = std::vector<Complex>{{0.0, std::sqrt(0.6)}, {-std::sqrt(0.4), 0.0}};
    c.measures = {MeasureKind::VisibilityVC, MeasureKind::Predictability};
  } else {
    c.system = SystemKind::TwoElectron;
    ic.value = std::vector<Complex>{{0.25, 0.25},
                                    {0.25, std::sqrt(3.0) / 4.0},
                                    {-0.25, 0.0},
                                    {0.5, -std::sqrt(5.0) / 4.0}};
    c.measures = {MeasureKind::VisibilityV, MeasureKind::VisibilityVC};
  }
  c.initial = std::move(ic);
  return c;
}

// ---------------------------------------------------------------------------
// Building blocks

DensityMatrix initial_density(const ScenarioConfig& c) {
  const std::size_t want = system_dim(c);
  if (c.paths && c.initial) throw ConfigError("give either 'paths' or 'initial', not both");
  if (c.paths) {
    if (is_dynamic(c.system)) throw ConfigError("'paths' applies to interferometer and dephasing");
    if (*c.paths < 2) throw ConfigError("'paths' must be >= 2");
    return maximally_coherent(*c.paths);
  }
  if (!c.initial) throw ConfigError("'initial' is required");

  try {
    if (const auto* amps = std::get_if<std::vector<Complex>>(&c.initial->value)) {
      if (amps->size() < 2) throw ConfigError("'initial.amplitudes' needs at least 2 entries");
      if (want != 0 && amps->size() != want) {
        throw ConfigError("'initial.amplitudes' has " + std::to_string(amps->size()) +
                          " entries; " + std::string(system_name(c.system)) + " needs " +
                          std::to_string(want));
      }
      const StateVector psi(Eigen::Map<const CVector>(amps->data(),
                                                      static_cast<Eigen::Index>(amps->size())));
      if (!psi.is_normalized()) {
        std::ostringstream os;
        os.precision(12);
        os << "initial amplitudes are not normalized: norm " << psi.norm() << " deviates from 1 by "
           << std::abs(psi.norm() - 1.0) << " (tolerance " << kNormalizationTolerance << ")";
        throw ConfigError(os.str());
      }
      return pure_density(psi);
    }
    const CMatrix& m = std::get<CMatrix>(c.initial->value);
    if (want != 0 && static_cast<std::size_t>(m.rows()) != want) {
      throw ConfigError("'initial.density' is " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.rows()) + "; " + std::string(system_name(c.system)) +
                        " needs " + std::to_string(want) + "x" + std::to_string(want));
    }
    return DensityMatrix(m, Tolerances::evolved());
  } catch (const InvariantError& e) {
    throw ConfigError(std::string("initial state: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("initial state: ") + e.what());
  }
}

std::optional<Hamiltonian> scenario_hamiltonian(const ScenarioConfig& c) {
  if (!is_dynamic(c.system)) return std::nullopt;
  try {
    return c.system == SystemKind::OneElectron ? hamiltonian_1e(c.params) : hamiltonian_2e(c.params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("params: ") + e.what());
  }
}

ValidationReport check_config(const ScenarioConfig& c) {
  const DensityMatrix rho = initial_density(c);
  if (c.measures.empty()) throw ConfigError("'measures' must not be empty");
  for (MeasureKind k : c.measures) {
    if ((k == MeasureKind::Predictability || k == MeasureKind::DualityGap) && rho.dim() != 2) {
      throw ConfigError(std::string(to_string(k)) + " is defined only for two-level systems");
    }
  }
  if (c.system == SystemKind::Dephasing && !c.distribution) {
    throw ConfigError("dephasing scenarios need a 'distribution'");
  }
  if (c.rk4_step && !(*c.rk4_step > 0.0)) throw ConfigError("'rk4_step' must be > 0");

  if (const auto h = scenario_hamiltonian(c)) {
    if (c.grid.axis == TimeAxis::Omega12 && c.params.omega12() == 0.0) {
      throw ConfigError("omega_12 t grid is undefined for hopping T = 0; set grid axis 'absolute'");
    }
    if (c.method == Method::Closed && !closed_form_regime(*h)) {
      throw RegimeError(
          "no closed form for these parameters: closed forms need equal site energies and either "
          "one electron, T = 0, or U = 0");
    }
  }
  return validate(rho.entries());
}

// ---------------------------------------------------------------------------
// Running

ScenarioResult run_scenario(const ScenarioConfig& c) {
  check_config(c);
  const DensityMatrix rho0 = initial_density(c);

  if (!is_dynamic(c.system)) {
    std::optional<Complex> d;
    DensityMatrix rho = rho0;
    if (c.system == SystemKind::Dephasing) {
      d = dephasing_factor(*c.distribution);
      try {
        rho = apply_dephasing(rho0, *d);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("distribution: ") + e.what());
      }
    }
    ObservableTrace trace;
    trace.grid = {0.0, 1.0, 1, c.grid.axis};
    trace.kinds = c.measures;
    for (MeasureKind k : c.measures) trace.series[k] = {evaluate(k, rho)};
    return {c, std::move(trace), std::nullopt, d, rho};
  }

  const Hamiltonian h = *scenario_hamiltonian(c);
  TraceOptions options;
  options.initial_time = c.initial ? c.initial->time : 0.0;
  options.rk4_step = c.rk4_step;
  options.keep_snapshots = true;

  const Method primary = c.method.value_or(Method::Eigen);
  ObservableTrace trace = trace_observables(h, rho0, c.grid, c.measures, primary, options);

  std::optional<std::vector<double>> deviation;
  if (!c.method) {
    std::vector<Method> methods{Method::Eigen, Method::Rk4};
    if (closed_form_regime(h)) methods.push_back(Method::Closed);
    deviation = method_deviation(h, rho0, c.grid, methods, options);
  }

  DensityMatrix last = trace.snapshots->back();
  trace.snapshots.reset();
  return {c, std::move(trace), std::move(deviation), std::nullopt, std::move(last)};
}

// ---------------------------------------------------------------------------
// Output

std::vector<std::string> column_names(const ScenarioResult& r) {
  std::vector<std::string> cols{"t"};
  for (MeasureKind k : r.trace.kinds) cols.emplace_back(to_string(k));
  if (r.method_deviation) cols.emplace_back(kDeviationColumn);
  if (r.dephasing) {
    cols.emplace_back("D_re");
    cols.emplace_back("D_im");
    cols.emplace_back("D_abs");
  }
  return cols;
}

namespace {

std::vector<double> row_values(const ScenarioResult& r, std::size_t i) {
  std::vector<double> row{r.trace.grid.at(i)};
  for (MeasureKind k : r.trace.kinds) row.push_back(r.trace[k][i]);
  if (r.method_deviation) row.push_back((*r.method_deviation)[i]);
  if (r.dephasing) {
    row.push_back(r.dephasing->real());
    row.push_back(r.dephasing->imag());
    row.push_back(std::abs(*r.dephasing));
  }
  return row;
}

}  // namespace

void write_csv(std::ostream& os, const ScenarioResult& r) {
  const auto cols = column_names(r);
  for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
  os << '\n';
  for (std::size_t i = 0; i < r.trace.grid.count; ++i) {
    const auto row = row_values(r, i);
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << format_double(row[k]);
    os << '\n';
  }
}

json result_to_json(const ScenarioResult& r) {
  json out;
  out["columns"] = column_names(r);
  json rows = json::array();
  for (std::size_t i = 0; i < r.trace.grid.count; ++i) rows.push_back(row_values(r, i));
  out["rows"] = rows;
  out["config"] = to_json(r.config);

  const double t_last = r.trace.grid.at(r.trace.grid.count - 1);
  out["final_state"] = {{"t", t_last}, {"density", matrix_to(r.final_state.entries())}};
  if (r.dephasing) out["dephasing_factor"] = complex_to(*r.dephasing);
  if (r.config.paths) out["nslit_visibility_formula"] = nslit_visibility_formula(*r.config.paths);

  if (is_dynamic(r.config.system)) {
    ScenarioConfig next = r.config;
    next.initial = InitialCondition{r.final_state.entries(), t_last};
    next.grid.start = t_last;
    out["continuation"] = to_json(next);
  } else {
    out["continuation"] = nullptr;
  }
  return out;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const RegimeError*>(&e)) return kExitRegime;
  if (dynamic_cast<const InvariantError*>(&e)) return kExitInvariant;
  return kExitFailure;
}

}  // namespace wpd
