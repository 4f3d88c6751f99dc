#include "spinbath/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace spinbath {

namespace {

// kB / hbar in rad s^-1 K^-1; converts kelvin to angular frequency.
constexpr double kBoltzmannOverHbar = 1.3092e11;

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config: field " + key + ": not a number: " + value);
  }
  if (pos != value.size())
    throw ConfigError("config: field " + key + ": trailing junk: " + value);
  return v;
}

long parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long v;
  try {
    v = std::stol(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config: field " + key + ": not an integer: " + value);
  }
  if (pos != value.size())
    throw ConfigError("config: field " + key + ": trailing junk: " + value);
  return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  if (out.empty())
    throw ConfigError("config: field " + key + ": empty list");
  return out;
}

void set_field(RunConfig& c, const std::string& key, const std::string& value) {
  const auto num = [&] { return parse_double(key, value); };
  if (key == "model.type") {
    if (value != "sb" && value != "sib")
      throw ConfigError("config: field model.type must be sb or sib, got " +
                        value);
    c.model = value;
  } else if (key == "system.delta_scale") c.delta_scale = num();
  else if (key == "system.epsilon") c.epsilon = num();
  else if (key == "system.epsilon_si") c.epsilon_si = num();
  else if (key == "system.initial") {
    if (value != "coherent" && value != "excited" && value != "ground")
      throw ConfigError(
          "config: field system.initial must be coherent/excited/ground");
    c.initial = value;
  }
  else if (key == "bath.xi") c.xi = num();
  else if (key == "bath.lambda_kappa") c.lambda_kappa = num();
  else if (key == "bath.omega0") c.omega0 = num();
  else if (key == "bath.omega0_si") c.omega0_si = num();
  else if (key == "bath.damping") c.damping = num();
  else if (key == "bath.damping_si") c.damping_si = num();
  else if (key == "bath.band") c.band = value;
  else if (key == "bath.band_min") c.band_min = num();
  else if (key == "bath.band_max") c.band_max = num();
  else if (key == "bath.beta") c.beta = num();
  else if (key == "bath.temperature_k") c.temperature_k = num();
  else if (key == "grid.dt") c.dt = num();
  else if (key == "grid.steps") c.steps = static_cast<int>(parse_int(key, value));
  else if (key == "propagation.kmax")
    c.kmax = static_cast<int>(parse_int(key, value));
  else if (key == "propagation.memory_budget")
    c.memory_budget = static_cast<std::size_t>(parse_int(key, value));
  else if (key == "quadrature.abs_tol") c.abs_tol = num();
  else if (key == "quadrature.rel_tol") c.rel_tol = num();
  else if (key == "quadrature.gauss_order")
    c.gauss_order = static_cast<int>(parse_int(key, value));
  else if (key == "output.prefix") c.prefix = value;
  else if (key == "sweep.param1") c.sweep_param1 = value;
  else if (key == "sweep.param2") c.sweep_param2 = value;
  else if (key == "sweep.values1") c.sweep_values1 = parse_list(key, value);
  else if (key == "sweep.values2") c.sweep_values2 = parse_list(key, value);
  else throw ConfigError("config: unknown field " + key);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: line " + std::to_string(lineno) +
                          ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError("config: line " + std::to_string(lineno) +
                        ": key outside any section");
    set_field(c, section + "." + key, value);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  const auto opt = [&os](const char* key, const std::optional<double>& v) {
    if (v) os << key << " = " << *v << '\n';
  };
  os << "[model]\ntype = " << c.model << "\n\n";
  os << "[system]\ndelta_scale = " << c.delta_scale << '\n';
  opt("epsilon", c.epsilon);
  opt("epsilon_si", c.epsilon_si);
  os << "initial = " << c.initial << '\n';
  os << "\n[bath]\n";
  opt("xi", c.xi);
  opt("lambda_kappa", c.lambda_kappa);
  opt("omega0", c.omega0);
  opt("omega0_si", c.omega0_si);
  opt("damping", c.damping);
  opt("damping_si", c.damping_si);
  os << "band = " << c.band << '\n';
  opt("band_min", c.band_min);
  opt("band_max", c.band_max);
  opt("beta", c.beta);
  opt("temperature_k", c.temperature_k);
  os << "\n[grid]\ndt = " << c.dt << "\nsteps = " << c.steps << '\n';
  os << "\n[propagation]\nkmax = " << c.kmax << '\n';
  if (c.memory_budget) os << "memory_budget = " << *c.memory_budget << '\n';
  os << "\n[quadrature]\nabs_tol = " << c.abs_tol
     << "\nrel_tol = " << c.rel_tol << "\ngauss_order = " << c.gauss_order
     << '\n';
  os << "\n[output]\nprefix = " << c.prefix << '\n';
  if (c.sweep_param1 || c.sweep_param2) {
    os << "\n[sweep]\n";
    const auto list = [&os](const char* key, const std::vector<double>& v) {
      if (v.empty()) return;
      os << key << " = ";
      for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? ", " : "") << v[i];
      os << '\n';
    };
    if (c.sweep_param1) os << "param1 = " << *c.sweep_param1 << '\n';
    list("values1", c.sweep_values1);
    if (c.sweep_param2) os << "param2 = " << *c.sweep_param2 << '\n';
    list("values2", c.sweep_values2);
  }
  return os.str();
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override: expected section.key=value, got " + assignment);
  set_field(config, trim(assignment.substr(0, eq)),
            trim(assignment.substr(eq + 1)));
}

ResolvedRun resolve(const RunConfig& c) {
  const auto exclusive = [&](const std::string& name,
                             const std::optional<double>& rel,
                             const std::optional<double>& si)
      -> std::optional<double> {
    if (rel && si)
      throw ConfigError("config: fields " + name + " and " + name +
                        "_si are mutually exclusive");
    if (rel) return *rel;
    if (si) {
      if (!(c.delta_scale > 0.0))
        throw ConfigError("config: field system.delta_scale must be > 0");
      return *si / c.delta_scale;
    }
    return std::nullopt;
  };

  ResolvedRun r;
  const std::optional<double> eps =
      exclusive("system.epsilon", c.epsilon, c.epsilon_si);
  if (!eps)
    throw ConfigError("config: missing required field system.epsilon");
  r.system = QubitHamiltonian{*eps, 1.0};
  if (c.initial == "coherent") {
    r.rho0 = maximal_coherent_state();
  } else if (c.initial == "ground") {
    r.rho0 = ground_state();
  } else if (c.initial == "excited") {
    r.rho0 = DensityMatrix::Zero();
    r.rho0(0, 0) = 1.0;
  } else {
    throw ConfigError(
        "config: field system.initial must be coherent/excited/ground");
  }

  if (!c.xi) throw ConfigError("config: missing required field bath.xi");
  if (*c.xi < 0.0)
    throw ConfigError("config: field bath.xi must be >= 0");

  if (c.beta && c.temperature_k)
    throw ConfigError(
        "config: fields bath.beta and bath.temperature_k are mutually "
        "exclusive");
  double beta;
  if (c.beta) {
    beta = *c.beta;
  } else if (c.temperature_k) {
    beta = c.delta_scale / (kBoltzmannOverHbar * *c.temperature_k);
  } else {
    throw ConfigError(
        "config: missing required field bath.beta or bath.temperature_k");
  }

  FrequencyBand band;
  const BandPresets presets = band_presets(1.0);
  if (c.band == "low") band = presets.low;
  else if (c.band == "medium") band = presets.medium;
  else if (c.band == "high") band = presets.high;
  else if (c.band == "custom") {
    if (!c.band_min || !c.band_max)
      throw ConfigError(
          "config: band = custom requires bath.band_min and bath.band_max");
    band = FrequencyBand{*c.band_min, *c.band_max};
  } else {
    throw ConfigError("config: field bath.band must be low/medium/high/custom");
  }
  if ((c.band_min || c.band_max) && c.band != "custom")
    throw ConfigError(
        "config: bath.band_min/band_max only valid with band = custom");

  SpectralDensity density;
  if (c.model == "sb") {
    if (c.lambda_kappa || c.omega0 || c.omega0_si || c.damping || c.damping_si)
      throw ConfigError(
          "config: SIB fields (lambda_kappa/omega0/damping) set for model sb");
    density = OhmicDensity{*c.xi, band.omega_max};
  } else {
    const std::optional<double> om0 =
        exclusive("bath.omega0", c.omega0, c.omega0_si);
    const std::optional<double> damp =
        exclusive("bath.damping", c.damping, c.damping_si);
    if (!om0) throw ConfigError("config: missing required field bath.omega0");
    if (!damp) throw ConfigError("config: missing required field bath.damping");
    density = EffectiveDensity{c.lambda_kappa.value_or(1.0), *c.xi, *om0,
                               *damp, band.omega_max};
  }

  r.bath = BathSpec{density, band, beta};
  validate(r.bath);

  if (!(c.dt > 0.0)) throw ConfigError("config: field grid.dt must be > 0");
  if (c.steps < 1) throw ConfigError("config: field grid.steps must be >= 1");
  r.grid = TimeGrid{c.dt, c.steps};
  if (c.kmax < 1)
    throw ConfigError("config: field propagation.kmax must be >= 1");
  r.kmax = c.kmax;
  if (c.memory_budget) r.evolve.memory_budget_bytes = *c.memory_budget;
  r.evolve.eta.quad.abs_tol = c.abs_tol;
  r.evolve.eta.quad.rel_tol = c.rel_tol;
  r.evolve.eta.gauss_order = c.gauss_order;
  r.prefix = c.prefix;
  return r;
}

}  // namespace spinbath
