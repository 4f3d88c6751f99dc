#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spinbath/analysis.hpp"
#include "spinbath/propagator.hpp"

namespace spinbath {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat sectioned key-value run description. Frequencies and energies
/// are Delta-relative unless the *_si variant (rad/s) is used; the two
/// forms are mutually exclusive per field, converted through
/// system.delta_scale. Temperature may be given as bath.beta
/// (Delta-relative inverse energy) or bath.temperature_k (kelvin).
struct RunConfig {
  // [model]
  std::string model = "sb";  // sb | sib

  // [system]
  double delta_scale = 5e9;  // rad/s per Delta unit
  std::optional<double> epsilon, epsilon_si;
  std::string initial = "coherent";  // coherent | excited | ground

  // [bath]
  std::optional<double> xi;
  std::optional<double> lambda_kappa;
  std::optional<double> omega0, omega0_si;
  std::optional<double> damping, damping_si;
  std::string band = "medium";  // low | medium | high | custom
  std::optional<double> band_min, band_max;  // Delta-relative, custom only
  std::optional<double> beta, temperature_k;

  // [grid]
  double dt = 0.5;
  int steps = 400;

  // [propagation]
  int kmax = 3;
  std::optional<std::size_t> memory_budget;

  // [quadrature]
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int gauss_order = 16;

  // [output]
  std::string prefix = "run";

  // [sweep]
  std::optional<std::string> sweep_param1, sweep_param2;
  std::vector<double> sweep_values1, sweep_values2;

  bool operator==(const RunConfig&) const = default;
};

/// Parse INI-style text ([section], key = value, # or ; comments).
/// Unknown sections/keys and malformed lines raise ConfigError naming
/// the offender.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Serialization such that parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Apply one "section.key=value" override.
void apply_override(RunConfig& config, const std::string& assignment);

/// Fully resolved physical inputs for one propagation.
struct ResolvedRun {
  QubitHamiltonian system;
  DensityMatrix rho0;
  BathSpec bath;
  TimeGrid grid;
  int kmax = 3;
  EvolveOptions evolve;
  std::string prefix;
};

/// Validates against module preconditions (missing fields, mutually
/// exclusive forms, band selection) and converts to internal units.
/// Throws ConfigError with the field name on violation.
ResolvedRun resolve(const RunConfig& config);

}  // namespace spinbath
