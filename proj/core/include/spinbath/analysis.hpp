#pragma once

#include <string>
#include <vector>

#include "spinbath/propagator.hpp"

namespace spinbath {

/// Timescale extracted by threshold crossing. When the threshold is
/// never reached, `reached` is false and `final_ratio` records how far
/// the trajectory got (ratio to the threshold reference).
struct TauResult {
  double value = 0.0;
  bool reached = false;
  double final_ratio = 0.0;
};

struct TimescaleReport {
  TauResult tau2;
  TauResult tau1;
  double equilibrium_rho11 = 0.0;  // tail average (final 20% of samples)
  double gibbs_rho11 = 0.0;        // Gibbs population of H0, for comparison
  std::string method;              // thresholds and interpolation used
};

/// First time |rho12(t)| falls to |rho12(0)|/e, linearly interpolated.
/// Throws std::invalid_argument when the initial coherence vanishes.
TauResult extract_tau2(const Trajectory& traj);

/// Tail-average equilibrium estimate: mean of Re rho11 over the final
/// 20% of samples.
double equilibrium_rho11(const Trajectory& traj);

/// First time |rho11(t) - rho11(inf)| falls to 1/e of the initial gap
/// and stays below through two periods of the Rabi frequency. Throws
/// std::invalid_argument when the initial gap is below 1e-3 (nothing to
/// relax).
TauResult extract_tau1(const Trajectory& traj);

TimescaleReport analyze(const Trajectory& traj);

enum class Model { sb, sib };

/// One propagation setting of a paper scenario.
struct ScenarioRunSpec {
  std::string label;
  Model model = Model::sb;
  double lambda_kappa = 1.0;  // SIB coupling product
  double omega0 = 10.0;       // SIB oscillator frequency
  double epsilon = 10.0;
  DensityMatrix rho0;
  int steps = 400;
};

/// Everything internal is in Delta-relative units (hbar = Delta = 1).
struct ScenarioPreset {
  std::string name;  // fig4 | fig5 | fig6
  double kondo = 0.01;
  double damping = 52.0;  // Gamma = 2.6e11 / Delta
  double beta = 3.8191;   // T = 0.01 K at Delta = 5e9 angular
  FrequencyBand band{};
  double dt = 0.5;
  int kmax = 3;
  std::vector<ScenarioRunSpec> runs;
};

/// Presets bound to the paper settings; name in {fig4, fig5, fig6}.
/// fig4: SB vs SIB (lk=1), low band. fig5: SB vs SIB lk in {1, 1.125},
/// medium band. fig6: SIB with Om0 in {10, 8, 6}, medium band. Each
/// preset carries eps=10 coherence runs and eps=1 population runs.
ScenarioPreset scenario_preset(const std::string& name);

/// Bath for one scenario run: Ohmic for SB, effective density for SIB;
/// cutoff at the band top.
BathSpec scenario_bath(const ScenarioPreset& preset, const ScenarioRunSpec& run);

struct ScenarioRunResult {
  ScenarioRunSpec spec;
  Trajectory traj;
  TimescaleReport report;
};

struct ScenarioReport {
  ScenarioPreset preset;
  std::vector<ScenarioRunResult> runs;
  std::vector<std::string> comparisons;
};

ScenarioReport scenario_run(const ScenarioPreset& preset,
                            const EvolveOptions& opts = {});

/// JSON per the report schema:
/// {scenario, runs:[{params, tau1, tau2, equilibrium_rho11, flags}],
///  comparisons:[...]}.
std::string scenario_report_json(const ScenarioReport& report);

/// Max-over-time max-norm deviation of rho between consecutive kmax
/// values (list sorted ascending), for the preset's first run.
std::vector<double> kmax_convergence(const ScenarioPreset& preset,
                                     const std::vector<int>& kmax_list,
                                     const EvolveOptions& opts = {});

}  // namespace spinbath
