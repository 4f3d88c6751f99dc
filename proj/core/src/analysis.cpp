#include "spinbath/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace spinbath {

namespace {

constexpr double kInvE = 0.36787944117144233;

double interp_crossing(double t0, double r0, double t1, double r1,
                       double threshold) {
  return t0 + (threshold - r0) / (r1 - r0) * (t1 - t0);
}

}  // namespace

TauResult extract_tau2(const Trajectory& traj) {
  if (traj.states.empty())
    throw std::invalid_argument("extract_tau2: empty trajectory");
  const double c0 = std::abs(traj.states.front()(0, 1));
  if (c0 <= 0.0)
    throw std::invalid_argument("extract_tau2: zero initial coherence");

  TauResult res;
  double prev = 1.0;
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    const double r = std::abs(traj.states[k](0, 1)) / c0;
    if (prev > kInvE && r <= kInvE) {
      res.value = interp_crossing(traj.time(static_cast<int>(k) - 1), prev,
                                  traj.time(static_cast<int>(k)), r, kInvE);
      res.reached = true;
      res.final_ratio = r;
      return res;
    }
    prev = r;
  }
  res.final_ratio = prev;
  return res;
}

double equilibrium_rho11(const Trajectory& traj) {
  const std::size_t n = traj.states.size();
  if (n < 5)
    throw std::invalid_argument("equilibrium_rho11: trajectory too short");
  const std::size_t start = n - std::max<std::size_t>(1, n / 5);
  double sum = 0.0;
  for (std::size_t k = start; k < n; ++k) sum += traj.states[k](0, 0).real();
  return sum / static_cast<double>(n - start);
}

TauResult extract_tau1(const Trajectory& traj) {
  const double eq = equilibrium_rho11(traj);
  const double gap0 = std::abs(traj.states.front()(0, 0).real() - eq);
  if (gap0 < 1e-3)
    throw std::invalid_argument(
        "extract_tau1: initial population already at equilibrium (gap < 1e-3)");
  const double threshold = gap0 * kInvE;

  // Crossings must persist through two Rabi periods so the eps = Delta
  // oscillation does not alias the answer.
  const double omega = traj.system.rabi_frequency();
  const double guard =
      omega > 0.0 ? 2.0 * (2.0 * M_PI / omega) : 0.0;
  const int guard_steps =
      static_cast<int>(std::ceil(guard / traj.grid.dt));

  const auto dev = [&](std::size_t k) {
    return std::abs(traj.states[k](0, 0).real() - eq);
  };

  TauResult res;
  const std::size_t n = traj.states.size();
  for (std::size_t k = 1; k < n; ++k) {
    if (dev(k - 1) > threshold && dev(k) <= threshold) {
      bool persistent = true;
      const std::size_t limit =
          std::min(n, k + static_cast<std::size_t>(guard_steps) + 1);
      for (std::size_t j = k + 1; j < limit; ++j)
        if (dev(j) > threshold) {
          persistent = false;
          break;
        }
      if (!persistent) continue;
      res.value = interp_crossing(traj.time(static_cast<int>(k) - 1), dev(k - 1),
                                  traj.time(static_cast<int>(k)), dev(k),
                                  threshold);
      res.reached = true;
      res.final_ratio = dev(n - 1) / gap0;
      return res;
    }
  }
  res.final_ratio = dev(n - 1) / gap0;
  return res;
}

namespace {

double gibbs_rho11(const QubitHamiltonian& h, double beta) {
  const double omega = h.rabi_frequency();
  if (omega == 0.0) return 0.5;
  const double c = h.epsilon / omega;  // <1|P_+|1> = (1+c)/2
  const double zp = std::exp(-0.5 * beta * omega);
  const double zm = std::exp(0.5 * beta * omega);
  return (zp * 0.5 * (1.0 + c) + zm * 0.5 * (1.0 - c)) / (zp + zm);
}

}  // namespace

TimescaleReport analyze(const Trajectory& traj) {
  TimescaleReport rep;
  try {
    rep.tau2 = extract_tau2(traj);
  } catch (const std::invalid_argument&) {
    rep.tau2 = TauResult{};  // undefined: zero initial coherence
  }
  rep.equilibrium_rho11 = equilibrium_rho11(traj);
  if (rep.equilibrium_rho11 < -1e-6 || rep.equilibrium_rho11 > 1.0 + 1e-6)
    throw std::runtime_error("analyze: equilibrium rho11 outside [0,1]");
  try {
    rep.tau1 = extract_tau1(traj);
  } catch (const std::invalid_argument&) {
    rep.tau1 = TauResult{};
  }
  rep.method =
      "tau2: first 1/e crossing of |rho12|/|rho12(0)|, linear interpolation; "
      "tau1: first 1/e approach of rho11 to the final-20% tail average, "
      "persistent through two Rabi periods";
  return rep;
}

ScenarioPreset scenario_preset(const std::string& name) {
  ScenarioPreset p;
  p.name = name;
  const BandPresets bands = band_presets(1.0);
  const DensityMatrix coh = maximal_coherent_state();
  DensityMatrix pop = DensityMatrix::Zero();
  pop(0, 0) = 1.0;  // sigma_z = +1 state |1>

  const auto add = [&p](std::string label, Model model, double lk, double om0,
                        double eps, const DensityMatrix& rho0, int steps) {
    p.runs.push_back({std::move(label), model, lk, om0, eps, rho0, steps});
  };

  if (name == "fig4") {
    p.band = bands.low;
    add("sb_rho12", Model::sb, 1.0, 10.0, 10.0, coh, 4000);
    add("sib_rho12", Model::sib, 1.0, 10.0, 10.0, coh, 4000);
    add("sb_rho11", Model::sb, 1.0, 10.0, 1.0, pop, 8000);
    add("sib_rho11", Model::sib, 1.0, 10.0, 1.0, pop, 8000);
  } else if (name == "fig5") {
    p.band = bands.medium;
    add("sb_rho12", Model::sb, 1.0, 10.0, 10.0, coh, 400);
    add("sib_lk1_rho12", Model::sib, 1.0, 10.0, 10.0, coh, 400);
    add("sib_lk1.125_rho12", Model::sib, 1.125, 10.0, 10.0, coh, 400);
    add("sb_rho11", Model::sb, 1.0, 10.0, 1.0, pop, 1200);
    add("sib_lk1_rho11", Model::sib, 1.0, 10.0, 1.0, pop, 1200);
    add("sib_lk1.125_rho11", Model::sib, 1.125, 10.0, 1.0, pop, 1200);
  } else if (name == "fig6") {
    p.band = bands.medium;
    for (double om0 : {10.0, 8.0, 6.0}) {
      const std::string tag = std::to_string(static_cast<int>(om0));
      add("sib_om" + tag + "_rho12", Model::sib, 1.0, om0, 10.0, coh, 600);
      add("sib_om" + tag + "_rho11", Model::sib, 1.0, om0, 1.0, pop, 3000);
    }
  } else {
    throw std::invalid_argument("scenario_preset: unknown scenario " + name);
  }
  return p;
}

BathSpec scenario_bath(const ScenarioPreset& preset, const ScenarioRunSpec& run) {
  BathSpec bath;
  bath.band = preset.band;
  bath.beta = preset.beta;
  if (run.model == Model::sb) {
    bath.density = OhmicDensity{preset.kondo, preset.band.omega_max};
  } else {
    bath.density = EffectiveDensity{run.lambda_kappa, preset.kondo, run.omega0,
                                    preset.damping, preset.band.omega_max};
  }
  return bath;
}

ScenarioReport scenario_run(const ScenarioPreset& preset,
                            const EvolveOptions& opts) {
  ScenarioReport report;
  report.preset = preset;
  for (const ScenarioRunSpec& run : preset.runs) {
    const QubitHamiltonian h{run.epsilon, 1.0};
    const BathSpec bath = scenario_bath(preset, run);
    const TimeGrid grid{preset.dt, run.steps};
    ScenarioRunResult res{run,
                          evolve(h, bath, grid, preset.kmax, run.rho0, opts),
                          {}};
    res.report = analyze(res.traj);
    report.runs.push_back(std::move(res));
  }

  const auto find = [&report](const std::string& label) -> const ScenarioRunResult* {
    for (const auto& r : report.runs)
      if (r.spec.label == label) return &r;
    return nullptr;
  };
  const auto compare = [&](const std::string& a, const std::string& b,
                           const char* what, auto getter) {
    const ScenarioRunResult* ra = find(a);
    const ScenarioRunResult* rb = find(b);
    if (!ra || !rb) return;
    std::ostringstream os;
    os << what << ": " << a << " = " << getter(*ra) << ", " << b << " = "
       << getter(*rb);
    report.comparisons.push_back(os.str());
  };
  const auto tau2 = [](const ScenarioRunResult& r) { return r.report.tau2.value; };
  const auto tau1 = [](const ScenarioRunResult& r) { return r.report.tau1.value; };
  if (preset.name == "fig4" || preset.name == "fig5") {
    compare("sb_rho12", preset.name == "fig4" ? "sib_rho12" : "sib_lk1_rho12",
            "tau2", tau2);
    compare("sb_rho11", preset.name == "fig4" ? "sib_rho11" : "sib_lk1_rho11",
            "tau1", tau1);
  }
  if (preset.name == "fig5")
    compare("sb_rho12", "sib_lk1.125_rho12", "tau2", tau2);
  return report;
}

std::string scenario_report_json(const ScenarioReport& report) {
  nlohmann::json j;
  j["scenario"] = report.preset.name;
  j["params"] = {{"kondo", report.preset.kondo},
                 {"damping", report.preset.damping},
                 {"beta", report.preset.beta},
                 {"band", {report.preset.band.omega_min, report.preset.band.omega_max}},
                 {"dt", report.preset.dt},
                 {"kmax", report.preset.kmax}};
  j["runs"] = nlohmann::json::array();
  for (const auto& r : report.runs) {
    nlohmann::json rj;
    rj["params"] = {{"label", r.spec.label},
                    {"model", r.spec.model == Model::sb ? "sb" : "sib"},
                    {"lambda_kappa", r.spec.lambda_kappa},
                    {"omega0", r.spec.omega0},
                    {"epsilon", r.spec.epsilon},
                    {"steps", r.spec.steps}};
    rj["tau2"] = r.report.tau2.reached ? nlohmann::json(r.report.tau2.value)
                                       : nlohmann::json(nullptr);
    rj["tau1"] = r.report.tau1.reached ? nlohmann::json(r.report.tau1.value)
                                       : nlohmann::json(nullptr);
    rj["equilibrium_rho11"] = r.report.equilibrium_rho11;
    nlohmann::json flags = nlohmann::json::array();
    if (!r.report.tau2.reached) flags.push_back("tau2_not_reached");
    if (!r.report.tau1.reached) flags.push_back("tau1_not_reached");
    for (const auto& w : r.traj.warnings) flags.push_back(w);
    rj["flags"] = flags;
    j["runs"].push_back(rj);
  }
  j["comparisons"] = report.comparisons;
  return j.dump(2);
}

std::vector<double> kmax_convergence(const ScenarioPreset& preset,
                                     const std::vector<int>& kmax_list,
                                     const EvolveOptions& opts) {
  if (kmax_list.size() < 2)
    throw std::invalid_argument("kmax_convergence: need at least two kmax values");
  if (!std::is_sorted(kmax_list.begin(), kmax_list.end()))
    throw std::invalid_argument("kmax_convergence: list must be ascending");
  if (preset.runs.empty())
    throw std::invalid_argument("kmax_convergence: preset has no runs");

  const ScenarioRunSpec& run = preset.runs.front();
  const QubitHamiltonian h{run.epsilon, 1.0};
  const BathSpec bath = scenario_bath(preset, run);
  const TimeGrid grid{preset.dt, run.steps};

  std::vector<Trajectory> trajs;
  trajs.reserve(kmax_list.size());
  for (int kmax : kmax_list)
    trajs.push_back(evolve(h, bath, grid, kmax, run.rho0, opts));

  std::vector<double> deviations;
  for (std::size_t i = 1; i < trajs.size(); ++i) {
    double dev = 0.0;
    for (std::size_t k = 0; k < trajs[i].states.size(); ++k)
      dev = std::max(dev, (trajs[i].states[k] - trajs[i - 1].states[k])
                              .cwiseAbs()
                              .maxCoeff());
    deviations.push_back(dev);
  }
  return deviations;
}

}  // namespace spinbath
