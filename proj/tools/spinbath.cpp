// Command-line front end: simulate | scenario | bathinfo | oracle-check |
// sweep. Exit codes: 0 success, 2 validation error, 3 numerical error,
// 4 memory-budget refusal, 5 oracle tolerance failure. Diagnostics go to
// stderr with the prefix "spinbath: error: <category>: ".

#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "spinbath/analysis.hpp"
#include "spinbath/config.hpp"
#include "spinbath/io.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/version.hpp"

namespace fs = std::filesystem;
using namespace spinbath;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitMemory = 4;
constexpr int kExitTolerance = 5;

void diag(const char* category, const std::string& message) {
  std::cerr << "spinbath: error: " << category << ": " << message << '\n';
}

int classify(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) ||
      dynamic_cast<const std::invalid_argument*>(&e)) {
    diag("validation", e.what());
    return kExitValidation;
  }
  if (dynamic_cast<const MemoryBudgetError*>(&e)) {
    diag("memory-budget", e.what());
    return kExitMemory;
  }
  diag("numerical", e.what());
  return kExitNumerical;
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  int threads = 1;
  std::vector<std::string> overrides;
};

RunConfig load_with_overrides(const CommonArgs& args) {
  RunConfig config =
      args.config_path.empty() ? RunConfig{} : load_config(args.config_path);
  for (const std::string& o : args.overrides) apply_override(config, o);
  return config;
}

std::map<std::string, std::string> metadata_params(const RunConfig& config) {
  std::map<std::string, std::string> params;
  std::istringstream is(serialize_config(config));
  std::string line, section;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.front() == '[') {
      section = line.substr(1, line.size() - 2);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    params[section + "." + line.substr(0, eq - 1)] = line.substr(eq + 2);
  }
  return params;
}

int cmd_simulate(const CommonArgs& args) {
  const RunConfig config = load_with_overrides(args);
  const ResolvedRun run = resolve(config);
  const Trajectory traj =
      evolve(run.system, run.bath, run.grid, run.kmax, run.rho0, run.evolve);
  const fs::path base = fs::path(args.out_dir) / run.prefix;
  write_trajectory_csv(traj, base.string() + ".csv");
  write_metadata_json(traj, metadata_params(config), base.string() + ".meta.json");
  std::cout << base.string() << ".csv\n";
  return 0;
}

int cmd_scenario(const std::string& name, const CommonArgs& args) {
  ScenarioPreset preset = scenario_preset(name);
  for (const std::string& o : args.overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override: expected key=value, got " + o);
    const std::string key = o.substr(0, eq);
    const std::string value = o.substr(eq + 1);
    if (key == "scenario.dt") preset.dt = std::stod(value);
    else if (key == "scenario.kmax") preset.kmax = std::stoi(value);
    else throw ConfigError("override: unknown scenario field " + key);
  }
  const ScenarioReport report = scenario_run(preset);
  const fs::path dir(args.out_dir);
  for (const auto& r : report.runs) {
    const fs::path base = dir / (name + "_" + r.spec.label);
    write_trajectory_csv(r.traj, base.string() + ".csv");
    const bool coherence = r.spec.label.find("rho12") != std::string::npos;
    write_column(r.traj, coherence ? "abs_rho12" : "re_rho11",
                 base.string() + ".dat");
  }
  write_text_atomic(scenario_report_json(report) + "\n",
                    dir / (name + "_report.json"));
  std::cout << (dir / (name + "_report.json")).string() << '\n';
  return 0;
}

int cmd_bathinfo(const CommonArgs& args) {
  const RunConfig config = load_with_overrides(args);
  const ResolvedRun run = resolve(config);
  const fs::path base = fs::path(args.out_dir) / run.prefix;

  std::ostringstream dens;
  dens << "omega,j\n";
  for (const DensityRow& row :
       tabulate_density(run.bath.density, run.bath.band, 512))
    dens << format_g17(row.omega) << ',' << format_g17(row.j) << '\n';
  write_text_atomic(dens.str(), base.string() + "_density.csv");

  const double t_max = 8.0;
  std::ostringstream resp;
  resp << "t,re_alpha,im_alpha\n";
  for (const ResponseRow& row :
       tabulate_response(run.bath, t_max, 257, run.evolve.eta.quad))
    resp << format_g17(row.t) << ',' << format_g17(row.re) << ','
         << format_g17(row.im) << '\n';
  write_text_atomic(resp.str(), base.string() + "_response.csv");

  const MemoryTimeResult mt =
      memory_time(run.bath, 0.1, 50.0, 0.05, run.evolve.eta.quad);
  std::cout << "memory_time = " << format_g17(mt.time)
            << (mt.converged ? "" : " (not converged by scan horizon)") << '\n'
            << base.string() << "_density.csv\n"
            << base.string() << "_response.csv\n";
  return 0;
}

int cmd_oracle_check(const CommonArgs& args) {
  const double beta = 3.8191;
  bool all_pass = true;
  nlohmann::json report;
  report["checks"] = nlohmann::json::array();
  const auto record = [&](const char* name, double dev, double tol) {
    const bool pass = dev <= tol;
    all_pass = all_pass && pass;
    report["checks"].push_back({{"name", name},
                                {"max_deviation", dev},
                                {"tolerance", tol},
                                {"pass", pass}});
    std::cout << (pass ? "pass" : "FAIL") << "  " << name
              << "  max_dev=" << dev << "  tol=" << tol << '\n';
  };

  // Zero coupling: exact diagonalization must reduce to free Rabi.
  {
    const QubitHamiltonian h{0.0, 1.0};
    const DiscreteBath bath{{{1.0, 0.0}}, 6};
    const TimeGrid grid{0.1, 60};
    const Trajectory exact = exact_diag_evolve(h, bath, beta, ground_state(), grid);
    const Eigen::Matrix2cd k = free_propagator(h, grid.dt);
    DensityMatrix rho = ground_state();
    double dev = 0.0;
    for (int i = 1; i <= grid.steps; ++i) {
      rho = (k * rho * k.adjoint()).eval();
      dev = std::max(dev, (rho - exact.states[i]).cwiseAbs().maxCoeff());
    }
    record("zero_coupling_free_rabi", dev, 1e-10);
  }

  // Pure dephasing, one mode: analytic formula vs exact diagonalization.
  {
    const QubitHamiltonian h{1.0, 0.0};
    const DiscreteBath bath{{{1.0, 0.01}}, 30};
    const TimeGrid grid{0.05, 100};  // t <= 5/omega_1
    const Trajectory exact =
        exact_diag_evolve(h, bath, beta, maximal_coherent_state(), grid);
    double dev = 0.0;
    for (int i = 0; i <= grid.steps; ++i) {
      const std::complex<double> ref = dephasing_exact(
          bath, beta, h.epsilon, maximal_coherent_state(), grid.dt * i);
      dev = std::max(dev, std::abs(exact.states[i](0, 1) - ref) / std::abs(ref));
    }
    record("single_mode_dephasing_cross_oracle", dev, 1e-3);
  }

  // Headline: 3-mode weak coupling, full-memory QUAPI vs exact diag.
  {
    const QubitHamiltonian h{1.0, 1.0};
    const DiscreteBath dbath{{{0.8, 0.004}, {1.7, 0.006}, {2.9, 0.005}}, 8};
    const TimeGrid grid{0.5, 8};  // t <= 4/Delta
    const Trajectory exact =
        exact_diag_evolve(h, dbath, beta, maximal_coherent_state(), grid);
    const BathSpec bath{DiscreteModes{{{0.8, 0.004}, {1.7, 0.006}, {2.9, 0.005}}},
                        FrequencyBand{0.0, 3.0}, beta};
    const Trajectory quapi = evolve(h, bath, grid, grid.steps,
                                    maximal_coherent_state());
    double dev = 0.0;
    for (int i = 0; i <= grid.steps; ++i)
      dev = std::max(dev,
                     (quapi.states[i] - exact.states[i]).cwiseAbs().maxCoeff());
    record("three_mode_quapi_vs_exact_diag", dev, 5e-2);
  }

  report["pass"] = all_pass;
  write_text_atomic(report.dump(2) + "\n",
                    fs::path(args.out_dir) / "oracle_report.json");
  if (!all_pass) {
    diag("tolerance", "oracle cross-check exceeded tolerance");
    return kExitTolerance;
  }
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  const RunConfig base = load_with_overrides(args);
  if (!base.sweep_param1 || base.sweep_values1.empty())
    throw ConfigError("sweep: sweep.param1 and sweep.values1 are required");
  const bool two = base.sweep_param2.has_value();
  if (two && base.sweep_values2.empty())
    throw ConfigError("sweep: sweep.values2 required with sweep.param2");

  struct Point {
    double v1 = 0.0, v2 = 0.0;
    TimescaleReport report;
    std::string status = "ok";
  };
  std::vector<Point> points;
  for (double v1 : base.sweep_values1) {
    if (two)
      for (double v2 : base.sweep_values2) points.push_back({v1, v2});
    else
      points.push_back({v1});
  }

  std::atomic<std::size_t> next{0};
  bool any_failed = false;
  std::mutex fail_mutex;
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      Point& p = points[i];
      try {
        RunConfig c = base;
        std::ostringstream o1;
        o1.precision(17);
        o1 << *base.sweep_param1 << '=' << p.v1;
        apply_override(c, o1.str());
        if (two) {
          std::ostringstream o2;
          o2.precision(17);
          o2 << *base.sweep_param2 << '=' << p.v2;
          apply_override(c, o2.str());
        }
        const ResolvedRun run = resolve(c);
        const Trajectory traj = evolve(run.system, run.bath, run.grid,
                                       run.kmax, run.rho0, run.evolve);
        p.report = analyze(traj);
      } catch (const std::exception& e) {
        p.status = e.what();
        const std::lock_guard<std::mutex> lock(fail_mutex);
        any_failed = true;
      }
    }
  };
  const int n_threads =
      std::max(1, std::min<int>(args.threads, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream os;
  os << *base.sweep_param1;
  if (two) os << ',' << *base.sweep_param2;
  os << ",tau2,tau1,equilibrium_rho11,status\n";
  for (const Point& p : points) {
    os << format_g17(p.v1);
    if (two) os << ',' << format_g17(p.v2);
    if (p.status == "ok") {
      os << ',' << (p.report.tau2.reached ? format_g17(p.report.tau2.value) : "nan")
         << ',' << (p.report.tau1.reached ? format_g17(p.report.tau1.value) : "nan")
         << ',' << format_g17(p.report.equilibrium_rho11) << ",ok\n";
    } else {
      std::string status = p.status;
      for (char& ch : status)
        if (ch == ',' || ch == '\n') ch = ';';
      os << ",nan,nan,nan," << status << '\n';
    }
  }
  const fs::path out = fs::path(args.out_dir) / (base.prefix + "_sweep.csv");
  write_text_atomic(os.str(), out);
  std::cout << out.string() << '\n';
  if (any_failed) {
    diag("numerical", "one or more sweep points failed; see status column");
    return kExitNumerical;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerically exact qubit-bath dynamics (QUAPI)"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  CommonArgs args;
  std::string scenario_name;
  const auto add_common = [&args](CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", args.config_path, "config file");
    if (config_required) opt->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--threads", args.threads, "worker threads")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--override", args.overrides,
                    "section.key=value override (repeatable)");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "run one propagation");
  add_common(simulate, true);
  CLI::App* scenario = app.add_subcommand("scenario", "run a paper scenario");
  scenario->add_option("name", scenario_name, "fig4 | fig5 | fig6")->required();
  add_common(scenario, false);
  CLI::App* bathinfo = app.add_subcommand("bathinfo", "tabulate J and alpha");
  add_common(bathinfo, true);
  CLI::App* oracle = app.add_subcommand("oracle-check", "cross-validate oracles");
  add_common(oracle, false);
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep");
  add_common(sweep, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(args);
    if (scenario->parsed()) return cmd_scenario(scenario_name, args);
    if (bathinfo->parsed()) return cmd_bathinfo(args);
    if (oracle->parsed()) return cmd_oracle_check(args);
    if (sweep->parsed()) return cmd_sweep(args);
  } catch (const std::exception& e) {
    return classify(e);
  }
  return kExitValidation;
}
