// Acceptance gate: one line per criterion, PASS/FAIL, exit 0 only if all
// pass. Runs the full physics pipeline, so expect a few minutes.

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "spinbath/analysis.hpp"
#include "spinbath/io.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/propagator.hpp"

using namespace spinbath;

namespace {

constexpr double kBeta = 3.8191;
int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

EvolveOptions quiet() {
  EvolveOptions opts;
  opts.eta.check_memory = false;
  return opts;
}

BathSpec ohmic_bath(const FrequencyBand& band, double xi = 0.01) {
  return {OhmicDensity{xi, band.omega_max}, band, kBeta};
}

BathSpec effective_bath(const FrequencyBand& band, double lk = 1.0,
                        double om0 = 10.0) {
  return {EffectiveDensity{lk, 0.01, om0, 52.0, band.omega_max}, band, kBeta};
}

// 1. Free-evolution exactness.
void criterion_1() {
  const Trajectory traj =
      evolve({0.0, 1.0}, ohmic_bath(band_presets(1.0).medium, 0.0),
             TimeGrid{0.5, 40}, 3, ground_state(), quiet());
  double dev = 0.0;
  for (int k = 0; k <= 40; ++k) {
    const double t = 0.5 * k;
    dev = std::max(dev, std::abs(traj.states[k](0, 0).real() -
                                 std::sin(0.5 * t) * std::sin(0.5 * t)));
  }
  report(1, dev < 1e-10,
         "free evolution rho11 = sin^2(Delta t/2) (max dev " + fmt(dev) + ")");
}

// 2. Brute-force path-sum equivalence at N = 8, kmax = N.
void criterion_2() {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.002, 0.02);
  const BathSpec bath = ohmic_bath(band_presets(1.0).medium, u(rng));
  const TimeGrid grid{0.5, 8};
  const QubitHamiltonian h{1.0, 1.0};
  EvolveOptions opts = quiet();
  const EtaTable eta = eta_coefficients(bath, grid, 8, opts.eta);
  const Trajectory traj =
      evolve_with_table(h, eta, grid, maximal_coherent_state(), opts);
  const auto brute =
      testing::path_sum(h, eta, grid, maximal_coherent_state());
  const std::complex<double> tr = brute[0] + brute[3];
  DensityMatrix ref;
  ref << brute[0] / tr, brute[1] / tr, brute[2] / tr, brute[3] / tr;
  const double dev = (traj.states[8] - ref).cwiseAbs().maxCoeff();
  report(2, dev < 1e-10,
         "ITM equals 4^N path enumeration at N=8 (max dev " + fmt(dev) + ")");
}

// 3. Cross-oracle: analytic dephasing vs exact diagonalization.
void criterion_3() {
  const QubitHamiltonian h{1.0, 0.0};
  const DiscreteBath bath{{{1.0, 0.01}}, 30};
  const TimeGrid grid{0.05, 100};
  const Trajectory exact =
      exact_diag_evolve(h, bath, kBeta, maximal_coherent_state(), grid);
  double dev = 0.0;
  for (int i = 0; i <= grid.steps; ++i) {
    const std::complex<double> ref = dephasing_exact(
        bath, kBeta, h.epsilon, maximal_coherent_state(), grid.dt * i);
    dev = std::max(dev, std::abs(exact.states[i](0, 1) - ref) / std::abs(ref));
  }
  report(3, dev < 1e-3,
         "dephasing formula vs exact diagonalization (max rel dev " + fmt(dev) +
             ")");
}

// 4. Headline oracle: 3-mode weak coupling, full-memory QUAPI.
void criterion_4() {
  const QubitHamiltonian h{1.0, 1.0};
  const std::vector<DiscreteModes::Mode> modes{
      {0.8, 0.004}, {1.7, 0.006}, {2.9, 0.005}};
  const DiscreteBath dbath{modes, 8};
  const TimeGrid grid{0.5, 8};  // t <= 4
  const Trajectory exact =
      exact_diag_evolve(h, dbath, kBeta, maximal_coherent_state(), grid);
  const BathSpec bath{DiscreteModes{modes}, FrequencyBand{0.0, 3.0}, kBeta};
  const Trajectory quapi =
      evolve(h, bath, grid, grid.steps, maximal_coherent_state(), quiet());
  double dev = 0.0;
  for (int i = 0; i <= grid.steps; ++i)
    dev = std::max(dev,
                   (quapi.states[i] - exact.states[i]).cwiseAbs().maxCoeff());
  report(4, dev < 5e-2,
         "full-memory QUAPI vs exact diagonalization, 3 modes (max dev " +
             fmt(dev) + ")");
}

// 5. kmax = 3 vs 4 deviation < 0.02 at paper parameters.
void criterion_5() {
  const BandPresets bands = band_presets(1.0);
  const QubitHamiltonian h{10.0, 1.0};
  const TimeGrid grid{0.5, 20};  // t <= 10
  double worst = 0.0;
  for (const FrequencyBand& band : {bands.low, bands.medium})
    for (int model = 0; model < 2; ++model) {
      const BathSpec bath =
          model == 0 ? ohmic_bath(band) : effective_bath(band);
      const Trajectory t3 =
          evolve(h, bath, grid, 3, maximal_coherent_state(), quiet());
      const Trajectory t4 =
          evolve(h, bath, grid, 4, maximal_coherent_state(), quiet());
      for (int k = 0; k <= grid.steps; ++k)
        worst = std::max(worst, (t3.states[k] - t4.states[k])
                                    .cwiseAbs()
                                    .maxCoeff());
    }
  report(5, worst < 0.02,
         "kmax 3 vs 4 converged at paper parameters (max dev " + fmt(worst) +
             ")");
}

// 6. Memory time within [0.5, 3]/Delta for the four Fig. 3 configurations.
void criterion_6() {
  const BandPresets bands = band_presets(1.0);
  bool all = true;
  std::string detail;
  for (const FrequencyBand& band : {bands.low, bands.medium})
    for (int model = 0; model < 2; ++model) {
      const BathSpec bath =
          model == 0 ? ohmic_bath(band) : effective_bath(band);
      const MemoryTimeResult mt = memory_time(bath, 0.1, 60.0, 0.05);
      const bool ok = mt.converged && mt.time >= 0.5 && mt.time <= 3.0;
      all = all && ok;
      detail += std::string(model == 0 ? " ohmic" : " effective") +
                (band.omega_max < 1.0 ? "/low=" : "/medium=") + fmt(mt.time);
    }
  report(6, all, "memory time in [0.5, 3]/Delta for Fig. 3 configs:" + detail);
}

struct TauPair {
  double tau2 = 0.0, tau1 = 0.0, eq = 0.0;
};

TauPair timescales(const BathSpec& bath, int steps12, int steps11) {
  DensityMatrix pop = DensityMatrix::Zero();
  pop(0, 0) = 1.0;
  TauPair out;
  const Trajectory c = evolve({10.0, 1.0}, bath, TimeGrid{0.5, steps12}, 3,
                              maximal_coherent_state(), quiet());
  out.tau2 = extract_tau2(c).value;
  const Trajectory p =
      evolve({1.0, 1.0}, bath, TimeGrid{0.5, steps11}, 3, pop, quiet());
  out.tau1 = extract_tau1(p).value;
  out.eq = equilibrium_rho11(p);
  return out;
}

// 7. Fig. 4: SB and SIB nearly coincide in the low band.
void criterion_7() {
  const BandPresets bands = band_presets(1.0);
  const TauPair sb = timescales(ohmic_bath(bands.low), 4000, 8000);
  const TauPair sib = timescales(effective_bath(bands.low), 4000, 8000);
  const double d2 = std::abs(sb.tau2 - sib.tau2) / sb.tau2;
  const double d1 = std::abs(sb.tau1 - sib.tau1) / sb.tau1;
  report(7, d2 <= 0.15 && d1 <= 0.15,
         "low band SB ~ SIB: tau2 " + fmt(sb.tau2) + " vs " + fmt(sib.tau2) +
             ", tau1 " + fmt(sb.tau1) + " vs " + fmt(sib.tau1));
}

// 8. Fig. 5 ordering claims in the medium band.
void criterion_8() {
  const BandPresets bands = band_presets(1.0);
  const TauPair sb = timescales(ohmic_bath(bands.medium), 400, 1200);
  const TauPair sib1 = timescales(effective_bath(bands.medium, 1.0), 400, 1200);
  const TauPair sib1125 =
      timescales(effective_bath(bands.medium, 1.125), 400, 1200);

  const bool c_tau2 = sib1.tau2 > sb.tau2;
  const bool c_tau1 = sib1.tau1 > sb.tau1;
  const bool c_close =
      std::abs(sib1125.tau2 - sb.tau2) <= 0.20 * sb.tau2;
  const bool c_eq = sib1125.eq > sb.eq;
  report(8, c_tau2 && c_tau1 && c_close && c_eq,
         std::string("fig5: tau2(SIB,1)>tau2(SB) ") + (c_tau2 ? "ok" : "VIOLATED") +
             " [" + fmt(sib1.tau2) + ">" + fmt(sb.tau2) + "]; tau1 " +
             (c_tau1 ? "ok" : "VIOLATED") + " [" + fmt(sib1.tau1) + ">" +
             fmt(sb.tau1) + "]; tau2(SIB,1.125)~tau2(SB) " +
             (c_close ? "ok" : "VIOLATED") + " [" + fmt(sib1125.tau2) + " vs " +
             fmt(sb.tau2) + "]; eq(SIB,1.125)>eq(SB) " +
             (c_eq ? "ok" : "VIOLATED") + " [" + fmt(sib1125.eq) + " vs " +
             fmt(sb.eq) + "]");
}

// 9. Fig. 6: tau2 and tau1 strictly increase as Om0 decreases.
void criterion_9() {
  const BandPresets bands = band_presets(1.0);
  std::vector<TauPair> family;
  for (double om0 : {10.0, 8.0, 6.0})
    family.push_back(
        timescales(effective_bath(bands.medium, 1.0, om0), 600, 3000));
  const bool ok2 = family[0].tau2 < family[1].tau2 &&
                   family[1].tau2 < family[2].tau2;
  const bool ok1 = family[0].tau1 < family[1].tau1 &&
                   family[1].tau1 < family[2].tau1;
  report(9, ok2 && ok1,
         "fig6 Om0 {10,8,6}: tau2 {" + fmt(family[0].tau2) + "," +
             fmt(family[1].tau2) + "," + fmt(family[2].tau2) + "}, tau1 {" +
             fmt(family[0].tau1) + "," + fmt(family[1].tau1) + "," +
             fmt(family[2].tau1) + "}");
}

// 10. Invariant suite.
void criterion_10() {
  const BandPresets bands = band_presets(1.0);
  const BathSpec bath = ohmic_bath(bands.medium);
  bool ok = true;
  std::string detail;

  // trace drift, hermiticity, positivity along a paper-parameter run
  const Trajectory traj = evolve({1.0, 1.0}, bath, TimeGrid{0.5, 60}, 3,
                                 maximal_coherent_state(), quiet());
  for (std::size_t k = 0; k < traj.states.size() && ok; ++k) {
    if (traj.trace_drift[k] >= 1e-3) { ok = false; detail = "trace drift"; }
    if ((traj.states[k] - traj.states[k].adjoint()).cwiseAbs().maxCoeff() >=
        1e-10) { ok = false; detail = "hermiticity"; }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(traj.states[k]);
    if (es.eigenvalues().minCoeff() < -1e-8) { ok = false; detail = "positivity"; }
  }

  // eta linearity in xi and interior stationarity
  EvolveOptions opts = quiet();
  const TimeGrid grid{0.5, 6};
  const EtaTable e1 =
      eta_coefficients(ohmic_bath(bands.medium, 0.01), grid, 3, opts.eta);
  const EtaTable e2 =
      eta_coefficients(ohmic_bath(bands.medium, 0.02), grid, 3, opts.eta);
  for (int k = 0; k <= 6 && ok; ++k)
    for (int kp = std::max(0, k - 3); kp <= k; ++kp)
      if (std::abs(e2.entry(k, kp) - 2.0 * e1.entry(k, kp)) > 1e-12) {
        ok = false;
        detail = "eta linearity";
      }
  if (ok && e1.entry(4, 2) != e1.entry(5, 3)) {
    ok = false;
    detail = "eta stationarity";
  }

  // deterministic reproducibility: bit-identical CSV
  const Trajectory again = evolve({1.0, 1.0}, bath, TimeGrid{0.5, 60}, 3,
                                  maximal_coherent_state(), quiet());
  if (ok && trajectory_csv(traj) != trajectory_csv(again)) {
    ok = false;
    detail = "determinism";
  }

  report(10, ok,
         ok ? "invariant suite (trace, hermiticity, positivity, eta "
              "linearity/stationarity, determinism)"
            : "invariant suite violated: " + detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d/10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
