#include <benchmark/benchmark.h>

#include "spinbath/influence.hpp"
#include "spinbath/propagator.hpp"

using namespace spinbath;

namespace {

constexpr double kBeta = 3.8191;

BathSpec medium_bath() {
  const BandPresets p = band_presets(1.0);
  return {OhmicDensity{0.01, p.medium.omega_max}, p.medium, kBeta};
}

EtaOptions quiet_eta() {
  EtaOptions opts;
  opts.check_memory = false;
  return opts;
}

void BM_response_function(benchmark::State& state) {
  const BathSpec bath = medium_bath();
  double t = 0.0;
  for (auto _ : state) {
    t += 0.1;
    if (t > 10.0) t = 0.1;
    benchmark::DoNotOptimize(response_function(bath, t));
  }
}
BENCHMARK(BM_response_function)->Unit(benchmark::kMicrosecond);

void BM_eta_table(benchmark::State& state) {
  const BathSpec bath = medium_bath();
  const int kmax = static_cast<int>(state.range(0));
  const TimeGrid grid{0.5, 40};
  for (auto _ : state)
    benchmark::DoNotOptimize(eta_coefficients(bath, grid, kmax, quiet_eta()));
}
BENCHMARK(BM_eta_table)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_evolve(benchmark::State& state) {
  const BathSpec bath = medium_bath();
  const int kmax = static_cast<int>(state.range(0));
  const TimeGrid grid{0.5, 40};
  const QubitHamiltonian h{10.0, 1.0};
  EvolveOptions opts;
  opts.eta.check_memory = false;
  const EtaTable eta = eta_coefficients(bath, grid, kmax, opts.eta);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        evolve_with_table(h, eta, grid, maximal_coherent_state(), opts));
  state.SetComplexityN(kmax);
}
BENCHMARK(BM_evolve)->Arg(3)->Arg(5)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
