#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spinbath/influence.hpp"
#include "spinbath/system.hpp"
#include "spinbath/time_grid.hpp"

namespace spinbath {

class MemoryBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Time series of reduced density matrices at t_k = k dt, k = 0..N.
struct Trajectory {
  TimeGrid grid;
  QubitHamiltonian system;
  int kmax = 0;
  std::vector<DensityMatrix> states;      // N+1 entries
  std::vector<double> trace_drift;        // pre-normalization |tr - 1| per step
  std::vector<std::string> warnings;

  double time(int k) const { return grid.dt * k; }
};

/// Influence weight linking slice-states at steps k and k' (k' <= k):
///   exp[ -(s+_k - s-_k) (eta_{kk'} s+_{k'} - conj(eta_{kk'}) s-_{k'}) ]
/// Slice-state encoding: index 2a+b, spin s = 1 - 2a (forward) / 1 - 2b
/// (backward).
std::complex<double> influence_weight(const EtaTable& eta, int k, int kp,
                                      int slice_k, int slice_kp);

struct EvolveOptions {
  std::size_t memory_budget_bytes = 0;  // 0: use default_memory_budget()
  EtaOptions eta;
};

/// Default augmented-tensor budget: SPINBATH_MEMORY_BUDGET env var
/// (bytes) if set, otherwise 2 GiB.
std::size_t default_memory_budget();

/// Iterative tensor multiplication over forward/backward spin paths with
/// memory span kmax. Factorized initial condition: rho0 x thermal bath.
/// Memory cost 2*4^kmax complex values, time cost O(N * 4^(kmax+1)).
Trajectory evolve(const QubitHamiltonian& h, const BathSpec& bath,
                  const TimeGrid& grid, int kmax, const DensityMatrix& rho0,
                  const EvolveOptions& opts = {});

/// Same propagation with a prebuilt coefficient table (the table's grid
/// spacing must match).
Trajectory evolve_with_table(const QubitHamiltonian& h, const EtaTable& eta,
                             const TimeGrid& grid, const DensityMatrix& rho0,
                             const EvolveOptions& opts = {});

}  // namespace spinbath
