#pragma once

#include <Eigen/Dense>
#include <complex>

namespace spinbath {

/// H0 = (1/2)(epsilon sigma_z + delta sigma_x), hbar = 1.
/// delta = 0 is admitted for oracle cross-checks only.
struct QubitHamiltonian {
  double epsilon;
  double delta;

  double rabi_frequency() const {
    return std::sqrt(epsilon * epsilon + delta * delta);
  }
};

void validate(const QubitHamiltonian& h);

/// 2x2 density matrix in the sigma_z eigenbasis. Index 0 is the
/// sigma_z = +1 state |1>, so rho(0,0) is the +1 population rho_11 and
/// rho(0,1) the coherence rho_12.
using DensityMatrix = Eigen::Matrix2cd;

/// Hermiticity, unit trace and numerical positivity checks; throws on
/// violation.
void validate_density_matrix(const DensityMatrix& rho, double trace_tol = 1e-12,
                             double positivity_tol = 1e-8);

DensityMatrix maximal_coherent_state();
DensityMatrix ground_state();  // |0><0|, sigma_z = -1

/// Short-time system propagator K = exp(-i H0 dt), closed form:
/// K = cos(w dt/2) I - i sin(w dt/2) (eps sz + delta sx)/w, w = rabi freq.
Eigen::Matrix2cd free_propagator(const QubitHamiltonian& h, double dt);

/// Forward-backward slice kernel T[(a',b'),(a,b)] = K[a',a] conj(K[b',b]).
/// Slice-state index is 2*a + b with a, b in {0,1}. Throws if K is not
/// unitary (tolerance 1e-10).
Eigen::Matrix4cd forward_backward_kernel(const Eigen::Matrix2cd& k);

}  // namespace spinbath
