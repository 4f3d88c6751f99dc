#pragma once

#include <complex>
#include <vector>

#include "spinbath/bath.hpp"
#include "spinbath/propagator.hpp"
#include "spinbath/system.hpp"
#include "spinbath/time_grid.hpp"

namespace spinbath {

/// A handful of explicitly represented bath oscillators. Realizes the
/// delta-sum spectral density J(w) = (pi/2) sum_i c_i^2/(m_i w_i)
/// delta(w - w_i); couplings enter only through w_i = c_i^2/(2 m_i w_i),
/// so masses are fixed to 1 internally.
struct DiscreteBath {
  std::vector<DiscreteModes::Mode> modes;
  int fock_cutoff = 8;  // Fock levels per mode (n_max)
};

/// Throws unless mode count <= 4 and total dimension 2*n_max^modes <= 1e4.
void validate(const DiscreteBath& bath);

/// alpha(t) = sum_i w_i [coth(beta w_i / 2) cos(w_i t) - i sin(w_i t)].
std::complex<double> discrete_alpha(const DiscreteBath& bath, double beta,
                                    double t);

/// Closed-form coherence for a pure-dephasing qubit (delta = 0):
///   rho12(t) = rho12(0) e^{-i eps t} exp[-4 D(t)],
///   D(t) = Int_0^t (t - tau) Re alpha(tau) dtau.
/// The prefactor 4 = (s+ - s-)^2 is pinned by cross-validation against
/// exact_diag_evolve (see tests).
std::complex<double> dephasing_exact(const BathSpec& bath, double epsilon,
                                     const DensityMatrix& rho0, double t,
                                     const QuadratureOptions& opts = {});
std::complex<double> dephasing_exact(const DiscreteBath& bath, double beta,
                                     double epsilon, const DensityMatrix& rho0,
                                     double t);

/// Exact propagation of qubit (x) truncated Fock spaces:
///   H = H0 + sigma_z sum_i sqrt(w_i)(b_i + b_i^dag)
///       + sum_i [w_i b_i^dag b_i + (w_i / w_i-freq) ...counterterm]
/// with the completed-square counterterm sum_i (w_i/omega_i) I. Initial
/// state rho0 (x) thermal bath at inverse temperature beta; unitary step
/// via eigendecomposition of the Hermitian H. Returns the partial trace
/// over the bath on the grid. Trace and energy conservation are checked;
/// a warning is recorded if any top Fock level carries > 1e-6 population.
Trajectory exact_diag_evolve(const QubitHamiltonian& h, const DiscreteBath& bath,
                             double beta, const DensityMatrix& rho0,
                             const TimeGrid& grid);

}  // namespace spinbath
