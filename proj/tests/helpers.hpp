#pragma once

// Shared test-side oracles: brute-force path enumeration for the ITM
// propagator and trapezoid integrations independent of the library's
// quadrature.

#include <cmath>
#include <complex>
#include <vector>

#include "spinbath/influence.hpp"
#include "spinbath/propagator.hpp"
#include "spinbath/system.hpp"

namespace spinbath::testing {

/// Direct sum over all 4^(N+1) forward/backward spin paths, using the
/// same eta table and slice kernel as the propagator but none of its
/// tensor machinery. Returns the unnormalized rho(t_N) as 4 amplitudes
/// indexed by the final slice-state.
inline std::array<std::complex<double>, 4> path_sum(
    const QubitHamiltonian& h, const EtaTable& eta, const TimeGrid& grid,
    const DensityMatrix& rho0) {
  const int n = grid.steps;
  const Eigen::Matrix4cd t_kernel =
      forward_backward_kernel(free_propagator(h, grid.dt));

  std::array<std::complex<double>, 4> out{};
  std::vector<int> path(n + 1, 0);
  const std::size_t total = std::size_t{1} << (2 * (n + 1));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int k = 0; k <= n; ++k) {
      path[k] = static_cast<int>(c & 3);
      c >>= 2;
    }
    std::complex<double> amp = rho0(path[0] >> 1, path[0] & 1);
    for (int k = 1; k <= n; ++k) amp *= t_kernel(path[k], path[k - 1]);
    for (int k = 0; k <= n; ++k)
      for (int kp = 0; kp <= k; ++kp)
        amp *= influence_weight(eta, k, kp, path[k], path[kp]);
    out[path[n]] += amp;
  }
  return out;
}

/// Trapezoid evaluation of (1/pi) Int_band J(w)[coth cos - i sin] dw on
/// n+1 uniform nodes; independent of the adaptive quadrature.
inline std::complex<double> trapezoid_alpha(const BathSpec& bath, double t,
                                            int n) {
  const double a = bath.band.omega_min, b = bath.band.omega_max;
  const double h = (b - a) / n;
  std::complex<double> sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = a + i * h;
    std::complex<double> f = 0.0;
    if (w > 0.0) {
      const double j = evaluate_j(bath.density, w);
      f = j * std::complex<double>(coth_half(bath.beta, w) * std::cos(w * t),
                                   -std::sin(w * t));
    } else {
      // w -> 0 limit for J ~ J'(0) w: Re -> J'(0) * 2/beta, Im -> 0.
      const double jp = evaluate_j(bath.density, 1e-9) / 1e-9;
      f = std::complex<double>(jp * 2.0 / bath.beta, 0.0);
    }
    sum += (i == 0 || i == n) ? 0.5 * f : f;
  }
  return sum * h / M_PI;
}

/// Brute-force double trapezoid of eta over two windows at n x n
/// resolution. alpha depends only on t'-t'', whose values on the product
/// of two congruent uniform grids form one uniform grid; alpha is
/// evaluated once per distinct difference.
inline std::complex<double> trapezoid_eta_cross(const BathSpec& bath,
                                                const Window& wa,
                                                const Window& wb, int n,
                                                int alpha_points) {
  // Both windows are sampled with the step of wa so the differences
  // d_ij = (wa.lo + i h) - (wb.lo + j h) collapse onto the uniform grid
  // wa.lo - wb.hi + k*h even when the window lengths differ.
  const double h = (wa.hi - wa.lo) / n;
  const int nb = static_cast<int>(std::lround((wb.hi - wb.lo) / h));
  std::vector<std::complex<double>> alpha(n + nb + 1);
  for (int k = 0; k <= n + nb; ++k) {
    const double d = wa.lo - wb.hi + k * h;
    alpha[k] = trapezoid_alpha(bath, std::abs(d), alpha_points);
    if (d < 0.0) alpha[k] = std::conj(alpha[k]);
  }
  std::complex<double> sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double wi = (i == 0 || i == n) ? 0.5 : 1.0;
    for (int j = 0; j <= nb; ++j) {
      const double wj = (j == 0 || j == nb) ? 0.5 : 1.0;
      sum += wi * wj * alpha[i + (nb - j)];
    }
  }
  return sum * h * h;
}

/// Same for the diagonal entry: t'' < t' half of the square.
inline std::complex<double> trapezoid_eta_self(const BathSpec& bath,
                                               const Window& w, int n,
                                               int alpha_points) {
  const double h = (w.hi - w.lo) / n;
  std::vector<std::complex<double>> alpha(n + 1);
  for (int k = 0; k <= n; ++k)
    alpha[k] = trapezoid_alpha(bath, k * h, alpha_points);
  std::complex<double> sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double wi = (i == 0 || i == n) ? 0.5 : 1.0;
    // inner trapezoid over [w.lo, w.lo + i h]
    for (int j = 0; j <= i; ++j) {
      const double wj = (j == 0 || j == i) ? 0.5 : 1.0;
      if (i > 0) sum += wi * wj * alpha[i - j];
    }
  }
  return sum * h * h;
}

}  // namespace spinbath::testing
