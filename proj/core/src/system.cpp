#include "spinbath/system.hpp"

#include <stdexcept>

namespace spinbath {

void validate(const QubitHamiltonian& h) {
  if (!(h.delta >= 0.0))
    throw std::invalid_argument("QubitHamiltonian: delta must be >= 0");
  if (!std::isfinite(h.epsilon) || !std::isfinite(h.delta))
    throw std::invalid_argument("QubitHamiltonian: parameters must be finite");
}

void validate_density_matrix(const DensityMatrix& rho, double trace_tol,
                             double positivity_tol) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > trace_tol ||
      std::abs(rho.trace().imag()) > trace_tol)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
  if (es.eigenvalues().minCoeff() < -positivity_tol)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

DensityMatrix maximal_coherent_state() {
  DensityMatrix rho;
  rho << 0.5, 0.5, 0.5, 0.5;
  return rho;
}

DensityMatrix ground_state() {
  DensityMatrix rho;
  rho << 0.0, 0.0, 0.0, 1.0;
  return rho;
}

Eigen::Matrix2cd free_propagator(const QubitHamiltonian& h, double dt) {
  validate(h);
  if (!(dt > 0.0)) throw std::invalid_argument("free_propagator: dt must be > 0");
  const double omega = h.rabi_frequency();
  Eigen::Matrix2cd k = Eigen::Matrix2cd::Identity();
  if (omega == 0.0) return k;
  const std::complex<double> i(0.0, 1.0);
  const double c = std::cos(0.5 * omega * dt);
  const double s = std::sin(0.5 * omega * dt);
  Eigen::Matrix2cd gen;
  gen << h.epsilon, h.delta, h.delta, -h.epsilon;
  k = c * Eigen::Matrix2cd::Identity() - i * (s / omega) * gen;
  return k;
}

Eigen::Matrix4cd forward_backward_kernel(const Eigen::Matrix2cd& k) {
  if ((k.adjoint() * k - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() >
      1e-10)
    throw std::invalid_argument("forward_backward_kernel: K is not unitary");
  Eigen::Matrix4cd t;
  for (int ap = 0; ap < 2; ++ap)
    for (int bp = 0; bp < 2; ++bp)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          t(2 * ap + bp, 2 * a + b) = k(ap, a) * std::conj(k(bp, b));
  return t;
}

}  // namespace spinbath
