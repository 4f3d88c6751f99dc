#include "spinbath/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinbath {

namespace {

using cplx = std::complex<double>;

std::size_t hilbert_dim(const DiscreteBath& bath) {
  std::size_t dim = 2;
  for (std::size_t i = 0; i < bath.modes.size(); ++i)
    dim *= static_cast<std::size_t>(bath.fock_cutoff);
  return dim;
}

}  // namespace

void validate(const DiscreteBath& bath) {
  if (bath.modes.size() > 4)
    throw std::invalid_argument("DiscreteBath: at most 4 modes");
  if (bath.fock_cutoff < 2)
    throw std::invalid_argument("DiscreteBath: fock_cutoff must be >= 2");
  for (const auto& m : bath.modes) {
    if (!(m.omega > 0.0))
      throw std::invalid_argument("DiscreteBath: mode frequency must be > 0");
    if (!(m.weight >= 0.0))
      throw std::invalid_argument("DiscreteBath: mode weight must be >= 0");
  }
  if (hilbert_dim(bath) > 10000)
    throw std::invalid_argument(
        "DiscreteBath: total dimension 2*n_max^modes exceeds 1e4");
}

std::complex<double> discrete_alpha(const DiscreteBath& bath, double beta,
                                    double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("discrete_alpha: t must be >= 0");
  if (!(beta > 0.0))
    throw std::invalid_argument("discrete_alpha: beta must be > 0");
  cplx sum = 0.0;
  for (const auto& m : bath.modes)
    sum += m.weight * cplx(coth_half(beta, m.omega) * std::cos(m.omega * t),
                           -std::sin(m.omega * t));
  return sum;
}

std::complex<double> dephasing_exact(const BathSpec& bath, double epsilon,
                                     const DensityMatrix& rho0, double t,
                                     const QuadratureOptions& opts) {
  validate(bath);
  validate_density_matrix(rho0);
  if (!(t >= 0.0)) throw std::invalid_argument("dephasing_exact: t must be >= 0");
  double d = 0.0;
  if (t > 0.0) {
    // D(t) = Int_0^t (t - tau) Re alpha(tau) dtau; alpha oscillates at
    // roughly the band top.
    const auto integrand = [&](double tau) {
      return (t - tau) * response_function(bath, tau, opts).real();
    };
    d = integrate_oscillatory(integrand, 0.0, t, bath.band.omega_max, opts)
            .value.real();
  }
  return rho0(0, 1) * std::exp(cplx(-4.0 * d, -epsilon * t));
}

std::complex<double> dephasing_exact(const DiscreteBath& bath, double beta,
                                     double epsilon, const DensityMatrix& rho0,
                                     double t) {
  validate(bath);
  validate_density_matrix(rho0);
  if (!(t >= 0.0)) throw std::invalid_argument("dephasing_exact: t must be >= 0");
  // Int_0^t (t - tau) cos(w tau) dtau = (1 - cos w t)/w^2, exactly.
  double d = 0.0;
  for (const auto& m : bath.modes)
    d += m.weight * coth_half(beta, m.omega) *
         (1.0 - std::cos(m.omega * t)) / (m.omega * m.omega);
  return rho0(0, 1) * std::exp(cplx(-4.0 * d, -epsilon * t));
}

Trajectory exact_diag_evolve(const QubitHamiltonian& h, const DiscreteBath& bath,
                             double beta, const DensityMatrix& rho0,
                             const TimeGrid& grid) {
  validate(h);
  validate(bath);
  validate(grid);
  validate_density_matrix(rho0);
  if (!(beta > 0.0))
    throw std::invalid_argument("exact_diag_evolve: beta must be > 0");

  const int n_modes = static_cast<int>(bath.modes.size());
  const int n_fock = bath.fock_cutoff;
  const std::size_t dim = hilbert_dim(bath);
  const std::size_t bath_dim = dim / 2;

  // Basis ordering: |qubit> (x) |n_0> (x) ... (x) |n_{modes-1}>; qubit
  // index 0 is sigma_z = +1.
  const auto fock_of = [&](std::size_t bstate, int mode) {
    std::size_t s = bstate;
    for (int i = n_modes - 1; i > mode; --i) s /= n_fock;
    return static_cast<int>(s % n_fock);
  };

  Eigen::MatrixXcd ham = Eigen::MatrixXcd::Zero(dim, dim);
  double counterterm = 0.0;
  for (const auto& m : bath.modes) counterterm += m.weight / m.omega;

  for (std::size_t q = 0; q < 2; ++q)
    for (std::size_t b = 0; b < bath_dim; ++b) {
      const std::size_t row = q * bath_dim + b;
      const double sz = (q == 0) ? 1.0 : -1.0;
      double diag = 0.5 * h.epsilon * sz + counterterm;
      for (int i = 0; i < n_modes; ++i)
        diag += bath.modes[i].omega * fock_of(b, i);
      ham(row, row) += diag;
      // (delta/2) sigma_x
      ham(row, (1 - q) * bath_dim + b) += 0.5 * h.delta;
      // sigma_z sum_i sqrt(w_i) (b_i + b_i^dag)
      std::size_t stride = 1;
      for (int i = n_modes - 1; i >= 0; --i) {
        const int n = fock_of(b, i);
        const double g = std::sqrt(bath.modes[i].weight);
        if (n + 1 < n_fock)
          ham(row, row + stride) += sz * g * std::sqrt(n + 1.0);
        if (n > 0) ham(row, row - stride) += sz * g * std::sqrt(double(n));
        stride *= n_fock;
      }
    }

  // Thermal bath occupation probabilities, factorized across modes.
  Eigen::VectorXd bath_prob = Eigen::VectorXd::Ones(bath_dim);
  for (std::size_t b = 0; b < bath_dim; ++b) {
    for (int i = 0; i < n_modes; ++i) {
      const double w = bath.modes[i].omega;
      const double z = (1.0 - std::exp(-beta * w * n_fock));
      bath_prob(b) *= std::exp(-beta * w * fock_of(b, i)) *
                      (1.0 - std::exp(-beta * w)) / z;
    }
  }

  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t qa = 0; qa < 2; ++qa)
    for (std::size_t qb = 0; qb < 2; ++qb)
      for (std::size_t b = 0; b < bath_dim; ++b)
        r(qa * bath_dim + b, qb * bath_dim + b) = rho0(qa, qb) * bath_prob(b);

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ham);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("exact_diag_evolve: eigendecomposition failed");
  const Eigen::MatrixXcd& v = es.eigenvectors();
  Eigen::VectorXcd phase(dim);
  for (std::size_t i = 0; i < dim; ++i)
    phase(i) = std::exp(cplx(0.0, -es.eigenvalues()(i) * grid.dt));
  const Eigen::MatrixXcd u_dt = v * phase.asDiagonal() * v.adjoint();

  const double e0 = (ham * r).trace().real();
  const double e_scale = std::max(1.0, std::abs(e0));

  Trajectory traj;
  traj.grid = grid;
  traj.system = h;
  traj.kmax = 0;
  traj.states.reserve(grid.steps + 1);
  traj.trace_drift.reserve(grid.steps + 1);

  bool truncation_warned = false;
  const auto record = [&](const Eigen::MatrixXcd& state) {
    DensityMatrix red = DensityMatrix::Zero();
    for (std::size_t qa = 0; qa < 2; ++qa)
      for (std::size_t qb = 0; qb < 2; ++qb)
        for (std::size_t b = 0; b < bath_dim; ++b)
          red(qa, qb) += state(qa * bath_dim + b, qb * bath_dim + b);
    traj.trace_drift.push_back(std::abs(state.trace() - 1.0));
    traj.states.push_back(red);
    if (!truncation_warned) {
      double top = 0.0;
      for (std::size_t q = 0; q < 2; ++q)
        for (std::size_t b = 0; b < bath_dim; ++b)
          for (int i = 0; i < n_modes; ++i)
            if (fock_of(b, i) == n_fock - 1) {
              top = std::max(top, std::abs(state(q * bath_dim + b,
                                                 q * bath_dim + b)));
              break;
            }
      if (top > 1e-6) {
        traj.warnings.push_back(
            "Fock truncation: top-level population " + std::to_string(top) +
            " exceeds 1e-6; increase fock_cutoff");
        truncation_warned = true;
      }
    }
  };

  record(r);
  for (int k = 1; k <= grid.steps; ++k) {
    r = u_dt * r * u_dt.adjoint();
    record(r);
    if (std::abs(r.trace() - 1.0) > 1e-10)
      throw std::runtime_error("exact_diag_evolve: trace drifted beyond 1e-10");
    const double e = (ham * r).trace().real();
    if (std::abs(e - e0) > 1e-8 * e_scale)
      throw std::runtime_error("exact_diag_evolve: energy drifted beyond 1e-8");
  }
  return traj;
}

}  // namespace spinbath
