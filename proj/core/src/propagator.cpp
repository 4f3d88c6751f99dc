#include "spinbath/propagator.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>

namespace spinbath {

namespace {

using cplx = std::complex<double>;

inline int forward_spin(int slice) { return 1 - 2 * (slice >> 1); }
inline int backward_spin(int slice) { return 1 - 2 * (slice & 1); }

inline cplx weight_from_eta(cplx eta, int slice_new, int slice_old) {
  const double ds = forward_spin(slice_new) - backward_spin(slice_new);
  const cplx phase = eta * static_cast<double>(forward_spin(slice_old)) -
                     std::conj(eta) * static_cast<double>(backward_spin(slice_old));
  return std::exp(-ds * phase);
}

using WeightTable = std::array<std::array<cplx, 4>, 4>;  // [new][old]

WeightTable make_table(cplx eta) {
  WeightTable t;
  for (int n = 0; n < 4; ++n)
    for (int o = 0; o < 4; ++o) t[n][o] = weight_from_eta(eta, n, o);
  return t;
}

std::array<cplx, 4> make_self(cplx eta) {
  std::array<cplx, 4> t;
  for (int s = 0; s < 4; ++s) t[s] = weight_from_eta(eta, s, s);
  return t;
}

}  // namespace

std::complex<double> influence_weight(const EtaTable& eta, int k, int kp,
                                      int slice_k, int slice_kp) {
  if (slice_k < 0 || slice_k > 3 || slice_kp < 0 || slice_kp > 3)
    throw std::out_of_range("influence_weight: slice-state index out of range");
  return weight_from_eta(eta.entry(k, kp), slice_k, slice_kp);
}

std::size_t default_memory_budget() {
  if (const char* env = std::getenv("SPINBATH_MEMORY_BUDGET")) {
    const unsigned long long v = std::strtoull(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::size_t{2} << 30;
}

Trajectory evolve_with_table(const QubitHamiltonian& h, const EtaTable& eta,
                             const TimeGrid& grid, const DensityMatrix& rho0,
                             const EvolveOptions& opts) {
  validate(h);
  validate(grid);
  validate_density_matrix(rho0);
  if (std::abs(eta.dt() - grid.dt) > 1e-12 * std::max(1.0, grid.dt))
    throw std::invalid_argument("evolve_with_table: table dt mismatch");

  const int kmax = eta.kmax();
  const std::size_t budget =
      opts.memory_budget_bytes ? opts.memory_budget_bytes : default_memory_budget();
  const double needed = 2.0 * std::pow(4.0, kmax) * sizeof(cplx);
  if (needed > static_cast<double>(budget))
    throw MemoryBudgetError("evolve: 2*4^kmax tensor (" + std::to_string(needed) +
                            " bytes) exceeds memory budget " +
                            std::to_string(budget));

  const Eigen::Matrix2cd k_free = free_propagator(h, grid.dt);
  const Eigen::Matrix4cd t_kernel = forward_backward_kernel(k_free);

  const auto self_interior = make_self(eta.self_interior());
  const auto self_begin = make_self(eta.self_begin());
  const auto self_end = make_self(eta.self_end());
  std::vector<WeightTable> w_interior(kmax + 1), w_from_begin(kmax + 1),
      w_to_end(kmax + 1), w_end_begin(kmax + 1);
  for (int lag = 1; lag <= kmax; ++lag) {
    w_interior[lag] = make_table(eta.cross_interior(lag));
    w_from_begin[lag] = make_table(eta.cross_from_begin(lag));
    w_to_end[lag] = make_table(eta.cross_to_end(lag));
    w_end_begin[lag] = make_table(eta.cross_end_begin(lag));
  }

  Trajectory traj;
  traj.grid = grid;
  traj.system = h;
  traj.kmax = kmax;
  traj.warnings = eta.warnings();
  traj.states.reserve(grid.steps + 1);
  traj.trace_drift.reserve(grid.steps + 1);
  traj.states.push_back(rho0);
  traj.trace_drift.push_back(0.0);

  // Augmented tensor over the last min(k, kmax) slice-states; digit 0
  // (least significant base-4 digit) is the newest slice.
  std::vector<cplx> a(4), b;
  for (int s = 0; s < 4; ++s) a[s] = rho0(s >> 1, s & 1) * self_begin[s];
  int m = 1;

  for (int k = 1; k <= grid.steps; ++k) {
    const int m_new = std::min(m + 1, kmax);
    b.assign(std::size_t{1} << (2 * m_new), 0.0);
    const std::size_t mask = (std::size_t{1} << (2 * m_new)) - 1;
    std::array<cplx, 4> rho_raw{};

    // Weight tables for this step: slice k-lag is the begin slice iff
    // k == lag. Terminal variants feed the readout corrections.
    std::vector<const WeightTable*> ti(m + 1), te(m + 1);
    for (int lag = 1; lag <= m; ++lag) {
      const bool at_begin = (k - lag == 0);
      ti[lag] = at_begin ? &w_from_begin[lag] : &w_interior[lag];
      te[lag] = at_begin ? &w_end_begin[lag] : &w_to_end[lag];
    }

    const std::size_t count = std::size_t{1} << (2 * m);
    for (std::size_t hidx = 0; hidx < count; ++hidx) {
      const cplx amp = a[hidx];
      if (amp == 0.0) continue;
      const int prev = static_cast<int>(hidx & 3);
      for (int sn = 0; sn < 4; ++sn) {
        cplx wt = t_kernel(sn, prev) * self_interior[sn];
        cplx corr = self_end[sn] / self_interior[sn];
        std::size_t digits = hidx;
        for (int lag = 1; lag <= m; ++lag) {
          const int d = static_cast<int>(digits & 3);
          digits >>= 2;
          const cplx wi = (*ti[lag])[sn][d];
          wt *= wi;
          corr *= (*te[lag])[sn][d] / wi;
        }
        const cplx contrib = amp * wt;
        rho_raw[sn] += contrib * corr;
        b[((hidx << 2) | static_cast<std::size_t>(sn)) & mask] += contrib;
      }
    }
    a.swap(b);
    m = m_new;

    DensityMatrix rho;
    rho << rho_raw[0], rho_raw[1], rho_raw[2], rho_raw[3];
    const cplx tr = rho.trace();
    traj.trace_drift.push_back(std::abs(tr - 1.0));
    rho /= tr;
    traj.states.push_back(rho);
  }
  return traj;
}

Trajectory evolve(const QubitHamiltonian& h, const BathSpec& bath,
                  const TimeGrid& grid, int kmax, const DensityMatrix& rho0,
                  const EvolveOptions& opts) {
  if (kmax < 1) throw std::invalid_argument("evolve: kmax must be >= 1");
  const EtaTable eta = eta_coefficients(bath, grid, kmax, opts.eta);
  return evolve_with_table(h, eta, grid, rho0, opts);
}

}  // namespace spinbath
