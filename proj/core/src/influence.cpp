#include "spinbath/influence.hpp"

#include <cmath>
#include <ostream>

namespace spinbath {

namespace {

/// alpha(t) sampled on a fine uniform grid with 4-point (cubic Lagrange)
/// interpolation. response_function calls dominate the eta build cost;
/// the cache brings it down to one pass over the fine grid.
class ResponseCache {
 public:
  ResponseCache(const BathSpec& bath, double t_max, double step,
                const QuadratureOptions& quad)
      : step_(step) {
    const int n = static_cast<int>(std::ceil(t_max / step)) + 3;
    values_.reserve(n + 1);
    for (int i = 0; i <= n; ++i)
      values_.push_back(response_function(bath, i * step, quad));
  }

  std::complex<double> operator()(double t) const {
    const double u = t / step_;
    int i = static_cast<int>(std::floor(u)) - 1;
    i = std::max(0, std::min<int>(i, static_cast<int>(values_.size()) - 4));
    const double x = u - i;  // in [1,2] for interior points
    // Lagrange basis on nodes {0,1,2,3}.
    const double l0 = -(x - 1) * (x - 2) * (x - 3) / 6.0;
    const double l1 = x * (x - 2) * (x - 3) / 2.0;
    const double l2 = -x * (x - 1) * (x - 3) / 2.0;
    const double l3 = x * (x - 1) * (x - 2) / 6.0;
    return l0 * values_[i] + l1 * values_[i + 1] + l2 * values_[i + 2] +
           l3 * values_[i + 3];
  }

 private:
  double step_;
  std::vector<std::complex<double>> values_;
};

struct WindowIntegrator {
  const ResponseCache& alpha;
  const GaussRule& rule;

  // Int_{a} dt' Int_{b} dt'' alpha(t'-t''), window a entirely >= window b.
  std::complex<double> cross(const Window& a, const Window& b) const {
    std::complex<double> sum = 0.0;
    const double ca = 0.5 * (a.lo + a.hi), ha = 0.5 * (a.hi - a.lo);
    const double cb = 0.5 * (b.lo + b.hi), hb = 0.5 * (b.hi - b.lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double tp = ca + ha * rule.nodes[i];
      std::complex<double> inner = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double ts = cb + hb * rule.nodes[j];
        inner += rule.weights[j] * alpha(std::max(0.0, tp - ts));
      }
      sum += rule.weights[i] * hb * inner;
    }
    return ha * sum;
  }

  // Int_{w} dt' Int_{w.lo}^{t'} dt'' alpha(t'-t'')
  std::complex<double> self(const Window& w) const {
    std::complex<double> sum = 0.0;
    const double c = 0.5 * (w.lo + w.hi), h = 0.5 * (w.hi - w.lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double tp = c + h * rule.nodes[i];
      const double ci = 0.5 * (w.lo + tp), hi = 0.5 * (tp - w.lo);
      std::complex<double> inner = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        inner += rule.weights[j] * alpha(tp - (ci + hi * rule.nodes[j]));
      sum += rule.weights[i] * hi * inner;
    }
    return h * sum;
  }
};

}  // namespace

std::complex<double> EtaTable::entry(int k, int kp) const {
  if (kp < 0 || k < kp || k > steps_)
    throw std::out_of_range("EtaTable::entry: require 0 <= k' <= k <= N");
  if (k - kp > kmax_)
    throw std::out_of_range("EtaTable::entry: lag exceeds memory span kmax");
  if (k == kp) {
    if (k == 0) return self_begin_;
    if (k == steps_) return self_end_;
    return self_interior_;
  }
  const int lag = k - kp;
  const bool k_end = (k == steps_);
  const bool kp_begin = (kp == 0);
  if (k_end && kp_begin) return end_begin_[lag];
  if (k_end) return to_end_[lag];
  if (kp_begin) return from_begin_[lag];
  return interior_[lag];
}

void EtaTable::dump_csv(std::ostream& os) const {
  os << "k,kp,re_eta,im_eta\n";
  for (int k = 0; k <= steps_; ++k)
    for (int kp = std::max(0, k - kmax_); kp <= k; ++kp) {
      const std::complex<double> e = entry(k, kp);
      os << k << ',' << kp << ',' << e.real() << ',' << e.imag() << '\n';
    }
}

EtaTable eta_coefficients(const BathSpec& bath, const TimeGrid& grid, int kmax,
                          const EtaOptions& opts) {
  validate(grid);
  validate(bath);
  if (kmax < 1) throw std::invalid_argument("eta_coefficients: kmax must be >= 1");

  const double dt = grid.dt;
  EtaTable table(kmax, grid.steps, dt);

  const ResponseCache alpha(bath, (kmax + 1) * dt, dt / opts.cache_refine,
                            opts.quad);
  const WindowIntegrator wi{alpha, gauss_legendre(opts.gauss_order)};

  // Windows relative to slice k: interior [k dt - dt/2, k dt + dt/2],
  // begin (slice 0) [0, dt/2], terminal [k dt - dt/2, k dt]. Stationarity
  // makes every integral a function of the lag and the window types only.
  const auto interior = [dt](int k) { return Window{(k - 0.5) * dt, (k + 0.5) * dt}; };
  const auto terminal = [dt](int k) { return Window{(k - 0.5) * dt, k * dt}; };
  const Window begin{0.0, 0.5 * dt};

  table.self_interior_ = wi.self(interior(1));
  table.self_begin_ = wi.self(begin);
  table.self_end_ = wi.self(terminal(1));
  for (int lag = 1; lag <= kmax; ++lag) {
    table.interior_[lag] = wi.cross(interior(lag + 1), interior(1));
    table.from_begin_[lag] = wi.cross(interior(lag), begin);
    table.to_end_[lag] = wi.cross(terminal(lag + 1), interior(1));
    table.end_begin_[lag] = wi.cross(terminal(lag), begin);
  }

  if (opts.check_memory) {
    const MemoryTimeResult mt = memory_time(bath, 0.1, 8.0 * kmax * dt,
                                            0.5 * dt, opts.quad);
    if (!mt.converged || mt.time > kmax * dt)
      table.warnings_.push_back(
          "memory truncation risk: kmax*dt = " + std::to_string(kmax * dt) +
          " < estimated memory time " + std::to_string(mt.time) +
          (mt.converged ? "" : " (not converged by scan horizon)"));
  }
  return table;
}

}  // namespace spinbath
