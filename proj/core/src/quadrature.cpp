#include "spinbath/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace spinbath {

namespace {

GaussRule compute_gauss_legendre(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= order; ++j) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

std::complex<double> gauss_segment(const ComplexIntegrand& f, double a,
                                   double b, const GaussRule& rule) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(c + h * rule.nodes[i]);
  return h * sum;
}

struct Adaptive {
  const ComplexIntegrand& f;
  const GaussRule& rule;
  const QuadratureOptions& opts;
  double scale;  // magnitude reference for the relative tolerance

  std::complex<double> run(double a, double b, std::complex<double> whole,
                           int depth, double* err_out) {
    const double mid = 0.5 * (a + b);
    const std::complex<double> left = gauss_segment(f, a, mid, rule);
    const std::complex<double> right = gauss_segment(f, mid, b, rule);
    const double err = std::abs(left + right - whole);
    const double tol = std::max(opts.abs_tol, opts.rel_tol * scale);
    if (err <= tol || depth >= opts.max_depth) {
      if (depth >= opts.max_depth && err > tol)
        throw QuadratureError(
            "adaptive quadrature failed to converge (error estimate " +
                std::to_string(err) + ")",
            err);
      *err_out += err;
      return left + right;
    }
    return run(a, mid, left, depth + 1, err_out) +
           run(mid, b, right, depth + 1, err_out);
  }
};

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order < 1");
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache.emplace(order, compute_gauss_legendre(order)).first;
  return it->second;
}

IntegrationResult integrate(const ComplexIntegrand& f, double a, double b,
                            const QuadratureOptions& opts) {
  if (!(b >= a)) throw std::invalid_argument("integrate: b < a");
  if (a == b) return {0.0, 0.0};
  const GaussRule& rule = gauss_legendre(opts.gauss_order);
  const std::complex<double> whole = gauss_segment(f, a, b, rule);
  Adaptive ad{f, rule, opts, std::max(std::abs(whole), 1.0)};
  double err = 0.0;
  const std::complex<double> value = ad.run(a, b, whole, 0, &err);
  return {value, err};
}

IntegrationResult integrate_oscillatory(const ComplexIntegrand& f, double a,
                                        double b, double oscillation_freq,
                                        const QuadratureOptions& opts) {
  if (!(b >= a)) throw std::invalid_argument("integrate_oscillatory: b < a");
  if (a == b) return {0.0, 0.0};
  double seg = b - a;
  if (oscillation_freq > 0.0)
    seg = std::min(seg, M_PI / oscillation_freq);
  const int nseg = std::max(1, static_cast<int>(std::ceil((b - a) / seg)));
  const double h = (b - a) / nseg;
  IntegrationResult total{0.0, 0.0};
  for (int i = 0; i < nseg; ++i) {
    const IntegrationResult part = integrate(f, a + i * h, a + (i + 1) * h, opts);
    total.value += part.value;
    total.error_estimate += part.error_estimate;
  }
  return total;
}

}  // namespace spinbath
