#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinbath {

/// Thrown when an adaptive integration cannot reach the requested tolerance.
/// Carries the best available error estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate)
      : std::runtime_error(what), error_estimate_(estimate) {}
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int gauss_order = 24;
  int max_depth = 14;
};

/// Gauss-Legendre nodes and weights on [-1, 1]. Cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

using ComplexIntegrand = std::function<std::complex<double>(double)>;

struct IntegrationResult {
  std::complex<double> value;
  double error_estimate;
};

/// Adaptive Gauss integration of f over [a, b]. Bisection with an
/// order-n vs two-half-intervals error estimate.
IntegrationResult integrate(const ComplexIntegrand& f, double a, double b,
                            const QuadratureOptions& opts = {});

/// Integration of f(w)*e^{iwt}-type integrands: the interval is pre-split
/// into segments no longer than pi/t so each segment sees at most half an
/// oscillation period before adaptivity kicks in.
IntegrationResult integrate_oscillatory(const ComplexIntegrand& f, double a,
                                        double b, double oscillation_freq,
                                        const QuadratureOptions& opts = {});

}  // namespace spinbath
