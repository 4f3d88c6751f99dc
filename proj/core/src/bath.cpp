#include "spinbath/bath.hpp"

#include <cmath>

namespace spinbath {

void validate(const FrequencyBand& band) {
  if (!(band.omega_min >= 0.0))
    throw std::invalid_argument("FrequencyBand: omega_min must be >= 0");
  if (!(band.omega_max > band.omega_min))
    throw std::invalid_argument("FrequencyBand: omega_max must exceed omega_min");
}

BandPresets band_presets(double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("band_presets: delta must be > 0");
  return {{0.0, 0.1 * delta}, {0.1 * delta, 11.0 * delta}, {11.0 * delta, 100.0 * delta}};
}

void validate(const BathSpec& bath) {
  validate(bath.density);
  validate(bath.band);
  if (!(bath.beta > 0.0) || !std::isfinite(bath.beta))
    throw std::invalid_argument("BathSpec: beta must be finite and > 0");
}

double coth_half(double beta, double omega) {
  const double x = 0.5 * beta * omega;
  if (x > 30.0) return 1.0;
  if (x < 1e-6) return 1.0 / x + x / 3.0;
  return 1.0 / std::tanh(x);
}

std::complex<double> response_function(const BathSpec& bath, double t,
                                       const QuadratureOptions& opts) {
  if (!(t >= 0.0)) throw std::domain_error("response_function: t must be >= 0");
  validate(bath);

  if (const auto* disc = std::get_if<DiscreteModes>(&bath.density)) {
    // Distributions are not quadrable; evaluate the mode sum directly.
    std::complex<double> sum = 0.0;
    for (const auto& m : disc->modes)
      sum += m.weight * std::complex<double>(
                            coth_half(bath.beta, m.omega) * std::cos(m.omega * t),
                            -std::sin(m.omega * t));
    return sum;
  }

  const auto integrand = [&](double w) {
    const double j = evaluate_j(bath.density, w);
    return std::complex<double>(j * coth_half(bath.beta, w) * std::cos(w * t),
                                -j * std::sin(w * t));
  };
  const IntegrationResult r = integrate_oscillatory(
      integrand, bath.band.omega_min, bath.band.omega_max, t, opts);
  return r.value / M_PI;
}

MemoryTimeResult memory_time(const BathSpec& bath, double threshold,
                             double t_max, double dt_scan,
                             const QuadratureOptions& opts) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("memory_time: threshold must be in (0,1)");
  if (!(dt_scan > 0.0 && dt_scan < t_max))
    throw std::invalid_argument("memory_time: require 0 < dt_scan < t_max");

  std::vector<std::complex<double>> samples;
  for (double t = 0.0; t <= t_max + 0.5 * dt_scan; t += dt_scan)
    samples.push_back(response_function(bath, t, opts));

  double ref = std::abs(samples[0].real());
  for (const auto& a : samples) ref = std::max(ref, std::abs(a.imag()));
  if (ref == 0.0) return {0.0, true};  // zero coupling

  const double limit = threshold * ref;
  std::size_t first_ok = samples.size();
  for (std::size_t k = samples.size(); k-- > 0;) {
    if (std::max(std::abs(samples[k].real()), std::abs(samples[k].imag())) <= limit)
      first_ok = k;
    else
      break;
  }
  if (first_ok == samples.size()) return {t_max, false};
  return {static_cast<double>(first_ok) * dt_scan, true};
}

std::vector<DensityRow> tabulate_density(const SpectralDensity& density,
                                         const FrequencyBand& band, int points) {
  if (points < 2) throw std::invalid_argument("tabulate_density: points < 2");
  validate(density);
  validate(band);
  std::vector<DensityRow> rows;
  rows.reserve(points);
  const double h = (band.omega_max - band.omega_min) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double w = band.omega_min + i * h;
    rows.push_back({w, evaluate_j(density, w)});
  }
  return rows;
}

std::vector<ResponseRow> tabulate_response(const BathSpec& bath, double t_max,
                                           int points,
                                           const QuadratureOptions& opts) {
  if (points < 2) throw std::invalid_argument("tabulate_response: points < 2");
  std::vector<ResponseRow> rows;
  rows.reserve(points);
  const double h = t_max / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double t = i * h;
    const std::complex<double> a = response_function(bath, t, opts);
    rows.push_back({t, a.real(), a.imag()});
  }
  return rows;
}

}  // namespace spinbath
