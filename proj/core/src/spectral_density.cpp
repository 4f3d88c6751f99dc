#include "spinbath/spectral_density.hpp"

#include <cmath>

namespace spinbath {

namespace {

struct Validator {
  void operator()(const OhmicDensity& d) const {
    if (!(d.kondo >= 0.0))
      throw std::invalid_argument("OhmicDensity: kondo must be >= 0");
    if (!(d.cutoff > 0.0))
      throw std::invalid_argument("OhmicDensity: cutoff must be > 0");
  }
  void operator()(const EffectiveDensity& d) const {
    if (!(d.coupling_product >= 0.0))
      throw std::invalid_argument("EffectiveDensity: coupling_product must be >= 0");
    if (!(d.kondo >= 0.0))
      throw std::invalid_argument("EffectiveDensity: kondo must be >= 0");
    if (!(d.iho_frequency > 0.0))
      throw std::invalid_argument("EffectiveDensity: iho_frequency must be > 0");
    if (!(d.damping >= 0.0))
      throw std::invalid_argument("EffectiveDensity: damping must be >= 0");
    if (!(d.cutoff > 0.0))
      throw std::invalid_argument("EffectiveDensity: cutoff must be > 0");
  }
  void operator()(const DiscreteModes& d) const {
    for (const auto& m : d.modes) {
      if (!(m.omega > 0.0))
        throw std::invalid_argument("DiscreteModes: mode frequency must be > 0");
      if (!(m.weight >= 0.0))
        throw std::invalid_argument("DiscreteModes: mode weight must be >= 0");
    }
  }
};

struct Evaluator {
  double omega;
  double operator()(const OhmicDensity& d) const {
    return 0.5 * M_PI * d.kondo * omega * std::exp(-omega / d.cutoff);
  }
  double operator()(const EffectiveDensity& d) const {
    const double om0_sq = d.iho_frequency * d.iho_frequency;
    const double diff = omega * omega - om0_sq;
    const double up = d.symmetric_cutoff ? std::exp(-omega / d.cutoff)
                                         : std::exp(omega / d.cutoff);
    const double denom = diff * diff * up +
                         4.0 * d.damping * d.damping * omega * omega *
                             std::exp(-omega / d.cutoff);
    const double lk2 = d.coupling_product * d.coupling_product;
    return 0.5 * M_PI * lk2 * d.kondo * omega * om0_sq * om0_sq / denom;
  }
  double operator()(const DiscreteModes&) const { return 0.0; }
};

}  // namespace

void validate(const SpectralDensity& density) {
  std::visit(Validator{}, density);
}

double evaluate_j(const SpectralDensity& density, double omega) {
  if (!(omega >= 0.0))
    throw std::domain_error("evaluate_j: omega must be >= 0");
  return std::visit(Evaluator{omega}, density);
}

}  // namespace spinbath
