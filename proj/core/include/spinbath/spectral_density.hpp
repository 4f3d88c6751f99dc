#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

namespace spinbath {

// All frequencies are angular; hbar = 1 throughout the library.

/// J(w) = (pi/2) * xi * w * exp(-w/wc)
struct OhmicDensity {
  double kondo;   // dimensionless xi >= 0
  double cutoff;  // wc > 0
};

/// Effective density of a qubit coupled to the bath through a damped
/// intermediate harmonic oscillator:
///   J(w) = (pi/2) (lk)^2 xi w Om0^4 /
///          [ (w^2-Om0^2)^2 e^{+w/wc} + 4 G^2 w^2 e^{-w/wc} ]
/// The growing exponential on the first denominator term is kept as
/// printed in the source model; set symmetric_cutoff to replace it by
/// e^{-w/wc} on both terms.
struct EffectiveDensity {
  double coupling_product;  // lk >= 0 (qubit-oscillator x oscillator-bath)
  double kondo;             // xi >= 0
  double iho_frequency;     // Om0 > 0
  double damping;           // G >= 0
  double cutoff;            // wc > 0
  bool symmetric_cutoff = false;
};

/// A finite set of bath modes; weight w_i = c_i^2 / (2 m_i w_i).
/// J is a sum of delta functions, so evaluate_j returns 0 and this
/// density participates only through the discrete response function.
struct DiscreteModes {
  struct Mode {
    double omega;   // > 0
    double weight;  // >= 0
  };
  std::vector<Mode> modes;
};

using SpectralDensity = std::variant<OhmicDensity, EffectiveDensity, DiscreteModes>;

/// Throws std::invalid_argument on parameter violations.
void validate(const SpectralDensity& density);

/// J(w) in energy units. Preconditions: omega >= 0.
double evaluate_j(const SpectralDensity& density, double omega);

}  // namespace spinbath
