#pragma once

#include <complex>
#include <vector>

#include "spinbath/quadrature.hpp"
#include "spinbath/spectral_density.hpp"

namespace spinbath {

struct FrequencyBand {
  double omega_min;  // >= 0
  double omega_max;  // > omega_min
};

void validate(const FrequencyBand& band);

struct BandPresets {
  FrequencyBand low;     // (0, 0.1 delta]
  FrequencyBand medium;  // (0.1 delta, 11 delta]
  FrequencyBand high;    // (11 delta, 100 delta]
};

BandPresets band_presets(double delta);

/// Full environment description: density + integration band + inverse
/// temperature (beta = 1/kT, finite: no zero-temperature baths).
struct BathSpec {
  SpectralDensity density;
  FrequencyBand band;
  double beta;
};

void validate(const BathSpec& bath);

/// coth(beta*w/2) with overflow/cancellation guards:
/// argument > 30 -> 1, argument < 1e-6 -> 1/x + x/3.
double coth_half(double beta, double omega);

/// Bath response function
///   alpha(t) = (1/pi) Int_band dw J(w) [coth(beta w/2) cos wt - i sin wt].
/// For DiscreteModes the integral degenerates to the mode sum.
std::complex<double> response_function(const BathSpec& bath, double t,
                                       const QuadratureOptions& opts = {});

struct MemoryTimeResult {
  double time;
  bool converged;  // false: threshold never satisfied up to t_max
};

/// Smallest scanned t such that max(|Re a|,|Im a|) stays below
/// threshold * max(|Re a(0)|, max_t |Im a|) from t onward.
MemoryTimeResult memory_time(const BathSpec& bath, double threshold,
                             double t_max, double dt_scan,
                             const QuadratureOptions& opts = {});

// Tabulation helpers for the CLI.
struct DensityRow {
  double omega;
  double j;
};
struct ResponseRow {
  double t;
  double re;
  double im;
};

std::vector<DensityRow> tabulate_density(const SpectralDensity& density,
                                         const FrequencyBand& band, int points);
std::vector<ResponseRow> tabulate_response(const BathSpec& bath, double t_max,
                                           int points,
                                           const QuadratureOptions& opts = {});

}  // namespace spinbath
