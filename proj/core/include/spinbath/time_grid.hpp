#pragma once

#include <stdexcept>
#include <vector>

namespace spinbath {

struct TimeGrid {
  double dt;  // > 0
  int steps;  // N >= 1

  double total_time() const { return dt * steps; }
};

inline void validate(const TimeGrid& grid) {
  if (!(grid.dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be > 0");
  if (grid.steps < 1) throw std::invalid_argument("TimeGrid: steps must be >= 1");
}

struct Window {
  double lo;
  double hi;

  double length() const { return hi - lo; }
};

/// Symmetric-Trotter windows tiling [0, N dt]: half windows at both ends,
/// full windows centred on the interior grid points.
inline std::vector<Window> build_windows(const TimeGrid& grid) {
  validate(grid);
  const int n = grid.steps;
  const double dt = grid.dt;
  std::vector<Window> w;
  w.reserve(n + 1);
  w.push_back({0.0, 0.5 * dt});
  for (int k = 1; k < n; ++k) w.push_back({(k - 0.5) * dt, (k + 0.5) * dt});
  w.push_back({(n - 0.5) * dt, n * dt});
  return w;
}

}  // namespace spinbath
