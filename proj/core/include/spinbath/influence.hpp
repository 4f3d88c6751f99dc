#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "spinbath/bath.hpp"
#include "spinbath/time_grid.hpp"

namespace spinbath {

struct EtaOptions {
  int gauss_order = 16;     // per axis of the window double integrals
  int cache_refine = 64;    // response cache step = dt / cache_refine
  bool check_memory = true; // warn when kmax*dt < estimated memory time
  QuadratureOptions quad;
};

/// Discretized influence-functional coefficients
///   eta_{kk'} = Int_{w_k} dt' Int_{w_{k'}} dt'' alpha(t'-t'')
/// (diagonal entries restricted to t'' < t'), memory-truncated at
/// k - k' <= kmax. Windows at slice 0 and slice N are the half windows
/// of the symmetric-Trotter tiling, so entries touching them differ
/// from the stationary interior values; they are stored per window type
/// and resolved through entry().
class EtaTable {
 public:
  EtaTable(int kmax, int steps, double dt)
      : kmax_(kmax), steps_(steps), dt_(dt),
        interior_(kmax + 1), from_begin_(kmax + 1), to_end_(kmax + 1),
        end_begin_(kmax + 1) {}

  int kmax() const { return kmax_; }
  int steps() const { return steps_; }
  double dt() const { return dt_; }

  bool endpoint(int k) const { return k == 0 || k == steps_; }

  /// Map view over the grid this table was built for. Throws on indices
  /// outside 0 <= k' <= k <= N or beyond the memory span.
  std::complex<double> entry(int k, int kp) const;

  // Lag-resolved accessors (lag in [1, kmax]); used by the propagator,
  // which treats every readout slice as terminal.
  std::complex<double> self_interior() const { return self_interior_; }
  std::complex<double> self_begin() const { return self_begin_; }
  std::complex<double> self_end() const { return self_end_; }
  std::complex<double> cross_interior(int lag) const { return interior_.at(lag); }
  std::complex<double> cross_from_begin(int lag) const { return from_begin_.at(lag); }
  std::complex<double> cross_to_end(int lag) const { return to_end_.at(lag); }
  std::complex<double> cross_end_begin(int lag) const { return end_begin_.at(lag); }

  const std::vector<std::string>& warnings() const { return warnings_; }

  // Debug dump: columns k, k', Re eta, Im eta.
  void dump_csv(std::ostream& os) const;

  friend EtaTable eta_coefficients(const BathSpec&, const TimeGrid&, int,
                                   const EtaOptions&);

 private:
  int kmax_;
  int steps_;
  double dt_;
  std::complex<double> self_interior_{}, self_begin_{}, self_end_{};
  std::vector<std::complex<double>> interior_, from_begin_, to_end_, end_begin_;
  std::vector<std::string> warnings_;
};

EtaTable eta_coefficients(const BathSpec& bath, const TimeGrid& grid, int kmax,
                          const EtaOptions& opts = {});

}  // namespace spinbath
