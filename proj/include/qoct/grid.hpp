#pragma once

#include "qoct/types.hpp"

namespace qoct {

/// Uniform detuning grid, symmetric and half-open: Omega_k = -half_range + k*step,
/// k = 0..n_points-1, so every interior sample has a mirror partner and the
/// single -half_range sample is its own partner under the periodic convention.
struct FreqGrid {
  double half_range = 0.0;  // rad/s
  int n_points = 0;         // power of two, >= 64

  double step() const { return 2.0 * half_range / n_points; }
  double omega(int k) const { return -half_range + k * step(); }
  ArrayXd omegas() const;
};

/// Uniform delay grid, tau_k = tau_min + k*step, inclusive of both ends.
struct DelayGrid {
  double tau_min = 0.0;  // s
  double tau_max = 0.0;  // s
  int n_points = 0;      // >= 2

  double step() const { return (tau_max - tau_min) / (n_points - 1); }
  double tau(int k) const { return tau_min + k * step(); }
  ArrayXd taus() const;

  /// Nyquist adequacy for sampling content up to omega_max.
  bool resolves(double omega_max) const { return step() <= M_PI / omega_max; }
};

bool is_power_of_two(int n);

/// Builds the detuning grid for a source of the given 1/e half width:
/// half_range = coverage_factor * spectral_width. Requires coverage_factor >= 4
/// and n_points a power of two >= 64.
FreqGrid make_freq_grid(double spectral_width, double coverage_factor, int n_points);

DelayGrid make_delay_grid(double tau_min, double tau_max, int n_points);

/// f(tau_k) = sum_j step * values_j * exp(-i Omega_j tau_k).
/// Step-weighted Riemann sum realizing the e^{-i Omega tau} kernel used by
/// every engine in this project.
ArrayXcd inverse_ft(const FreqGrid& grid, const ArrayXcd& values, const DelayGrid& delays);

/// Single-delay variant of inverse_ft.
cplx inverse_ft_at(const FreqGrid& grid, const ArrayXcd& values, double tau);

}  // namespace qoct
