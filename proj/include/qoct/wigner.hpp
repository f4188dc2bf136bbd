#pragma once

#include <string>

#include "qoct/grid.hpp"
#include "qoct/sample.hpp"
#include "qoct/types.hpp"

namespace qoct {

struct UniformGrid {
  double first = 0.0;
  double step = 0.0;
  int n = 0;

  double at(int k) const { return first + k * step; }
};

/// Flat-spectrum coincidence cross term on aligned tau x omega0 grids:
/// Lambda(tau, omega0) = (1 / 2W) integral_{-W}^{W} H(omega0 + Omega)
/// H*(omega0 - Omega) e^{-i Omega tau} dOmega — the Wigner distribution of H.
///
/// The integral runs over the n_omega - 1 interior samples of the half-open
/// grid [-W, W) so every sample has a conjugate partner; K(-Omega) = K*(Omega)
/// then makes the map real to rounding, the defining property of a Wigner
/// distribution. With a delay grid conjugate to the Omega grid
/// (step = 2 pi / (n_omega dOmega), n_points = n_omega) the discrete transform
/// is exactly invertible, which reconstruct_transfer requires.
struct WignerMap {
  DelayGrid delays;
  UniformGrid centers;            // omega0 samples, rad/s
  double omega_half_range = 0.0;  // W, rad/s
  int n_omega = 0;                // power of two defining the Omega step
  Eigen::MatrixXcd values;        // centers.n rows x delays.n_points columns

  double omega_step() const { return 2.0 * omega_half_range / n_omega; }
};

/// Conjugate delay grid for the given window: step pi / W, n_omega points,
/// centered on zero delay.
DelayGrid conjugate_delay_grid(double omega_half_range, int n_omega);

WignerMap wigner_map(const Sample& s, const DelayGrid& delays, const UniformGrid& centers,
                     double omega_half_range, int n_omega);

/// K(Omega, omega0) recovered from one map row by the inverse transform;
/// exact when the delay grid is conjugate to the Omega grid.
cplx wigner_kernel_at(const WignerMap& map, int center_index, double omega_detuning);

struct TabulatedTransfer {
  UniformGrid frequencies;  // uniform, strictly increasing
  ArrayXcd values;
  double omega_ref = 0.0;
  std::string reference_note;
};

/// Half-sum/half-difference inversion of the map: H(omega_ref) is fixed real
/// nonnegative and H(omega) = K((omega - omega_ref)/2, (omega + omega_ref)/2)
/// / H*(omega_ref), exact up to one global phase. Grids must align so the
/// half-sum and half-difference land on map samples; no interpolation is
/// performed. Rejects references where |K(0, omega_ref)| < amplitude_floor.
TabulatedTransfer reconstruct_transfer(const WignerMap& map, double omega_ref,
                                       double amplitude_floor);

}  // namespace qoct
