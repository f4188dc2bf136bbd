// Shared scenario builders for the engine suites.
#pragma once

#include "qoct/sample.hpp"
#include "qoct/spectrum.hpp"

namespace fixtures {

using namespace qoct;

/// 812 nm center, 155 nm full width at 1/e.
inline Spectrum source() { return gaussian_from_wavelength(812e-9, 155e-9); }

/// Dispersion anchored at the source center with the phase index matched to
/// the group index there (beta_r = omega0 beta1).
inline DispersionProfile dispersion(double omega0, double beta1 = 5e-9, double beta2 = 1.8e-25,
                                    double beta3 = 0.0, double beta4 = 0.0) {
  return DispersionProfile{omega0, omega0 * beta1, beta1, beta2, beta3, beta4};
}

/// Two layers r1 = 0.1, r2 = 0.2 separated by 10 um, buried at depth d0.
inline Sample two_layer(double omega0, double d0 = 1e-4, double beta2 = 1.8e-25) {
  return Sample({{0.1, d0}, {0.2, d0 + 1e-5}}, dispersion(omega0, 5e-9, beta2));
}

/// Delay grid centered on the round-trip delay of depth `z_center`, spanning
/// +/- `half_span_x` in position units x = tau v0 / 2.
inline DelayGrid delays_about(double z_center, double half_span_x, int n, double v0 = 2e8,
                              double scale = 2.0) {
  const double tau_c = scale * z_center / v0;
  const double half = scale * half_span_x / v0;
  return DelayGrid{tau_c - half, tau_c + half, n};
}

}  // namespace fixtures
