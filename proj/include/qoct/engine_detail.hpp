#pragma once

#include "qoct/sample.hpp"
#include "qoct/spectrum.hpp"

namespace qoct::detail {

/// Spectrum grid must cover at least 4x the spectral width and stay at
/// positive absolute frequencies.
void require_coverage(const Spectrum& sp);

/// Closed forms need a Gaussian source and at most second-order dispersion.
void require_closed_form(const Sample& s, const Spectrum& sp);

/// integral |H(omega0 + Omega)|^2 S(Omega) dOmega on the spectrum grid.
double sample_self_quadrature(const Sample& s, const Spectrum& sp);

/// Gamma on a carrier-fine grid via an envelope-scale interpolant.
ArrayXcd interpolated_cross(const Sample& s, const Spectrum& sp, const DelayGrid& delays);

}  // namespace qoct::detail
