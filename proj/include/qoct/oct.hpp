#pragma once

#include "qoct/interferogram.hpp"
#include "qoct/sample.hpp"
#include "qoct/spectrum.hpp"

namespace qoct {

/// Cross-interference term by direct quadrature:
/// Gamma(tau) = integral H(omega0 + Omega) S(Omega) e^{-i Omega tau} dOmega.
ArrayXcd oct_cross(const Sample& s, const Spectrum& sp, const DelayGrid& delays);

/// Discrete-sample closed form for Gaussian sources and at most second-order
/// dispersion: Gamma(tau) = sum_j r_j s_d(tau - 2 z_j / v0) e^{i 2 beta0 z_j},
/// with s_d the Fresnel-dispersed correlation over the burial depth z_j.
ArrayXcd oct_cross_closed(const Sample& s, const Spectrum& sp, const DelayGrid& delays);

/// Gamma0 = integral (1 + |H|^2) S dOmega; the unit reference-arm term is
/// exact by the spectrum's unit normalization.
double oct_self_term(const Sample& s, const Spectrum& sp);

enum class OctOutput { intensity, envelope };

/// Full interferogram. Envelope output carries |Gamma(tau)|; intensity output
/// carries Gamma0 + 2 Re{Gamma(tau) e^{-i omega0 tau}} and requires either a
/// carrier-resolving delay step or synthesize_carrier = true, in which case
/// Gamma is computed on a coarser envelope-scale grid (an integer decimation
/// of the requested grid) and interpolated before the carrier is applied.
Interferogram oct_interferogram(const Sample& s, const Spectrum& sp, const DelayGrid& delays,
                                OctOutput output, bool synthesize_carrier = false);

}  // namespace qoct
