#pragma once

#include <cstdint>

#include "qoct/interferogram.hpp"
#include "qoct/sample.hpp"
#include "qoct/spectrum.hpp"

namespace qoct {

enum class QoctMode { full, self_only };
enum class TracePath { quadrature, closed };

/// Cross-interference term by direct quadrature:
/// Lambda(tau) = integral H(omega0 + Omega) H*(omega0 - Omega) S(Omega) e^{-i Omega tau} dOmega.
ArrayXcd qoct_cross(const Sample& s, const Spectrum& sp, const DelayGrid& delays,
                    QoctMode mode = QoctMode::full);

/// Discrete-sample closed form (Gaussian source, at most second-order dispersion):
/// the dispersion-free self contribution sum_j |r_j|^2 s(tau - 4 z_j / v0) plus,
/// in full mode, cross terms r_j r_k* s_d^{(jk)}(tau - 2 (z_j + z_k)/v0)
/// e^{i 2 beta0 (z_j - z_k)} dispersed over the inter-layer distance only.
ArrayXcd qoct_cross_closed(const Sample& s, const Spectrum& sp, const DelayGrid& delays,
                           QoctMode mode = QoctMode::full);

/// Lambda0 = integral |H(omega0 + Omega)|^2 S(Omega) dOmega.
double qoct_self_term(const Sample& s, const Spectrum& sp, TracePath path = TracePath::quadrature,
                      QoctMode mode = QoctMode::full);

/// Coincidence interferogram C(tau) = Lambda0 - Re{Lambda(2 tau)}; the factor-2
/// delay scaling is applied here. Raw trace is returned even for the empty
/// sample; normalization then fails (Lambda0 = 0).
Interferogram qoct_coincidence(const Sample& s, const Spectrum& sp, const DelayGrid& delays,
                               QoctMode mode = QoctMode::full,
                               TracePath path = TracePath::quadrature);

/// Uniform deterministic sweep of the twin-photon center frequency (pump
/// frequency 2 omega0 implied). Points are spaced span/n_points apart and
/// placed symmetrically about the center, so a sweep whose cross-term phase
/// advances by exactly 2 pi visits rotated roots of unity.
struct PumpSweep {
  double center = 0.0;  // rad/s
  int n_points = 1;
  double span = 0.0;    // rad/s, total width; 0 collapses to a single point
};

PumpSweep make_pump_sweep(double center, int n_points, double span);

/// Sweep spanning exactly one 2 pi cycle of the phase 2 beta0 (z_j - z_k) for
/// the given layer separation.
PumpSweep full_cycle_sweep(const DispersionProfile& dp, double separation, double center,
                           int n_points);

/// Arithmetic mean of the coincidence trace over the sweep. beta0 is
/// re-evaluated from the dispersion profile at each pump point; the spectrum
/// shape and the group velocity are held at the sweep center (their variation
/// is second order in span/center). Gaussian source and at most second-order
/// dispersion required.
Interferogram pump_averaged_coincidence(const Sample& s, const Spectrum& sp,
                                        const DelayGrid& delays, const PumpSweep& sweep);

/// Independent uniform phase on each layer reflectance, redrawn per trial from
/// a counter-based generator: same seed, same traces, on any platform.
struct EnsembleSpec {
  int n_trials = 1;
  std::uint64_t seed = 0;
};

struct EnsembleTrace {
  Interferogram mean;  // normalized mean trace is mean of per-trial normalized traces
  ArrayXd stddev;      // per-delay population standard deviation of the normalized trace
};

/// Turbid-medium model: mean and spread of the normalized coincidence trace
/// over random reflection phases. Closed evaluation path (Gaussian source,
/// second-order dispersion).
EnsembleTrace random_phase_ensemble(const Sample& s, const Spectrum& sp, const DelayGrid& delays,
                                    const EnsembleSpec& ens);

/// Phase drawn for the given trial and layer; exposed for reproducibility tests.
double ensemble_phase(std::uint64_t seed, int trial, int layer);

}  // namespace qoct
