#include "qoct/oct.hpp"

#include <cmath>

#include "qoct/engine_detail.hpp"

namespace qoct {

ArrayXcd oct_cross(const Sample& s, const Spectrum& sp, const DelayGrid& delays) {
  detail::require_coverage(sp);
  const FreqGrid& grid = sp.grid();
  const ArrayXcd h = transfer_samples(s, sp.center_frequency(), grid);
  const ArrayXcd integrand = h * sp.grid_densities().cast<cplx>();
  return inverse_ft(grid, integrand, delays);
}

ArrayXcd oct_cross_closed(const Sample& s, const Spectrum& sp, const DelayGrid& delays) {
  detail::require_closed_form(s, sp);
  const double omega0 = sp.center_frequency();
  const DispersionProfile& dp = s.dispersion();
  const double beta0 = beta(dp, omega0);
  const double v0 = group_velocity(dp, omega0);

  ArrayXcd gamma = ArrayXcd::Zero(delays.n_points);
  for (const Layer& l : s.layers()) {
    const cplx carrier = l.r * std::exp(cplx(0.0, 2.0 * beta0 * l.z));
    const double shift = 2.0 * l.z / v0;
    for (int k = 0; k < delays.n_points; ++k)
      gamma[k] += carrier * fresnel_correlation(sp, dp.beta2, l.z, delays.tau(k) - shift);
  }
  return gamma;
}

double oct_self_term(const Sample& s, const Spectrum& sp) {
  // The reference-arm unit term is exact: S integrates to 1 by construction.
  return 1.0 + detail::sample_self_quadrature(s, sp);
}

Interferogram oct_interferogram(const Sample& s, const Spectrum& sp, const DelayGrid& delays,
                                OctOutput output, bool synthesize_carrier) {
  const double gamma0 = oct_self_term(s, sp);

  if (output == OctOutput::envelope) {
    const ArrayXcd gamma = oct_cross(s, sp, delays);
    return Interferogram{delays, gamma.abs(), TraceKind::oct_envelope, gamma0};
  }

  const double omega0 = sp.center_frequency();
  const double omega_max = sp.grid().half_range;
  const double carrier_step = M_PI / (omega0 + omega_max);
  ArrayXcd gamma(delays.n_points);
  if (delays.step() <= carrier_step) {
    gamma = oct_cross(s, sp, delays);
  } else if (!synthesize_carrier) {
    throw contract_error(
        "oct_interferogram: delay step undersamples the carrier; pass synthesize_carrier or refine "
        "the grid");
  } else {
    gamma = detail::interpolated_cross(s, sp, delays);
  }

  ArrayXd intensity(delays.n_points);
  for (int k = 0; k < delays.n_points; ++k) {
    const cplx carrier = std::exp(cplx(0.0, -omega0 * delays.tau(k)));
    intensity[k] = gamma0 + 2.0 * std::real(gamma[k] * carrier);
  }
  return Interferogram{delays, intensity, TraceKind::oct_intensity, gamma0};
}

namespace detail {

void require_coverage(const Spectrum& sp) {
  const FreqGrid& grid = sp.grid();
  if (grid.half_range < 4.0 * sp.effective_half_width())
    throw contract_error("engine: spectrum grid covers less than 4x the spectral width");
  if (!(sp.center_frequency() > grid.half_range))
    throw contract_error("engine: grid half range reaches nonpositive absolute frequencies");
}

void require_closed_form(const Sample& s, const Spectrum& sp) {
  if (!sp.is_gaussian())
    throw contract_error("closed form requires a Gaussian spectrum; use the quadrature path");
  if (s.dispersion().beta3 != 0.0 || s.dispersion().beta4 != 0.0)
    throw contract_error(
        "closed form covers second-order dispersion only; use the quadrature path");
}

double sample_self_quadrature(const Sample& s, const Spectrum& sp) {
  detail::require_coverage(sp);
  const FreqGrid& grid = sp.grid();
  const ArrayXcd h = transfer_samples(s, sp.center_frequency(), grid);
  return grid.step() * (h.abs2() * sp.grid_densities()).sum();
}

ArrayXcd interpolated_cross(const Sample& s, const Spectrum& sp, const DelayGrid& delays) {
  // Envelope-scale nodes: decimate the fine grid by the largest integer factor
  // that still resolves the envelope bandwidth, then evaluate the carrier
  // exactly on a Catmull-Rom interpolant of Gamma.
  const double env_step_max = M_PI / sp.grid().half_range;
  int factor = static_cast<int>(env_step_max / delays.step());
  if (factor < 1)
    throw contract_error("oct_interferogram: delay grid too coarse even for the envelope");
  while (factor > 1 && (delays.n_points - 1) % factor != 0) --factor;
  const int n_env = (delays.n_points - 1) / factor + 1;
  const DelayGrid env{delays.tau_min, delays.tau_max, n_env};
  const ArrayXcd coarse = oct_cross(s, sp, env);

  auto node = [&](int j) { return coarse[std::clamp(j, 0, n_env - 1)]; };
  ArrayXcd fine(delays.n_points);
  for (int k = 0; k < delays.n_points; ++k) {
    const int seg = k / factor;
    const int off = k % factor;
    if (off == 0) {
      fine[k] = coarse[seg];
      continue;
    }
    const double t = static_cast<double>(off) / factor;
    const cplx p0 = node(seg - 1), p1 = node(seg), p2 = node(seg + 1), p3 = node(seg + 2);
    fine[k] = 0.5 * ((2.0 * p1) + (-p0 + p2) * t + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * t * t +
                     (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * t * t * t);
  }
  return fine;
}

}  // namespace detail

}  // namespace qoct
