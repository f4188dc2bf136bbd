#include "qoct/qoct.hpp"

#include <cmath>

#include "qoct/engine_detail.hpp"

namespace qoct {

namespace {

// Maximum pump-sweep span as a fraction of the center frequency. Holding the
// spectrum shape and group velocity at the sweep center is second-order
// accurate in span/center; the full-cycle sweep on the reference scenario
// needs about 2.7%.
constexpr double max_sweep_fraction = 0.05;

ArrayXcd quadrature_lambda(const Sample& s, const Spectrum& sp, const DelayGrid& delays,
                           QoctMode mode) {
  detail::require_coverage(sp);
  const FreqGrid& grid = sp.grid();
  const double omega0 = sp.center_frequency();
  const int n = grid.n_points;

  ArrayXcd hq(n);
  if (mode == QoctMode::full) {
    for (int k = 0; k < n; ++k) {
      const double w = grid.omega(k);
      hq[k] = transfer_function(s, omega0 + w) * std::conj(transfer_function(s, omega0 - w));
    }
  } else {
    // Self part of H(omega0+W) H*(omega0-W): the j = k diagonal of the layer
    // double sum, with the even-order dispersion phase cancelled by algebra.
    const DispersionProfile& dp = s.dispersion();
    for (int k = 0; k < n; ++k) {
      const double w = grid.omega(k);
      const double dphi = beta(dp, omega0 + w) - beta(dp, omega0 - w);
      cplx acc(0.0, 0.0);
      for (const Layer& l : s.layers()) acc += std::norm(l.r) * std::exp(cplx(0.0, 2.0 * dphi * l.z));
      hq[k] = acc;
    }
  }
  return inverse_ft(grid, hq * sp.grid_densities().cast<cplx>(), delays);
}

// Closed form with explicit beta0 and group velocity so pump sweeps can vary
// the former while holding the latter.
ArrayXcd closed_lambda(const Sample& s, const Spectrum& sp, const DelayGrid& delays, double beta0,
                       double v0, QoctMode mode) {
  const double beta2 = s.dispersion().beta2;
  ArrayXcd lambda = ArrayXcd::Zero(delays.n_points);
  const auto& layers = s.layers();
  for (const Layer& l : layers) {
    const double shift = 4.0 * l.z / v0;
    const double weight = std::norm(l.r);
    for (int k = 0; k < delays.n_points; ++k)
      lambda[k] += weight * correlation(sp, delays.tau(k) - shift);
  }
  if (mode == QoctMode::full) {
    for (size_t j = 0; j < layers.size(); ++j) {
      for (size_t m = 0; m < layers.size(); ++m) {
        if (j == m) continue;
        const double dz = layers[j].z - layers[m].z;
        const cplx weight =
            layers[j].r * std::conj(layers[m].r) * std::exp(cplx(0.0, 2.0 * beta0 * dz));
        const double shift = 2.0 * (layers[j].z + layers[m].z) / v0;
        for (int k = 0; k < delays.n_points; ++k)
          lambda[k] += weight * fresnel_correlation(sp, beta2, dz, delays.tau(k) - shift);
      }
    }
  }
  return lambda;
}

double closed_lambda0(const Sample& s, const Spectrum& sp, double beta0, double v0, QoctMode mode) {
  const double beta2 = s.dispersion().beta2;
  const auto& layers = s.layers();
  double lambda0 = 0.0;
  for (const Layer& l : layers) lambda0 += std::norm(l.r);
  if (mode == QoctMode::full) {
    for (size_t j = 0; j < layers.size(); ++j) {
      for (size_t m = 0; m < layers.size(); ++m) {
        if (j == m) continue;
        const double dz = layers[j].z - layers[m].z;
        const cplx weight =
            layers[j].r * std::conj(layers[m].r) * std::exp(cplx(0.0, 2.0 * beta0 * dz));
        lambda0 += std::real(weight * fresnel_correlation(sp, beta2, dz, -2.0 * dz / v0));
      }
    }
  }
  return lambda0;
}

DelayGrid doubled(const DelayGrid& delays) {
  return DelayGrid{2.0 * delays.tau_min, 2.0 * delays.tau_max, delays.n_points};
}

Interferogram coincidence_from(const DelayGrid& delays, const ArrayXcd& lambda_2tau,
                               double lambda0) {
  ArrayXd c = lambda0 - lambda_2tau.real();
  return Interferogram{delays, c, TraceKind::qoct_coincidence, lambda0};
}

}  // namespace

ArrayXcd qoct_cross(const Sample& s, const Spectrum& sp, const DelayGrid& delays, QoctMode mode) {
  return quadrature_lambda(s, sp, delays, mode);
}

ArrayXcd qoct_cross_closed(const Sample& s, const Spectrum& sp, const DelayGrid& delays,
                           QoctMode mode) {
  detail::require_closed_form(s, sp);
  const DispersionProfile& dp = s.dispersion();
  const double omega0 = sp.center_frequency();
  return closed_lambda(s, sp, delays, beta(dp, omega0), group_velocity(dp, omega0), mode);
}

double qoct_self_term(const Sample& s, const Spectrum& sp, TracePath path, QoctMode mode) {
  if (path == TracePath::closed) {
    detail::require_closed_form(s, sp);
    const DispersionProfile& dp = s.dispersion();
    const double omega0 = sp.center_frequency();
    return closed_lambda0(s, sp, beta(dp, omega0), group_velocity(dp, omega0), mode);
  }
  if (mode == QoctMode::self_only) {
    detail::require_coverage(sp);
    double sum = 0.0;
    for (const Layer& l : s.layers()) sum += std::norm(l.r);
    return sum * sp.grid().step() * sp.grid_densities().sum();
  }
  return detail::sample_self_quadrature(s, sp);
}

Interferogram qoct_coincidence(const Sample& s, const Spectrum& sp, const DelayGrid& delays,
                               QoctMode mode, TracePath path) {
  const ArrayXcd lambda = path == TracePath::closed
                              ? qoct_cross_closed(s, sp, doubled(delays), mode)
                              : qoct_cross(s, sp, doubled(delays), mode);
  return coincidence_from(delays, lambda, qoct_self_term(s, sp, path, mode));
}

PumpSweep make_pump_sweep(double center, int n_points, double span) {
  if (!(center > 0.0)) throw contract_error("PumpSweep: center frequency must be positive");
  if (n_points < 1) throw contract_error("PumpSweep: need at least one point");
  if (span < 0.0) throw contract_error("PumpSweep: span must be nonnegative");
  if (span == 0.0) n_points = 1;  // all points coincide
  return PumpSweep{center, n_points, span};
}

PumpSweep full_cycle_sweep(const DispersionProfile& dp, double separation, double center,
                           int n_points) {
  if (!(separation > 0.0)) throw contract_error("full_cycle_sweep: separation must be positive");
  const double slope = inverse_group_velocity(dp, center);
  // Phase 2 beta0 dz advances by 2 pi over the sweep: span = pi / (beta1 dz).
  return make_pump_sweep(center, n_points, M_PI / (slope * separation));
}

Interferogram pump_averaged_coincidence(const Sample& s, const Spectrum& sp,
                                        const DelayGrid& delays, const PumpSweep& sweep) {
  detail::require_closed_form(s, sp);
  if (sweep.span > max_sweep_fraction * sweep.center)
    throw contract_error("pump_averaged_coincidence: sweep span exceeds 5% of the center frequency");
  const DispersionProfile& dp = s.dispersion();
  const double v0 = group_velocity(dp, sweep.center);
  const DelayGrid lambda_grid = doubled(delays);

  ArrayXd mean = ArrayXd::Zero(delays.n_points);
  double mean_lambda0 = 0.0;
  const double dstep = sweep.n_points > 0 ? sweep.span / sweep.n_points : 0.0;
  for (int m = 0; m < sweep.n_points; ++m) {
    const double omega0 = sweep.center + (m - 0.5 * (sweep.n_points - 1)) * dstep;
    const double beta0 = beta(dp, omega0);
    const double lambda0 = closed_lambda0(s, sp, beta0, v0, QoctMode::full);
    const ArrayXcd lambda = closed_lambda(s, sp, lambda_grid, beta0, v0, QoctMode::full);
    mean += lambda0 - lambda.real();
    mean_lambda0 += lambda0;
  }
  mean /= sweep.n_points;
  mean_lambda0 /= sweep.n_points;
  return Interferogram{delays, mean, TraceKind::qoct_coincidence, mean_lambda0};
}

double ensemble_phase(std::uint64_t seed, int trial, int layer) {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  std::uint64_t h = mix(seed ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1)));
  h = mix(h ^ (0xd1b54a32d192ed03ULL * (static_cast<std::uint64_t>(layer) + 1)));
  // Top 53 bits to a double in [0, 1); exact on any IEEE-754 platform.
  return 2.0 * M_PI * std::ldexp(static_cast<double>(h >> 11), -53);
}

EnsembleTrace random_phase_ensemble(const Sample& s, const Spectrum& sp, const DelayGrid& delays,
                                    const EnsembleSpec& ens) {
  detail::require_closed_form(s, sp);
  if (ens.n_trials < 1) throw contract_error("random_phase_ensemble: need at least one trial");
  const DispersionProfile& dp = s.dispersion();
  const double omega0 = sp.center_frequency();
  const double beta0 = beta(dp, omega0);
  const double v0 = group_velocity(dp, omega0);
  const DelayGrid lambda_grid = doubled(delays);
  const int n_layers = static_cast<int>(s.layers().size());

  ArrayXd sum = ArrayXd::Zero(delays.n_points);
  ArrayXd sum_sq = ArrayXd::Zero(delays.n_points);
  double sum_lambda0 = 0.0;
  std::vector<Layer> layers = s.layers();
  for (int t = 0; t < ens.n_trials; ++t) {
    for (int j = 0; j < n_layers; ++j)
      layers[j].r = s.layers()[j].r * std::exp(cplx(0.0, ensemble_phase(ens.seed, t, j)));
    const Sample trial(layers, dp);
    const double lambda0 = closed_lambda0(trial, sp, beta0, v0, QoctMode::full);
    if (!(lambda0 > 0.0))
      throw contract_error("random_phase_ensemble: trial has zero self-interference term");
    const ArrayXcd lambda = closed_lambda(trial, sp, lambda_grid, beta0, v0, QoctMode::full);
    const ArrayXd c = (lambda0 - lambda.real()) / lambda0;
    sum += c;
    sum_sq += c.square();
    sum_lambda0 += lambda0;
  }
  const double inv = 1.0 / ens.n_trials;
  const ArrayXd mean_norm = sum * inv;
  const ArrayXd variance = (sum_sq * inv - mean_norm.square()).max(0.0);
  const double mean_lambda0 = sum_lambda0 * inv;

  EnsembleTrace out{Interferogram{delays, mean_norm * mean_lambda0, TraceKind::qoct_coincidence,
                                  mean_lambda0},
                    variance.sqrt()};
  return out;
}

}  // namespace qoct
