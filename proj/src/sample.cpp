#include "qoct/sample.hpp"

#include <cmath>

namespace qoct {

Sample::Sample(std::vector<Layer> layers, const DispersionProfile& dispersion)
    : layers_(std::move(layers)), dispersion_(dispersion) {
  if (!(dispersion_.omega_r > 0.0)) throw contract_error("Sample: reference frequency must be positive");
  if (!(dispersion_.beta1 > 0.0))
    throw contract_error("Sample: beta1 must be positive (finite group velocity)");
  double prev = -1.0;
  for (const Layer& l : layers_) {
    if (std::abs(l.r) > 1.0 + 1e-15) throw contract_error("Sample: layer reflectance must satisfy |r| <= 1");
    if (l.z < 0.0) throw contract_error("Sample: layer depth must be nonnegative");
    if (l.z <= prev) throw contract_error("Sample: layer depths must be strictly increasing");
    prev = l.z;
  }
}

double Sample::max_depth() const { return layers_.empty() ? 0.0 : layers_.back().z; }

Sample Sample::scaled(cplx eps) const {
  std::vector<Layer> scaled = layers_;
  for (Layer& l : scaled) l.r *= eps;
  return Sample(std::move(scaled), dispersion_);
}

double beta(const DispersionProfile& dp, double omega) {
  if (!(omega > 0.0)) throw contract_error("beta: frequency must be positive");
  const double u = omega - dp.omega_r;
  return dp.beta_r +
         u * (dp.beta1 + u * (dp.beta2 / 2.0 + u * (dp.beta3 / 6.0 + u * dp.beta4 / 24.0)));
}

double inverse_group_velocity(const DispersionProfile& dp, double omega) {
  if (!(omega > 0.0)) throw contract_error("group_velocity: frequency must be positive");
  const double u = omega - dp.omega_r;
  return dp.beta1 + u * (dp.beta2 + u * (dp.beta3 / 2.0 + u * dp.beta4 / 6.0));
}

double group_velocity(const DispersionProfile& dp, double omega) {
  const double slope = inverse_group_velocity(dp, omega);
  if (!(slope > 0.0))
    throw contract_error("group_velocity: d beta/d omega is not positive at the requested frequency");
  return 1.0 / slope;
}

cplx transfer_function(const Sample& s, double omega) {
  const double b = beta(s.dispersion(), omega);
  cplx h(0.0, 0.0);
  for (const Layer& l : s.layers()) h += l.r * std::exp(cplx(0.0, 2.0 * b * l.z));
  return h;
}

ArrayXcd transfer_samples(const Sample& s, double omega0, const FreqGrid& grid) {
  ArrayXcd h = ArrayXcd::Zero(grid.n_points);
  for (int k = 0; k < grid.n_points; ++k) h[k] = transfer_function(s, omega0 + grid.omega(k));
  return h;
}

}  // namespace qoct
