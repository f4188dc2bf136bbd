#include "qoct/grid.hpp"

#include <cmath>

namespace qoct {

ArrayXd FreqGrid::omegas() const {
  ArrayXd w(n_points);
  for (int k = 0; k < n_points; ++k) w[k] = omega(k);
  return w;
}

ArrayXd DelayGrid::taus() const {
  ArrayXd t(n_points);
  for (int k = 0; k < n_points; ++k) t[k] = tau(k);
  return t;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

FreqGrid make_freq_grid(double spectral_width, double coverage_factor, int n_points) {
  if (!(spectral_width > 0.0))
    throw contract_error("make_freq_grid: spectral width must be positive");
  if (!(coverage_factor >= 4.0))
    throw contract_error("make_freq_grid: coverage factor must be >= 4");
  if (!is_power_of_two(n_points) || n_points < 64)
    throw contract_error("make_freq_grid: n_points must be a power of two >= 64");
  return FreqGrid{coverage_factor * spectral_width, n_points};
}

DelayGrid make_delay_grid(double tau_min, double tau_max, int n_points) {
  if (!(tau_min < tau_max)) throw contract_error("make_delay_grid: tau_min must be < tau_max");
  if (n_points < 2) throw contract_error("make_delay_grid: need at least two delay points");
  return DelayGrid{tau_min, tau_max, n_points};
}

ArrayXcd inverse_ft(const FreqGrid& grid, const ArrayXcd& values, const DelayGrid& delays) {
  if (values.size() != grid.n_points)
    throw contract_error("inverse_ft: value count does not match the frequency grid");
  const ArrayXd w = grid.omegas();
  const double dw = grid.step();
  ArrayXcd out(delays.n_points);
  for (int k = 0; k < delays.n_points; ++k) {
    const ArrayXcd kernel = (w.cast<cplx>() * cplx(0.0, -delays.tau(k))).exp();
    out[k] = dw * (values * kernel).sum();
  }
  return out;
}

cplx inverse_ft_at(const FreqGrid& grid, const ArrayXcd& values, double tau) {
  if (values.size() != grid.n_points)
    throw contract_error("inverse_ft: value count does not match the frequency grid");
  const ArrayXcd kernel = (grid.omegas().cast<cplx>() * cplx(0.0, -tau)).exp();
  return grid.step() * (values * kernel).sum();
}

}  // namespace qoct
