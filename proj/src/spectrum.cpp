#include "qoct/spectrum.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace qoct {

namespace {

ArrayXd gaussian_samples(const FreqGrid& grid, double half_width) {
  const ArrayXd w = grid.omegas();
  return (-(w / half_width).square()).exp() / (half_width * std::sqrt(M_PI));
}

}  // namespace

Spectrum Spectrum::gaussian(double center_frequency, double one_over_e_half_width,
                            double coverage_factor, int n_points) {
  if (!(center_frequency > 0.0)) throw contract_error("Spectrum: center frequency must be positive");
  if (!(one_over_e_half_width > 0.0)) throw contract_error("Spectrum: spectral width must be positive");
  Spectrum sp;
  sp.center_ = center_frequency;
  sp.gaussian_ = true;
  sp.width_ = one_over_e_half_width;
  sp.grid_ = make_freq_grid(one_over_e_half_width, coverage_factor, n_points);
  sp.densities_ = gaussian_samples(sp.grid_, one_over_e_half_width);
  return sp;
}

Spectrum Spectrum::tabulated(double center_frequency, const FreqGrid& grid, const ArrayXd& densities) {
  if (!(center_frequency > 0.0)) throw contract_error("Spectrum: center frequency must be positive");
  if (densities.size() != grid.n_points)
    throw contract_error("Spectrum: density count does not match the grid");
  const double peak = densities.maxCoeff();
  if (!(peak > 0.0)) throw contract_error("Spectrum: tabulated density has no positive samples");
  if (densities.minCoeff() < -1e-12 * peak)
    throw contract_error("Spectrum: tabulated density has negative samples");
  // Symmetry pairs k <-> n-k; the unpaired -half_range sample is exempt.
  const int n = grid.n_points;
  for (int k = 1; k < n; ++k) {
    if (std::abs(densities[k] - densities[n - k]) > 1e-12 * peak)
      throw contract_error("Spectrum: tabulated density is asymmetric beyond 1e-12 of peak");
  }

  Spectrum sp;
  sp.center_ = center_frequency;
  sp.gaussian_ = false;
  sp.grid_ = grid;
  const double area = grid.step() * densities.sum();
  if (!(area > 0.0)) throw contract_error("Spectrum: tabulated density has nonpositive area");
  sp.applied_scale_ = 1.0 / area;
  sp.densities_ = densities.max(0.0) * sp.applied_scale_;

  const double second_moment = grid.step() * (grid.omegas().square() * sp.densities_).sum();
  sp.width_ = std::sqrt(2.0 * second_moment);
  return sp;
}

Spectrum gaussian_from_wavelength(double center_wavelength, double bandwidth_fw_1e) {
  if (!(center_wavelength > 0.0))
    throw contract_error("gaussian_from_wavelength: center wavelength must be positive");
  if (!(bandwidth_fw_1e > 0.0) || bandwidth_fw_1e >= center_wavelength)
    throw contract_error("gaussian_from_wavelength: bandwidth must lie in (0, center wavelength)");
  const double omega0 = 2.0 * M_PI * speed_of_light / center_wavelength;
  const double full_width =
      2.0 * M_PI * speed_of_light * bandwidth_fw_1e / (center_wavelength * center_wavelength);
  return Spectrum::gaussian(omega0, 0.5 * full_width);
}

Spectrum load_tabulated_spectrum(const std::string& path, double center_frequency) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open spectrum file: " + path);
  std::vector<double> omegas, values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double w = 0.0, s = 0.0;
    if (!(row >> w >> s))
      throw config_error("spectrum file " + path + ": line " + std::to_string(lineno) +
                         ": expected two columns");
    omegas.push_back(w);
    values.push_back(s);
  }
  const int n = static_cast<int>(omegas.size());
  if (!is_power_of_two(n) || n < 64)
    throw config_error("spectrum file " + path + ": sample count must be a power of two >= 64");
  const double step = omegas[1] - omegas[0];
  const double half_range = -omegas[0];
  FreqGrid grid{half_range, n};
  if (!(step > 0.0) || std::abs(grid.step() - step) > 1e-9 * step)
    throw config_error("spectrum file " + path + ": samples are not on a symmetric uniform grid");
  for (int k = 0; k < n; ++k) {
    if (std::abs(omegas[k] - grid.omega(k)) > 1e-9 * step)
      throw config_error("spectrum file " + path + ": sample " + std::to_string(k) +
                         " is off the uniform grid");
  }
  ArrayXd dens = Eigen::Map<ArrayXd>(values.data(), n);
  return Spectrum::tabulated(center_frequency, grid, dens);
}

double Spectrum::one_over_e_half_width() const {
  if (!gaussian_) throw contract_error("Spectrum: 1/e half width is defined for Gaussian shapes only");
  return width_;
}

double spectral_density(const Spectrum& sp, double omega_detuning) {
  if (sp.gaussian_) {
    const double u = omega_detuning / sp.width_;
    return std::exp(-u * u) / (sp.width_ * std::sqrt(M_PI));
  }
  // Nearest sample, no interpolation; outside the grid the density is zero.
  const double pos = (omega_detuning + sp.grid_.half_range) / sp.grid_.step();
  const long k = std::lround(pos);
  if (k < 0 || k >= sp.grid_.n_points) return 0.0;
  return sp.densities_[k];
}

cplx correlation(const Spectrum& sp, double tau) {
  if (sp.gaussian_) {
    const double u = 0.5 * sp.width_ * tau;
    return cplx(std::exp(-u * u), 0.0);
  }
  return inverse_ft_at(sp.grid_, sp.densities_.cast<cplx>(), tau);
}

cplx fresnel_correlation(const Spectrum& sp, double beta2, double dz, double tau) {
  const double b = beta2 * dz;  // s^2
  if (b == 0.0) return correlation(sp, tau);
  if (sp.gaussian_) {
    // Complete the square: integral of exp(-(a - i b) Omega^2 - i Omega tau)
    // with a = 1/dW^2 gives exp(-tau^2/(4 gamma)) / (dW sqrt(gamma)), gamma = a - i b.
    const double a = 1.0 / (sp.width_ * sp.width_);
    const cplx gamma(a, -b);
    return std::exp(-tau * tau / (4.0 * gamma)) / (sp.width_ * std::sqrt(gamma));
  }
  const ArrayXd w = sp.grid_.omegas();
  const ArrayXcd chirped =
      sp.densities_.cast<cplx>() * (w.square().cast<cplx>() * cplx(0.0, b)).exp();
  return inverse_ft_at(sp.grid_, chirped, tau);
}

}  // namespace qoct
