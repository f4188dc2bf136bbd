#pragma once

#include <string>

#include "qoct/grid.hpp"
#include "qoct/types.hpp"

namespace qoct {

/// Source power spectral density S(Omega) about the center frequency omega0,
/// unit-normalized (integral over detuning = 1) and symmetric in Omega.
///
/// Gaussian shape: S(Omega) = exp(-Omega^2/dW^2) / (dW sqrt(pi)) with dW the
/// 1/e half width. Tabulated shapes live on their own FreqGrid and are looked
/// up by nearest sample, never interpolated.
class Spectrum {
 public:
  static Spectrum gaussian(double center_frequency, double one_over_e_half_width,
                           double coverage_factor = default_coverage, int n_points = default_points);
  static Spectrum tabulated(double center_frequency, const FreqGrid& grid, const ArrayXd& densities);

  double center_frequency() const { return center_; }
  bool is_gaussian() const { return gaussian_; }

  /// 1/e half width for Gaussian shapes; sqrt(2 * second moment) for tabulated
  /// ones (the two coincide for a Gaussian).
  double effective_half_width() const { return width_; }

  /// Gaussian shapes only.
  double one_over_e_half_width() const;

  const FreqGrid& grid() const { return grid_; }

  /// Density samples on the owning grid.
  const ArrayXd& grid_densities() const { return densities_; }

  /// Scale applied at construction to enforce unit area (1 for Gaussian).
  double applied_scale() const { return applied_scale_; }

  static constexpr double default_coverage = 6.0;
  static constexpr int default_points = 4096;

 private:
  Spectrum() = default;

  double center_ = 0.0;
  bool gaussian_ = true;
  double width_ = 0.0;  // 1/e half width (Gaussian) or effective width (tabulated)
  FreqGrid grid_;
  ArrayXd densities_;
  double applied_scale_ = 1.0;

  friend double spectral_density(const Spectrum&, double);
  friend cplx correlation(const Spectrum&, double);
  friend cplx fresnel_correlation(const Spectrum&, double, double, double);
};

/// Gaussian source from a center wavelength and a full-width-at-1/e bandwidth,
/// both in meters. First-order conversion: full 1/e width in angular frequency
/// is 2 pi c dlambda / lambda0^2.
Spectrum gaussian_from_wavelength(double center_wavelength, double bandwidth_fw_1e);

/// Two-column text file (Omega_offset_rad_per_s, density); rejected if the
/// samples are negative, asymmetric, or not on a valid half-open grid.
Spectrum load_tabulated_spectrum(const std::string& path, double center_frequency);

/// S(Omega); closed form for Gaussian shapes, nearest-sample for tabulated.
double spectral_density(const Spectrum& sp, double omega_detuning);

/// s(tau) = integral S(Omega) e^{-i Omega tau} dOmega; s(0) = 1.
cplx correlation(const Spectrum& sp, double tau);

/// Dispersed correlation: integral S(Omega) e^{i beta2 Omega^2 dz} e^{-i Omega tau} dOmega.
/// The quadratic phase is the round trip through a thickness dz of material
/// with group-velocity dispersion beta2; dz = 0 reduces to correlation().
cplx fresnel_correlation(const Spectrum& sp, double beta2, double dz, double tau);

}  // namespace qoct
