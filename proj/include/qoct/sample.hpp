#pragma once

#include <vector>

#include "qoct/grid.hpp"
#include "qoct/types.hpp"

namespace qoct {

/// Polynomial wave-number expansion about a reference frequency:
/// beta(omega) = beta_r + beta1 u + beta2 u^2/2 + beta3 u^3/6 + beta4 u^4/24,
/// u = omega - omega_r. beta1 is the inverse group velocity at omega_r.
struct DispersionProfile {
  double omega_r = 0.0;  // rad/s
  double beta_r = 0.0;   // rad/m
  double beta1 = 0.0;    // s/m
  double beta2 = 0.0;    // s^2/m
  double beta3 = 0.0;    // s^3/m
  double beta4 = 0.0;    // s^4/m
};

struct Layer {
  cplx r;         // complex reflectance, |r| <= 1
  double z = 0.0; // depth below the surface, m
};

/// Ordered reflective layers sharing one dispersion profile.
class Sample {
 public:
  Sample(std::vector<Layer> layers, const DispersionProfile& dispersion);

  const std::vector<Layer>& layers() const { return layers_; }
  const DispersionProfile& dispersion() const { return dispersion_; }
  bool empty() const { return layers_.empty(); }
  double max_depth() const;

  /// Same layers with every reflectance multiplied by eps.
  Sample scaled(cplx eps) const;

 private:
  std::vector<Layer> layers_;
  DispersionProfile dispersion_;
};

double beta(const DispersionProfile& dp, double omega);

/// d beta / d omega at omega; must be positive for a physical profile.
double inverse_group_velocity(const DispersionProfile& dp, double omega);
double group_velocity(const DispersionProfile& dp, double omega);

/// H(omega) = sum_j r_j exp(i 2 beta(omega) z_j).
cplx transfer_function(const Sample& s, double omega);

/// H(omega0 + Omega_k) for every grid sample.
ArrayXcd transfer_samples(const Sample& s, double omega0, const FreqGrid& grid);

}  // namespace qoct
