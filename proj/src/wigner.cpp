#include "qoct/wigner.hpp"

#include <cmath>
#include <sstream>

namespace qoct {

namespace {

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

DelayGrid conjugate_delay_grid(double omega_half_range, int n_omega) {
  const double step = M_PI / omega_half_range;
  const double tau_min = -0.5 * n_omega * step;
  return DelayGrid{tau_min, tau_min + (n_omega - 1) * step, n_omega};
}

WignerMap wigner_map(const Sample& s, const DelayGrid& delays, const UniformGrid& centers,
                     double omega_half_range, int n_omega) {
  if (!(omega_half_range > 0.0)) throw contract_error("wigner_map: window must be positive");
  if (!is_power_of_two(n_omega) || n_omega < 64)
    throw contract_error("wigner_map: n_omega must be a power of two >= 64");
  if (centers.n < 1 || !(centers.step > 0.0))
    throw contract_error("wigner_map: centers grid must be uniform and increasing");
  if (!(centers.first - omega_half_range > 0.0))
    throw contract_error("wigner_map: window reaches nonpositive absolute frequencies");

  // Flat-spectrum admissibility: the sample's coincidence response extends to
  // delays of 4 beta1 z_max; expressed as a frequency support through the
  // delay grid (2 pi x occupied fraction / delay step), the window must
  // exceed four times it.
  const double mid = centers.at(centers.n / 2);
  const double tau_h = 4.0 * inverse_group_velocity(s.dispersion(), mid) * s.max_depth();
  const double extent = delays.tau_max - delays.tau_min;
  const double bandwidth = 2.0 * M_PI * tau_h / (extent * delays.step());
  if (omega_half_range <= 4.0 * bandwidth) {
    std::ostringstream msg;
    msg << "wigner_map: window " << omega_half_range << " rad/s does not exceed 4x the sample's "
        << "bandwidth proxy " << bandwidth << " rad/s";
    throw contract_error(msg.str());
  }

  const int n = n_omega;
  const double dw = 2.0 * omega_half_range / n;
  const double weight = dw / (2.0 * omega_half_range);  // flat S = 1 / (2W)
  WignerMap map{delays, centers, omega_half_range, n_omega,
                Eigen::MatrixXcd::Zero(centers.n, delays.n_points)};

  ArrayXd omegas(n - 1);
  for (int l = 1; l < n; ++l) omegas[l - 1] = -omega_half_range + l * dw;
  const ArrayXd taus = delays.taus();

  for (int m = 0; m < centers.n; ++m) {
    const double w0 = centers.at(m);
    ArrayXcd kernel(n - 1);
    for (int l = 0; l < n - 1; ++l)
      kernel[l] =
          transfer_function(s, w0 + omegas[l]) * std::conj(transfer_function(s, w0 - omegas[l]));
    for (int k = 0; k < delays.n_points; ++k) {
      const ArrayXcd phase = (omegas.cast<cplx>() * cplx(0.0, -taus[k])).exp();
      map.values(m, k) = weight * (kernel * phase).sum();
    }
  }
  return map;
}

namespace {

void require_invertible(const WignerMap& map) {
  const double dw = map.omega_step();
  const double period = 2.0 * M_PI / dw;
  if (map.delays.n_points != map.n_omega ||
      !close_rel(map.delays.step() * map.n_omega, period, 1e-9))
    throw contract_error(
        "reconstruct_transfer: delay grid is not conjugate to the map's frequency grid");
}

}  // namespace

cplx wigner_kernel_at(const WignerMap& map, int center_index, double omega_detuning) {
  require_invertible(map);
  const double dw = map.omega_step();
  const double pos = omega_detuning / dw;
  const long l = std::lround(pos);
  if (std::abs(pos - l) > 1e-6)
    throw contract_error("wigner_kernel_at: detuning is not on the map's frequency grid");
  if (l <= -map.n_omega / 2 || l >= map.n_omega / 2)
    throw contract_error("wigner_kernel_at: detuning outside the map window");
  cplx acc(0.0, 0.0);
  for (int k = 0; k < map.delays.n_points; ++k)
    acc += map.values(center_index, k) *
           std::exp(cplx(0.0, omega_detuning * map.delays.tau(k)));
  return acc;  // weight dw N / (2W) = 1, so the inverse needs no scale factor
}

TabulatedTransfer reconstruct_transfer(const WignerMap& map, double omega_ref,
                                       double amplitude_floor) {
  require_invertible(map);
  const double dw = map.omega_step();
  if (!close_rel(map.centers.step, dw, 1e-9))
    throw contract_error(
        "reconstruct_transfer: centers spacing must equal the map's frequency step");
  const double pos = (omega_ref - map.centers.first) / map.centers.step;
  const long m_ref = std::lround(pos);
  if (m_ref < 0 || m_ref >= map.centers.n || std::abs(pos - m_ref) > 1e-6)
    throw contract_error("reconstruct_transfer: omega_ref is not a map center sample");

  const cplx k0 = wigner_kernel_at(map, static_cast<int>(m_ref), 0.0);
  if (std::abs(k0) < amplitude_floor) {
    std::ostringstream msg;
    msg << "reconstruct_transfer: |K(0, omega_ref)| = " << std::abs(k0)
        << " is below the amplitude floor " << amplitude_floor
        << " (transfer-function null at the reference)";
    throw contract_error(msg.str());
  }
  const double h_ref = std::sqrt(std::max(std::real(k0), 0.0));

  const int reach = static_cast<int>(
      std::min<long>(std::min<long>(m_ref, map.centers.n - 1 - m_ref), map.n_omega / 2 - 1));
  TabulatedTransfer out;
  out.omega_ref = omega_ref;
  out.reference_note = "H(omega_ref) fixed real nonnegative; result true up to one global phase";
  out.frequencies = UniformGrid{omega_ref - 2.0 * reach * dw, 2.0 * dw, 2 * reach + 1};
  out.values = ArrayXcd(2 * reach + 1);
  for (int k = -reach; k <= reach; ++k) {
    if (k == 0) {
      out.values[reach] = h_ref;
      continue;
    }
    const cplx kk = wigner_kernel_at(map, static_cast<int>(m_ref) + k, k * dw);
    out.values[k + reach] = kk / h_ref;  // conj(H(omega_ref)) is real
  }
  return out;
}

}  // namespace qoct
