#include <cmath>
#include <ostream>

#include "qoct/oct.hpp"
#include "qoct/scenario.hpp"
#include "qoct/wigner.hpp"

namespace qoct {

namespace {

// Midpoint-rule quadrature of integral S(W) exp(i b W^2) exp(-i W tau) dW for a
// Gaussian S; independent of the grid/transform machinery it is used to check.
cplx midpoint_fresnel(double half_width, double b, double tau) {
  const int n = 1 << 18;
  const double r = 12.0 * half_width;
  const double step = 2.0 * r / n;
  cplx acc(0.0, 0.0);
  for (int k = 0; k < n; ++k) {
    const double w = -r + (k + 0.5) * step;
    const double s = std::exp(-(w / half_width) * (w / half_width)) /
                     (half_width * std::sqrt(M_PI));
    acc += s * std::exp(cplx(0.0, b * w * w - w * tau));
  }
  return acc * step;
}

double measured_width(const ArrayXd& taus, const ArrayXd& depth) {
  int peak = 0;
  depth.maxCoeff(&peak);
  const double level = depth[peak] / M_E;
  int lo = peak;
  while (lo > 0 && depth[lo] > level) --lo;
  int hi = peak;
  while (hi < depth.size() - 1 && depth[hi] > level) ++hi;
  auto cross = [&](int a, int b) {
    return taus[a] + (level - depth[a]) * (taus[b] - taus[a]) / (depth[b] - depth[a]);
  };
  return cross(hi - 1, hi) - cross(lo + 1, lo);
}

}  // namespace

bool selftest(std::ostream& out) {
  bool all = true;
  auto report = [&](const char* name, bool ok) {
    out << "selftest: " << name << " ... " << (ok ? "ok" : "FAIL") << "\n";
    all = all && ok;
  };

  const Spectrum sp = gaussian_from_wavelength(812e-9, 155e-9);
  const double dw = sp.one_over_e_half_width();

  {
    // Gaussian transform against the closed form exp(-dw^2 tau^2 / 4).
    const DelayGrid taus(-30e-15, 30e-15, 121);
    const ArrayXcd f = inverse_ft(sp.grid(), sp.grid_densities().cast<cplx>(), taus);
    double err = 0.0;
    for (int k = 0; k < taus.n_points; ++k) {
      const double u = 0.5 * dw * taus.tau(k);
      err = std::max(err, std::abs(f[k] - cplx(std::exp(-u * u), 0.0)));
    }
    report("inverse transform vs Gaussian closed form", err < 1e-8);
  }
  {
    const double b = 1.8e-25 * 1e-5;
    const cplx closed = fresnel_correlation(sp, 1.8e-25, 1e-5, 3e-15);
    const cplx oracle = midpoint_fresnel(dw, b, 3e-15);
    report("Fresnel correlation vs midpoint oracle", std::abs(closed - oracle) < 1e-8);
  }
  {
    const ResolvedScenario hom = resolve(preset("hom"));
    const Interferogram c = qoct_coincidence(hom.sample, hom.spectrum, hom.delays);
    const ArrayXd norm = c.normalized();
    const int mid = hom.delays.n_points / 2;
    report("HOM null and baseline",
           std::abs(norm[mid]) < 1e-9 && std::abs(norm[0] - 1.0) < 1e-9);
  }
  {
    const ResolvedScenario fig3 = resolve(preset("fig3"));
    const ArrayXcd q = oct_cross(fig3.sample, fig3.spectrum, fig3.delays);
    const ArrayXcd c = oct_cross_closed(fig3.sample, fig3.spectrum, fig3.delays);
    const double peak = q.abs().maxCoeff();
    report("OCT closed form vs quadrature", ((q - c).abs().maxCoeff()) < 1e-6 * peak);

    // Lambda is evaluated at twice the trace delay; compare it there.
    const DelayGrid doubled{2.0 * fig3.delays.tau_min, 2.0 * fig3.delays.tau_max,
                            fig3.delays.n_points};
    const ArrayXcd q2 = qoct_cross(fig3.sample, fig3.spectrum, doubled);
    const ArrayXcd c2 = qoct_cross_closed(fig3.sample, fig3.spectrum, doubled);
    const double peak2 = q2.abs().maxCoeff();
    report("QOCT closed form vs quadrature", ((q2 - c2).abs().maxCoeff()) < 1e-6 * peak2);
  }
  {
    // Factor-2 resolution on a dispersion-free single layer.
    DispersionProfile dp{sp.center_frequency(), 0.0, 5e-9};
    const Sample layer({{0.5, 20e-6}}, dp);
    const double v0 = group_velocity(dp, sp.center_frequency());
    const double center = 2.0 * 20e-6 / v0;
    const DelayGrid taus(center - 40e-15, center + 40e-15, 1601);
    const Interferogram cq = qoct_coincidence(layer, sp, taus);
    const ArrayXd dip = 1.0 - cq.normalized();
    const ArrayXd env = oct_cross(layer, sp, taus).abs();
    const double ratio = measured_width(taus.taus(), dip) / measured_width(taus.taus(), env);
    report("factor-2 resolution", std::abs(ratio - 0.5) < 0.005);
  }
  {
    DispersionProfile dp{2e15, 0.0, 5e-9};
    const Sample mirror({{1.0, 0.0}}, dp);
    const int n = 256;
    const double w = 1e13;
    const UniformGrid centers{2e15 - 16 * (2.0 * w / n), 2.0 * w / n, 33};
    const WignerMap map = wigner_map(mirror, conjugate_delay_grid(w, n), centers, w, n);
    const TabulatedTransfer rec = reconstruct_transfer(map, 2e15, 1e-3);
    double err = 0.0;
    for (int k = 0; k < rec.values.size(); ++k)
      err = std::max(err, std::abs(rec.values[k] - cplx(1.0, 0.0)));
    report("Wigner mirror round trip", err < 1e-9);
  }
  return all;
}

}  // namespace qoct
