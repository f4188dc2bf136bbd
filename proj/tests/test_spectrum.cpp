#include <doctest.h>

#include <cmath>
#include <fstream>

#include "oracle.hpp"
#include "qoct/spectrum.hpp"

using namespace qoct;

namespace {

Spectrum reference_source() { return gaussian_from_wavelength(812e-9, 155e-9); }

Spectrum tabulated_copy(const Spectrum& sp) {
  return Spectrum::tabulated(sp.center_frequency(), sp.grid(), sp.grid_densities());
}

}  // namespace

TEST_CASE("gaussian_from_wavelength conversion") {
  const Spectrum sp = reference_source();
  const double omega0 = 2.0 * M_PI * speed_of_light / 812e-9;
  const double full_width = 2.0 * M_PI * speed_of_light * 155e-9 / (812e-9 * 812e-9);
  CHECK(sp.center_frequency() == doctest::Approx(omega0).epsilon(1e-14));
  CHECK(sp.one_over_e_half_width() == doctest::Approx(0.5 * full_width).epsilon(1e-14));
  // Display values quoted for this source.
  CHECK(sp.center_frequency() == doctest::Approx(2.3206e15).epsilon(1e-3));
  CHECK(2.0 * sp.one_over_e_half_width() == doctest::Approx(4.429e14).epsilon(1e-3));

  CHECK(2.0 * gaussian_from_wavelength(1000e-9, 100e-9).one_over_e_half_width() ==
        doctest::Approx(1.884e14).epsilon(1e-3));

  CHECK_THROWS_AS(gaussian_from_wavelength(812e-9, 0.0), contract_error);
  CHECK_THROWS_AS(gaussian_from_wavelength(812e-9, 812e-9), contract_error);
  CHECK_THROWS_AS(gaussian_from_wavelength(812e-9, -1e-9), contract_error);
}

TEST_CASE("spectral density closed form") {
  const Spectrum sp = reference_source();
  const double dw = sp.one_over_e_half_width();
  const double peak = 1.0 / (dw * std::sqrt(M_PI));
  CHECK(spectral_density(sp, 0.0) == doctest::Approx(peak).epsilon(1e-14));
  CHECK(spectral_density(sp, dw) == doctest::Approx(peak / M_E).epsilon(1e-14));
  CHECK(spectral_density(sp, 20.0 * dw) < 1e-170);
}

TEST_CASE("unit area on the owning grid") {
  const Spectrum sp = reference_source();
  const double area = sp.grid().step() * sp.grid_densities().sum();
  CHECK(std::abs(area - 1.0) < 1e-9);
}

TEST_CASE("correlation function") {
  const Spectrum sp = reference_source();
  const double dw = sp.one_over_e_half_width();
  CHECK(correlation(sp, 0.0) == cplx(1.0, 0.0));
  CHECK(std::abs(correlation(sp, 2.0 / dw) - cplx(1.0 / M_E, 0.0)) < 1e-14);

  // Quadrature path through a tabulated copy against the closed form.
  const Spectrum tab = tabulated_copy(sp);
  CHECK(std::abs(correlation(tab, 0.0) - cplx(1.0, 0.0)) < 1e-12);
  for (double tau : {1e-15, 9.03e-15, 2.4e-14})
    CHECK(std::abs(correlation(tab, tau) - correlation(sp, tau)) < 1e-8);
}

TEST_CASE("correlation bound and symmetry") {
  const Spectrum sp = reference_source();
  for (double tau : {-3e-14, -7e-15, 1e-16, 4e-15, 1.7e-14, 8e-14}) {
    const cplx s = correlation(sp, tau);
    CHECK(std::abs(s) <= 1.0 + 1e-15);
    CHECK(std::abs(s - std::conj(correlation(sp, -tau))) < 1e-15);
    CHECK(std::abs(s.imag()) < 1e-15);  // symmetric spectrum: real, even
  }
}

TEST_CASE("fresnel correlation reduces to the correlation at zero thickness") {
  const Spectrum sp = reference_source();
  for (double tau : {0.0, 5e-15, -1.3e-14}) {
    CHECK(fresnel_correlation(sp, 1.8e-25, 0.0, tau) == correlation(sp, tau));
    CHECK(fresnel_correlation(sp, 0.0, 1e-4, tau) == correlation(sp, tau));
  }
}

TEST_CASE("fresnel correlation: frozen oracle values") {
  // Midpoint-rule quadrature (N = 2^21, range 12 dw) of the dispersed kernel
  // at the reference-source width dw = 2.214064228482e14 rad/s.
  const Spectrum sp = reference_source();
  const cplx at_10um = fresnel_correlation(sp, 1.8e-25, 1e-5, 0.0);
  CHECK(at_10um.real() == doctest::Approx(0.9970967771999).epsilon(1e-10));
  CHECK(at_10um.imag() == doctest::Approx(0.04390534281481).epsilon(1e-10));
  CHECK(std::abs(at_10um) < 1.0);

  const cplx at_100um = fresnel_correlation(sp, 1.8e-25, 1e-4, 0.0);
  CHECK(at_100um.real() == doctest::Approx(0.8099613084569).epsilon(1e-10));
  CHECK(at_100um.imag() == doctest::Approx(0.3062556516695).epsilon(1e-10));

  const cplx off_center = fresnel_correlation(sp, 1.8e-25, 1e-4, 5e-15);
  CHECK(off_center.real() == doctest::Approx(0.7129656291044).epsilon(1e-10));
  CHECK(off_center.imag() == doctest::Approx(0.1515886581104).epsilon(1e-10));
}

TEST_CASE("fresnel closed form matches quadrature over the correlation support") {
  const Spectrum sp = reference_source();
  const double dw = sp.one_over_e_half_width();
  for (double dz : {1e-5, 1e-4}) {
    for (int k = -10; k <= 10; ++k) {
      const double tau = k * (1.0 / dw);
      const cplx closed = fresnel_correlation(sp, 1.8e-25, dz, tau);
      const cplx quad = oracle::gaussian_fresnel(dw, 1.8e-25 * dz, tau);
      CHECK(std::abs(closed - quad) < 1e-8);
    }
  }
}

TEST_CASE("fresnel broadening is monotone in |beta2 dz|") {
  const Spectrum sp = reference_source();
  const double dw = sp.one_over_e_half_width();
  double prev_width = 0.0;
  for (double dz : {0.0, 2e-5, 5e-5, 1e-4, 2e-4, -4e-4}) {
    Eigen::ArrayXd taus(801), mag(801);
    for (int k = 0; k < 801; ++k) {
      taus[k] = (k - 400) * (1.2e-13 / 800.0) * 4.0;
      mag[k] = std::abs(fresnel_correlation(sp, 1.8e-25, dz, taus[k]));
    }
    const double width = oracle::width_1e(taus, mag);
    CHECK(width > prev_width);
    prev_width = width;
    if (dz == 0.0) CHECK(width == doctest::Approx(4.0 / dw).epsilon(1e-3));
  }
}

TEST_CASE("fresnel transform conserves energy") {
  const Spectrum sp = reference_source();
  const int n = 6001;
  const double span = 3e-13;
  double undispersed = 0.0, dispersed = 0.0;
  for (int k = 0; k < n; ++k) {
    const double tau = -span / 2 + k * span / (n - 1);
    undispersed += std::norm(correlation(sp, tau));
    dispersed += std::norm(fresnel_correlation(sp, 1.8e-25, 1e-4, tau));
  }
  CHECK(dispersed == doctest::Approx(undispersed).epsilon(1e-6));
}

TEST_CASE("tabulated spectra") {
  const Spectrum sp = Spectrum::gaussian(2e15, 1e14, 6.0, 256);

  SUBCASE("nearest-sample lookup, no interpolation") {
    const Spectrum tab = tabulated_copy(sp);
    const FreqGrid& g = tab.grid();
    const int k = 100;
    CHECK(spectral_density(tab, g.omega(k)) == tab.grid_densities()[k]);
    CHECK(spectral_density(tab, g.omega(k) + 0.4 * g.step()) == tab.grid_densities()[k]);
    CHECK(spectral_density(tab, g.omega(k) + 0.6 * g.step()) == tab.grid_densities()[k + 1]);
    CHECK(spectral_density(tab, g.half_range * 3.0) == 0.0);
  }

  SUBCASE("renormalization is recorded") {
    const Spectrum scaled = Spectrum::tabulated(2e15, sp.grid(), 3.0 * sp.grid_densities());
    CHECK(scaled.applied_scale() == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(scaled.grid().step() * scaled.grid_densities().sum() == doctest::Approx(1.0));
    CHECK(scaled.effective_half_width() == doctest::Approx(1e14).epsilon(1e-6));
  }

  SUBCASE("asymmetric and negative densities are rejected") {
    ArrayXd skewed = sp.grid_densities();
    skewed[40] *= 1.01;
    CHECK_THROWS_AS(Spectrum::tabulated(2e15, sp.grid(), skewed), contract_error);
    ArrayXd negative = sp.grid_densities();
    negative[128] = -negative.maxCoeff();
    CHECK_THROWS_AS(Spectrum::tabulated(2e15, sp.grid(), negative), contract_error);
  }
}

TEST_CASE("tabulated spectrum file round trip") {
  const Spectrum sp = Spectrum::gaussian(2e15, 1e14, 6.0, 128);
  const std::string path = "tab_spectrum_test.txt";
  {
    std::ofstream out(path);
    out << "# detuning_rad_per_s density\n";
    out.precision(17);
    for (int k = 0; k < sp.grid().n_points; ++k)
      out << sp.grid().omega(k) << " " << sp.grid_densities()[k] << "\n";
  }
  const Spectrum loaded = load_tabulated_spectrum(path, 2e15);
  CHECK_FALSE(loaded.is_gaussian());
  CHECK(loaded.grid().n_points == 128);
  CHECK((loaded.grid_densities() - sp.grid_densities()).abs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(load_tabulated_spectrum("does_not_exist.txt", 2e15), io_error);

  {
    std::ofstream out("tab_spectrum_bad.txt");
    for (int k = 0; k < 100; ++k) out << k << " 1.0\n";  // not a power of two
  }
  CHECK_THROWS_AS(load_tabulated_spectrum("tab_spectrum_bad.txt", 2e15), config_error);
}
