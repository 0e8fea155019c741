#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "bohm.hpp"
#include "errors.hpp"
#include "sqm_spectra.hpp"

using namespace dipole_noise;
using namespace dipole_noise::sqm;
using numerics::integrate;
using numerics::kInfinity;

namespace {

constexpr double kPi = std::numbers::pi;

double density_cyl(const HydrogenState& st, double s, double z) {
  return hydrogen::density(st, std::hypot(s, z), std::atan2(s, z));
}

// Direct oracle: S(omega) = (1/4) E[s^2 delta(omega - m/s^2)] with s the
// cylindrical radius. The delta fixes s* = sqrt(m/omega) and contributes
// s*^3 / (2m), leaving one integral along z.
double spectrum_cylindrical(const HydrogenState& st, double omega) {
  const double m = st.m();
  const double s = std::sqrt(m / omega);
  const double line = 2.0 * integrate([&](double z) { return density_cyl(st, s, z); }, 0.0,
                                      hydrogen::radial_cutoff(st.n()), {1e-11, 1e-300, 4000});
  return 0.25 * 2 * kPi * std::pow(s, 6) / (2 * m) * line;
}

// Large-omega limit of the oracle: |psi|^2 ~ s^{2m} f(z) near the axis.
double asymptote_cylindrical(const HydrogenState& st) {
  const double m = st.m();
  const double s = 1e-5;
  const int l = st.l(), mm = st.m();
  // |psi|^2 / s^{2m} with P_l^m = (1 - x^2)^{m/2} d^m P_l, avoiding 1 - cos^2 near the axis.
  auto reduced = [&](double z) {
    const double r = std::hypot(s, z);
    const double rad = hydrogen::radial_wavefunction(st.n(), l, r);
    const double dmp = numerics::double_factorial_odd(mm) *
                       numerics::gegenbauer(l - mm, mm + 0.5, z / r);
    const double y = hydrogen::spherical_norm(l, mm) * dmp / std::pow(r, mm);
    return rad * rad * y * y;
  };
  const double line =
      2.0 * integrate(reduced, 0.0, hydrogen::radial_cutoff(st.n()), {1e-10, 1e-16, 4000});
  return kPi / (4 * m) * std::pow(m, 3 + m) * line;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return g;
}

}  // namespace

TEST_CASE("coefficient c_nlm") {
  CHECK(coefficient_c_exact(HydrogenState(2, 1, 1)) == Rational(1, 36));
  CHECK(coefficient_c_exact(HydrogenState(3, 2, 1)) == Rational(1, 153600));
  CHECK_THROWS_AS(coefficient_c(HydrogenState(2, 1, 0)), DomainError);
  CHECK_THROWS_AS(coefficient_c(HydrogenState(2, 1, -1)), DomainError);
  CHECK(z_variable(2, 1, 1.0) == doctest::Approx(1.0));
  CHECK(z_variable(3, 2, 2.0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("family coefficients") {
  CHECK(max_m_family_coefficient(2) == Rational(1, 128));
  CHECK(max_m_family_coefficient(3) == Rational(1, 2187));
  for (int n = 2; n <= 12; ++n) {
    CHECK(max_m_family_coefficient(n) == max_m_family_coefficient_from_general(n));
  }
  CHECK(second_family_coefficient(3) == Rational(1, 3888));
  // The literature coefficient disagrees with the general formula.
  CHECK(second_family_coefficient_printed(3) / second_family_coefficient(3) == Rational(729, 64));
  CHECK_THROWS_AS(second_family_coefficient(2), DomainError);
}

TEST_CASE("closed forms agree with the general integral") {
  const auto grid = log_grid(1e-2, 1e3, 50);
  for (const HydrogenState st :
       {HydrogenState(2, 1, 1), HydrogenState(3, 2, 2), HydrogenState(3, 2, 1),
        HydrogenState(3, 1, 1), HydrogenState(4, 3, 3), HydrogenState(4, 3, 2),
        HydrogenState(5, 4, 4), HydrogenState(5, 4, 3), HydrogenState(8, 7, 6)}) {
    REQUIRE(has_closed_form(st));
    for (double w : grid) {
      const double a = spectral_closed(st, w);
      const double b = spectral_general(st, w);
      CHECK(a > 0.0);
      CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
    }
  }
  CHECK(spectral_general(HydrogenState(2, 1, 1), 1.0) ==
        doctest::Approx(numerics::bessel_k(1, 1.0) / 128).epsilon(1e-12));
}

TEST_CASE("general integral agrees with the cylindrical-shell oracle") {
  for (const HydrogenState st : {HydrogenState(2, 1, 1), HydrogenState(3, 1, 1),
                                 HydrogenState(4, 1, 1), HydrogenState(4, 2, 1),
                                 HydrogenState(5, 3, 2), HydrogenState(3, 2, 1)}) {
    for (double w : {0.005, 0.05, 0.3, 1.0, 4.0}) {
      CHECK(spectral_general(st, w) == doctest::Approx(spectrum_cylindrical(st, w)).epsilon(1e-7));
    }
  }
}

TEST_CASE("closed forms reject unsupported states and bad frequencies") {
  CHECK_FALSE(has_closed_form(HydrogenState(4, 1, 1)));
  CHECK_FALSE(has_closed_form(HydrogenState(3, 2, 0)));
  CHECK_THROWS_AS(spectral_closed(HydrogenState(4, 1, 1), 1.0), UnsupportedStateError);
  CHECK_THROWS_AS(spectral_closed(HydrogenState(2, 1, 1), 0.0), DomainError);
  CHECK_THROWS_AS(spectral_general(HydrogenState(2, 1, 1), -1.0), DomainError);
  CHECK_THROWS_AS(spectral_general(HydrogenState(2, 1, 0), 1.0), DomainError);
}

TEST_CASE("spectrum container") {
  const std::vector<double> grid{0.1, 1.0, 10.0};
  const auto s = spectrum(HydrogenState(2, 1, 1), grid, SpectrumMethod::ClosedForm);
  CHECK(s.samples.size() == 3);
  CHECK(std::isnan(s.samples[0].std_error));
  REQUIRE(s.tail.has_value());
  CHECK(s.tail->exponent == 4.0);
  CHECK_FALSE(s.delta_line.has_value());

  const auto d = spectrum(HydrogenState(2, 1, 0), grid, SpectrumMethod::GeneralQuadrature);
  CHECK(d.samples.empty());
  REQUIRE(d.delta_line.has_value());
  CHECK(d.delta_line->omega == 0.0);
  CHECK(d.delta_line->weight == doctest::Approx(6.0));

  CHECK_THROWS_AS(spectrum(HydrogenState(2, 1, -1), grid, SpectrumMethod::ClosedForm),
                  DomainError);
  const std::vector<double> bad{1.0, 1.0};
  CHECK_THROWS_AS(spectrum(HydrogenState(2, 1, 1), bad, SpectrumMethod::ClosedForm), DomainError);
  CHECK_THROWS_AS(spectrum(HydrogenState(4, 1, 1), grid, SpectrumMethod::ClosedForm),
                  UnsupportedStateError);
}

TEST_CASE("high-frequency asymptote") {
  CHECK(asymptotic_coeff_sqm(HydrogenState(2, 1, 1)) == doctest::Approx(1.0 / 128).epsilon(1e-12));
  CHECK(asymptotic_coeff_sqm(HydrogenState(3, 2, 2)) == doctest::Approx(1.0 / 2187).epsilon(1e-12));
  CHECK(asymptotic_coeff_sqm(HydrogenState(3, 2, 1)) == doctest::Approx(1.0 / 1944).epsilon(1e-12));
  CHECK(asymptotic_coeff_sqm(HydrogenState(3, 1, 1)) == doctest::Approx(5.0 / 1944).epsilon(1e-12));
  for (const HydrogenState st : {HydrogenState(2, 1, 1), HydrogenState(3, 1, 1),
                                 HydrogenState(3, 2, 1), HydrogenState(4, 2, 1),
                                 HydrogenState(5, 3, 2)}) {
    const double c = asymptotic_coeff_sqm(st);
    CHECK(c == doctest::Approx(asymptote_cylindrical(st)).epsilon(1e-6));
    // S(omega) omega^{3+m} approaches the coefficient.
    const double w = 1e7;
    CHECK(spectral_general(st, w) * std::pow(w, 3 + st.m()) == doctest::Approx(c).epsilon(1e-3));
  }
}

TEST_CASE("SQM moments") {
  const HydrogenState st(2, 1, 1);
  CHECK(moment_sqm(st, 0).value() == doctest::Approx(12.0));
  CHECK(moment_sqm(st, 2).value() == doctest::Approx(1.0 / 16).epsilon(1e-14));
  CHECK(moment_sqm(st, 1).value() == 0.0);
  CHECK(moment_sqm(st, 1).reason() == "evenness");
  CHECK(moment_sqm(st, 4).is_divergent());
  CHECK(moment_sqm(st, 4).value() == kInfinity);
  CHECK(moment_sqm(HydrogenState(3, 2, 2), 4).is_divergent());
  CHECK_FALSE(moment_sqm(HydrogenState(4, 3, 3), 4).is_divergent());
  CHECK(moment_sqm(HydrogenState(2, 1, 0), 2).value() == 0.0);
  CHECK(moment_sqm(HydrogenState(3, 2, -2), 2).value() == doctest::Approx(1.0 / 27));
  CHECK_THROWS_AS(moment_sqm(st, -2), DomainError);
  for (const HydrogenState s : {HydrogenState(2, 1, 1), HydrogenState(3, 2, 1),
                                HydrogenState(4, 3, 3), HydrogenState(5, 2, -2)}) {
    const double n = s.n();
    CHECK(moment_sqm_quadrature(s, 2) == doctest::Approx(std::abs(s.m()) / (2 * n * n * n)).epsilon(1e-9));
    CHECK(moment_sqm_quadrature(s, 0) ==
          doctest::Approx(hydrogen::x_squared_expectation(s)).epsilon(1e-9));
  }
}

TEST_CASE("Monte Carlo histogram agrees with bin averages") {
  const HydrogenState st(2, 1, 1);
  const auto ens = bohm::sample_qeh(st, 200000, {2024, 0}, 4);
  const auto edges = log_grid(0.05, 20.0, 21);
  const auto mc = spectral_mc(st, edges, ens, 4);
  REQUIRE(mc.samples.size() == 20);
  CHECK(mc.bin_edges.size() == 21);
  CHECK(mc.ensemble_size == 200000);
  int within = 0;
  for (std::size_t b = 0; b < 20; ++b) {
    const double exact = spectral_bin_average(st, edges[b], edges[b + 1]);
    if (std::abs(mc.samples[b].value - exact) <= 3 * mc.samples[b].std_error) ++within;
  }
  CHECK(within >= 18);
  // Worker count does not change the histogram.
  const auto mc1 = spectral_mc(st, edges, ens, 1);
  for (std::size_t b = 0; b < 20; ++b) CHECK(mc1.samples[b].value == mc.samples[b].value);
  // Empty bins.
  const std::vector<double> far{1e6, 2e6};
  const auto empty = spectral_mc(st, far, ens, 2);
  CHECK(empty.samples[0].value == 0.0);
  CHECK(std::isinf(empty.samples[0].std_error));
  CHECK_THROWS_AS(spectral_mc(HydrogenState(3, 2, 2), edges, ens), DomainError);
  CHECK_THROWS_AS(spectral_mc(st, std::vector<double>{1.0}, ens), DomainError);
}

TEST_CASE("correlation function") {
  const HydrogenState st(2, 1, 1);
  const auto ens = bohm::sample_qeh(st, 200000, {5, 1}, 4);
  const std::vector<double> taus{0.0, 0.5, 2.0};
  const auto c = correlation_sqm(st, taus, ens, 3);
  REQUIRE(c.size() == 3);
  CHECK(std::abs(c[0].value - 12.0) < 3 * c[0].std_error);
  // Phi(tau) = 2 int_0^inf S(omega) cos(omega tau) d omega.
  for (std::size_t j = 1; j < 3; ++j) {
    const double tau = taus[j];
    const double oracle =
        2 * integrate([&](double w) { return spectral_general(st, w) * std::cos(w * tau); }, 0.0,
                      kInfinity, {1e-8, 1e-12, 4000});
    CHECK(std::abs(c[j].value - oracle) < 4 * c[j].std_error);
    CHECK(c[j].value < c[0].value);
  }
  // m = 0: no motion, so the correlation stays at <x^2>.
  const HydrogenState st0(2, 1, 0);
  const auto ens0 = bohm::sample_qeh(st0, 100000, {5, 1}, 2);
  const auto c0 = correlation_sqm(st0, taus, ens0, 2);
  CHECK(c0[0].value == c0[1].value);
  CHECK(c0[0].value == c0[2].value);
  CHECK(std::abs(c0[0].value - 6.0) < 3 * c0[0].std_error);
}
