#include <cmath>
#include <numbers>

#include <doctest.h>

#include "errors.hpp"
#include "qm_spectra.hpp"

using namespace dipole_noise;
using namespace dipole_noise::qm;
using numerics::integrate;

namespace {

constexpr double kPi = std::numbers::pi;

// <p_x^2> = int |d psi / dx|^2. For psi = R(r) T(theta) e^{i m phi} the phi
// integral leaves pi (A^2 + B^2) with
//   A = sin(theta) R' T + cos(theta) R T' / r,   B = m R T / (r sin(theta)).
double px2_expectation(const HydrogenState& s) {
  const int n = s.n(), l = s.l(), m = s.m();
  const double h = 1e-5;
  auto R = [&](double r) { return hydrogen::radial_wavefunction(n, l, r); };
  auto T = [&](double t) {
    return hydrogen::spherical_norm(l, m) * numerics::assoc_legendre(l, std::abs(m), std::cos(t));
  };
  const numerics::QuadSpec spec{1e-10, 1e-15, 4000};
  return integrate(
      [&](double t) {
        const double st = std::sin(t), ct = std::cos(t);
        const double tv = T(t);
        const double dt = (T(t + h) - T(t - h)) / (2 * h);
        return integrate(
                   [&](double r) {
                     const double rv = R(r);
                     const double dr = (R(r + h) - R(r - h)) / (2 * h);
                     const double a = st * dr * tv + ct * rv * dt / r;
                     const double b = m * rv * tv / (r * st);
                     return kPi * (a * a + b * b) * r * r;
                   },
                   h, hydrogen::radial_cutoff(n), spec) *
               st;
      },
      h, kPi - h, spec);
}

}  // namespace

TEST_CASE("bound-state lines come in +- pairs with non-negative weight") {
  const HydrogenState st(2, 1, 1);
  const auto ls = line_spectrum(st, 15);
  REQUIRE(!ls.lines.empty());
  CHECK(ls.lines.size() % 2 == 0);
  for (std::size_t i = 1; i < ls.lines.size(); ++i) CHECK(ls.lines[i - 1].omega <= ls.lines[i].omega);
  for (std::size_t i = 0; i < ls.lines.size(); ++i) {
    const auto& line = ls.lines[i];
    CHECK(line.weight >= 0.0);
    CHECK(std::abs(line.partner.l() - st.l()) == 1);
    CHECK(std::abs(line.partner.m() - st.m()) == 1);
    int mirrored = 0;
    for (std::size_t j = 0; j < ls.lines.size(); ++j) {
      const auto& other = ls.lines[j];
      mirrored += j != i && other.omega == -line.omega && other.weight == line.weight &&
                  other.partner == line.partner;
    }
    CHECK(mirrored == 1);
  }
  // 2p -> 1s at -3/8 with |x|^2 / 2.
  const double z10 = 128.0 * std::sqrt(2.0) / 243.0;
  bool found = false;
  for (const auto& line : ls.lines) {
    if (line.partner == HydrogenState(1, 0, 0) && line.omega < 0) {
      found = true;
      CHECK(line.omega == doctest::Approx(-0.375));
      CHECK(line.weight == doctest::Approx(z10 * z10 / 4).epsilon(1e-10));
    }
  }
  CHECK(found);
  CHECK_THROWS_AS(line_spectrum(st, 1), DomainError);
}

TEST_CASE("ground state lines all lie at positive frequency") {
  const auto ls = line_spectrum(HydrogenState(1, 0, 0), 10);
  double positive = 0.0;
  for (const auto& line : ls.lines) {
    if (line.omega > 0) positive += line.weight;
  }
  CHECK(positive == doctest::Approx(ls.total_weight() / 2));
  // <x^2> = 1; the 2p line alone carries 2^15/3^10 and the continuum the rest.
  CHECK(ls.total_weight() < 1.0);
  CHECK(ls.total_weight() > std::pow(2.0, 15) / std::pow(3.0, 10));
}

TEST_CASE("partial sums rise toward the full moments") {
  const HydrogenState st(3, 2, 1);
  const double x2 = hydrogen::x_squared_expectation(st);
  const double p2 = moment_qm(st, 2).value();
  double prev0 = 0.0, prev2 = 0.0;
  for (int nmax : {3, 6, 12, 24}) {
    const auto ls = line_spectrum(st, nmax);
    double g2 = 0.0;
    for (const auto& line : ls.lines) g2 += line.weight * line.omega * line.omega;
    CHECK(ls.total_weight() >= prev0 - 1e-12);
    CHECK(g2 >= prev2 - 1e-12);
    CHECK(ls.total_weight() <= x2 * (1 + 1e-10));
    CHECK(g2 <= p2 * (1 + 1e-10));
    prev0 = ls.total_weight();
    prev2 = g2;
  }
}

TEST_CASE("bound-state correlator is even and starts at the total weight") {
  const auto ls = line_spectrum(HydrogenState(2, 1, 1), 12);
  for (double tau : {0.3, 1.7, 9.0}) {
    CHECK(correlation_qm(ls, tau) == doctest::Approx(correlation_qm(ls, -tau)));
    CHECK(correlation_qm(ls, tau) <= ls.total_weight() + 1e-12);
  }
  CHECK(correlation_qm(ls, 0.0) == doctest::Approx(ls.total_weight()));
  CHECK(correlation_qm(HydrogenState(2, 1, 1), 0.0, 12) == doctest::Approx(ls.total_weight()));
}

TEST_CASE("angular factors") {
  CHECK(angular_factor(0, 0, 1) == doctest::Approx(1.0 / 3));
  CHECK(angular_factor(1, 1, 1) == 0.0);
  CHECK(angular_factor(1, 1, 3) == 0.0);
  for (int l = 0; l <= 6; ++l) {
    for (int m = -l; m <= l; ++m) {
      CHECK(angular_factor(l, m, l + 1) == doctest::Approx(angular_factor(l, -m, l + 1)));
      const double down = l > 0 ? angular_factor(l, m, l - 1) : 0.0;
      CHECK(angular_factor(l, m, l + 1) + down ==
            doctest::Approx(hydrogen::angular_bracket(l, m) / 2).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(angular_factor(1, 2, 2), DomainError);
}

TEST_CASE("QM second moment is <p_x^2> = <x^2/r^3>") {
  const HydrogenState st(2, 1, 1);
  CHECK(moment_qm(st, 2).value() == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(px2_expectation(st) == doctest::Approx(0.1).epsilon(1e-7));
  for (const HydrogenState s : {HydrogenState(3, 2, 2), HydrogenState(3, 1, 0),
                                HydrogenState(4, 2, -1)}) {
    CHECK(moment_qm(s, 2).value() == doctest::Approx(px2_expectation(s)).epsilon(1e-7));
  }
  // The literature expression is twice the quadrature value.
  CHECK(qm_second_moment_printed(st) == doctest::Approx(0.2));
  CHECK(qm_second_moment_printed(st) / moment_qm(st, 2).value() == doctest::Approx(2.0));
}

TEST_CASE("QM moments: parity, divergence, unsupported orders") {
  const HydrogenState st(2, 1, 1);
  CHECK(moment_qm(st, 0).value() == doctest::Approx(12.0));
  CHECK(moment_qm(st, 3).value() == 0.0);
  CHECK(moment_qm(st, 6).is_divergent());  // 7 >= 5.5
  CHECK(moment_qm(HydrogenState(1, 0, 0), 4).is_divergent());  // 5 >= 4.5
  CHECK_THROWS_AS(moment_qm(st, 4), DomainError);
  CHECK_THROWS_AS(moment_qm(st, -1), DomainError);
}

TEST_CASE("continuum tail") {
  for (const HydrogenState st : {HydrogenState(1, 0, 0), HydrogenState(2, 1, 1),
                                 HydrogenState(3, 2, -1), HydrogenState(5, 4, 4)}) {
    const auto tail = tail_coeff_qm(st);
    CHECK(tail.exponent == doctest::Approx(4.5 + st.l()));
    CHECK(tail.coefficient > 0.0);
    CHECK(std::isfinite(tail.coefficient));
    CHECK(tail_coeff_qm(HydrogenState(st.n(), st.l(), -st.m())).coefficient ==
          doctest::Approx(tail.coefficient));
  }
  CHECK(line_spectrum(HydrogenState(2, 1, 1), 4).tail.exponent == 5.5);
}
