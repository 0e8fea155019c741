#include <cmath>
#include <numbers>

#include <doctest.h>

#include "errors.hpp"
#include "numerics.hpp"

using namespace dipole_noise;
using namespace dipole_noise::numerics;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("quadrature reproduces elementary integrals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0) == doctest::Approx(9.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, kInfinity) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // Gaussian on the half line.
  CHECK(integrate([](double x) { return std::exp(-x * x); }, 0.0, kInfinity) ==
        doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-12));
  // Integrable endpoint singularity.
  CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-6, 1e-14, 4000}) ==
        doctest::Approx(2.0).epsilon(1e-6));
  // Zero by symmetry: the estimate bottoms out at the rounding floor.
  CHECK(std::abs(integrate([](double x) { return std::sin(x) * std::exp(-x * x); }, -3.0, 3.0)) <
        1e-14);
}

TEST_CASE("quadrature reports the error estimate when the budget runs out") {
  QuadSpec tight{1e-15, 0.0, 1};
  try {
    integrate([](double x) { return std::sin(50 * x); }, 0.0, 10.0, tight);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_error() > 0.0);
  }
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, {-1.0, 0.0, 10}), DomainError);
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, {1e-8, 0.0, 0}), DomainError);
}

TEST_CASE("old-convention Laguerre polynomials") {
  // L_q^q is the constant (-1)^q q!.
  CHECK(assoc_laguerre_old(3, 3, 0.7) == doctest::Approx(-6.0));
  CHECK(assoc_laguerre_old(5, 5, 2.3) == doctest::Approx(-120.0));
  // L_2(x) = x^2 - 4x + 2, so L_2^1 = 2x - 4.
  CHECK(assoc_laguerre_old(2, 1, 1.0) == doctest::Approx(-2.0));
  CHECK(assoc_laguerre_old(2, 0, 3.0) == doctest::Approx(-1.0));
  for (int q = 0; q <= 12; ++q) {
    for (int p = 0; p <= q; ++p) {
      for (double x : {0.0, 0.3, 1.7, 6.0, 15.0}) {
        const double modern = std::assoc_laguerre(q - p, p, x);
        const double expect = (p % 2 ? -1.0 : 1.0) * factorial(q) * modern;
        CHECK(assoc_laguerre_old(q, p, x) ==
              doctest::Approx(expect).epsilon(1e-10).scale(factorial(q)));
      }
    }
  }
  // Modern polynomials: integer order against the standard library, half-integer explicitly.
  CHECK(laguerre(4, 2.0, 1.3) == doctest::Approx(std::assoc_laguerre(4, 2, 1.3)).epsilon(1e-13));
  const double a = 2.5;
  const double x = 1.3;
  CHECK(laguerre(1, a, x) == doctest::Approx(1 + a - x));
  CHECK(laguerre(2, a, x) == doctest::Approx((x * x - 2 * (a + 2) * x + (a + 1) * (a + 2)) / 2));
}

TEST_CASE("Legendre functions carry no Condon-Shortley phase") {
  CHECK(assoc_legendre(1, 1, 0.6) == doctest::Approx(0.8));
  for (int l = 0; l <= 10; ++l) {
    for (int m = 0; m <= l; ++m) {
      for (double x : {-0.9, -0.2, 0.0, 0.35, 0.99}) {
        CHECK(assoc_legendre(l, m, x) ==
              doctest::Approx(std::assoc_legendre(l, m, x)).epsilon(1e-11).scale(1.0));
      }
    }
    CHECK(legendre(l, 0.4) == doctest::Approx(std::legendre(l, 0.4)).epsilon(1e-13));
  }
}

TEST_CASE("Gegenbauer polynomials") {
  const double a = 1.5;
  const double x = 0.3;
  CHECK(gegenbauer(0, a, x) == doctest::Approx(1.0));
  CHECK(gegenbauer(1, a, x) == doctest::Approx(2 * a * x));
  CHECK(gegenbauer(2, a, x) == doctest::Approx(2 * a * (a + 1) * x * x - a));
  // d^m P_l / dx^m = (2m-1)!! C_{l-m}^{(m+1/2)}.
  for (int l = 1; l <= 8; ++l) {
    for (int m = 1; m <= l; ++m) {
      for (double u : {-0.7, 0.1, 0.55}) {
        const double deriv = std::assoc_legendre(l, m, u) / std::pow(1 - u * u, 0.5 * m);
        CHECK(double_factorial_odd(m) * gegenbauer(l - m, m + 0.5, u) ==
              doctest::Approx(deriv).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("modified Bessel K") {
  CHECK(bessel_k(1, 1.0) == doctest::Approx(0.60190723019723457).epsilon(1e-14));
  for (int nu = 0; nu <= 6; ++nu) {
    for (double z : {1e-3, 0.1, 0.9, 1.9, 2.0, 2.1, 5.0, 20.0, 100.0, 600.0}) {
      const double expect = std::cyl_bessel_k(double(nu), z);
      CHECK(rel(bessel_k(nu, z), expect) < 1e-12);
      CHECK(rel(bessel_k_scaled(nu, z), expect * std::exp(z)) < 1e-12);
    }
  }
  // Integral representation K_nu(z) = int_0^inf exp(-z cosh u) cosh(nu u) du.
  for (int nu : {0, 2, 5}) {
    const double z = 0.8;
    const double integral = integrate(
        [&](double u) { return std::exp(-z * std::cosh(u)) * std::cosh(nu * u); }, 0.0, 40.0);
    CHECK(rel(bessel_k(nu, z), integral) < 1e-10);
  }
  CHECK(bessel_k_scaled(2, 1e5) > 0.0);
  CHECK_THROWS_AS(bessel_k(0, 0.0), DomainError);
}

TEST_CASE("Ferrers function closed forms at the origin match the series") {
  const double h = 1e-4;
  for (double nu : {2.5, 3.5, 4.5, 5.5, 6.5}) {
    for (double mu : {-0.5, -1.5, -2.5, -3.5}) {
      const double p0 = ferrers_p(nu, mu, 0.0);
      const double arg = 0.5 * (nu + mu + 1);
      if (arg <= 0 && arg == std::floor(arg)) {
        CHECK_THROWS_AS(legendre_p_at_zero(nu, mu), PoleError);
      } else {
        // The closed form is exactly zero where the series leaves rounding residue.
        CHECK(std::abs(legendre_p_at_zero(nu, mu) - p0) <= 1e-10 * std::abs(p0) + 1e-13);
      }
      const double fd = (ferrers_p(nu, mu, h) - ferrers_p(nu, mu, -h)) / (2 * h);
      CHECK(legendre_p_deriv_at_zero(nu, mu) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
  // Integer order reduces to the Legendre polynomial.
  CHECK(ferrers_p(3.0, 0.0, 0.4) == doctest::Approx(std::legendre(3, 0.4)).epsilon(1e-12));
  // P_1^{-1}(x) = sqrt(1 - x^2) / 2.
  CHECK(ferrers_p(1.0, -1.0, 0.6) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("Legendre derivative at the origin hits Gamma poles") {
  // The numerator Gamma((nu + mu)/2 + 1) has a pole when (nu + mu)/2 + 1 <= 0 is an integer.
  CHECK_THROWS_AS(legendre_p_deriv_at_zero(1.0, -5.0), PoleError);
  // The value at the origin vanishes for the orders the QM tail uses.
  for (int l = 0; l <= 5; ++l) {
    for (int lp : {l - 1, l + 1}) {
      if (lp < 0) continue;
      CHECK(legendre_p_at_zero(2.5 + l, -(lp + 0.5)) == 0.0);
      CHECK(legendre_p_deriv_at_zero(2.5 + l, -(lp + 0.5)) != 0.0);
    }
  }
}

TEST_CASE("factorials") {
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(10) == 3628800.0);
  CHECK(double_factorial_odd(0) == 1.0);
  CHECK(double_factorial_odd(1) == 1.0);
  CHECK(double_factorial_odd(4) == 105.0);
}
