#pragma once

// Special functions and adaptive quadrature.
//
// Conventions used throughout the library:
//   * Associated Laguerre polynomials use the old (unnormalised Rodrigues)
//     form L_q^p(x) = (d/dx)^p L_q(x), L_q(x) = e^x (d/dx)^q (x^q e^-x).
//     It relates to the modern polynomial by L_q^p = (-1)^p q! Lt_{q-p}^p.
//   * Associated Legendre functions P_l^m carry no Condon-Shortley phase,
//     so P_1^1(x) = +sqrt(1 - x^2).

#include <functional>
#include <limits>

namespace dipole_noise::numerics {

enum class PolynomialConvention { OldLaguerre };

inline constexpr PolynomialConvention kLaguerreConvention =
    PolynomialConvention::OldLaguerre;

struct QuadSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;

  /// Throws DomainError when the tolerances or the budget are invalid.
  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  int evaluations = 0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Globally adaptive 21-point Gauss-Kronrod quadrature of f over [a, b].
/// b may be +infinity; the half line is mapped onto [0, 1) by
/// x = a + t / (1 - t). Integrable endpoint singularities are tolerated only
/// in the sense that the nodes never touch the endpoints. Throws
/// ConvergenceError carrying the last error estimate when the subdivision
/// budget runs out.
QuadResult integrate_detailed(const std::function<double(double)>& f,
                              double a, double b, const QuadSpec& spec = {});

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadSpec& spec = {});

/// Old-convention associated Laguerre polynomial L_q^p(x), 0 <= p <= q.
double assoc_laguerre_old(int q, int p, double x);

/// Modern generalised Laguerre polynomial Lt_k^alpha(x) (three-term recurrence).
double laguerre(int k, double alpha, double x);

/// Associated Legendre function P_l^m(x), 0 <= m <= l, |x| <= 1, no
/// Condon-Shortley phase.
double assoc_legendre(int l, int m, double x);

/// Legendre polynomial P_l(x).
double legendre(int l, double x);

/// Gegenbauer (ultraspherical) polynomial C_k^(alpha)(x), alpha > 0.
double gegenbauer(int k, double alpha, double x);

/// Modified Bessel function of the second kind K_nu(z), integer nu >= 0.
/// Underflows to 0 for z beyond about 705. Throws DomainError for z <= 0.
double bessel_k(int nu, double z);

/// exp(z) K_nu(z); does not underflow for large z.
double bessel_k_scaled(int nu, double z);

/// P_nu^mu(0) for the associated Legendre function of the first kind
/// (Ferrers function), from the Gamma-function closed form.
double legendre_p_at_zero(double nu, double mu);

/// d/dx P_nu^mu(x) at x = 0, from the Gamma-function closed form.
/// Throws PoleError when a numerator Gamma argument is a non-positive integer.
double legendre_p_deriv_at_zero(double nu, double mu);

/// Ferrers function P_nu^mu(x), |x| < 1, from its hypergeometric series.
/// Slow but independent of the closed forms above; used as a cross-check.
double ferrers_p(double nu, double mu, double x);

/// n! as a double (exact up to 22!, correctly rounded beyond).
double factorial(int n);

/// (2k-1)!! with the convention (-1)!! = 1.
double double_factorial_odd(int k);

}  // namespace dipole_noise::numerics
