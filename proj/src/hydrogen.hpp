#pragma once

// Hydrogen bound states in internal units hbar = mu = e = a0 = 1, so the
// natural frequency omega0 = hbar / (mu a0^2) is 1 as well.

#include <compare>
#include <string>

#include "numerics.hpp"

namespace dipole_noise::hydrogen {

struct UnitSystem {
  static constexpr double a0 = 1.0;
  static constexpr double mu = 1.0;
  static constexpr double e = 1.0;
  static constexpr double hbar = 1.0;
  static constexpr double omega0 = hbar / (mu * a0 * a0);
};

/// Quantum numbers |n l m> of a bound state. Construction validates
/// n >= 1, 0 <= l <= n - 1, |m| <= l.
class HydrogenState {
 public:
  HydrogenState(int n, int l, int m);

  int n() const noexcept { return n_; }
  int l() const noexcept { return l_; }
  int m() const noexcept { return m_; }

  /// "n,l,m"
  std::string label() const;

  /// Parses "n,l,m" (whitespace tolerated). Throws DomainError.
  static HydrogenState parse(const std::string& text);

  friend auto operator<=>(const HydrogenState&, const HydrogenState&) = default;

 private:
  int n_;
  int l_;
  int m_;
};

/// chi_nl(r) with rho = 2r/n and the old-convention Laguerre polynomial
/// L_{n+l}^{2l+1}; evaluated in log space so large n does not overflow.
double radial_wavefunction(int n, int l, double r);
double radial_wavefunction(const HydrogenState& state, double r);

/// Unit normalisation of Y_lm = N_lm P_l^|m|(cos theta) e^{i m phi} on the sphere.
double spherical_norm(int l, int m);

/// |psi_nlm(r, theta)|^2 (independent of phi).
double density(const HydrogenState& state, double r, double theta);

/// E_n = -omega0 / (2 n^2).
double energy(int n);

/// omega_MN = E_M - E_N.
double transition_frequency(const HydrogenState& to, const HydrogenState& from);

/// Radius beyond which every |chi_nl|^2 r^k integrand used here is negligible.
double radial_cutoff(int n);

/// Integral of chi_{n'l'} chi_{nl} r^(2 + power) over [0, r_max].
double radial_integral(int n_bra, int l_bra, int n_ket, int l_ket, int power,
                       const numerics::QuadSpec& spec = {});

/// <l' m'| sin(theta) cos(phi) |l m> for the Y_lm convention above. Exact;
/// zero unless l' = l +- 1 and m' = m +- 1.
double angular_x_amplitude(int l_bra, int m_bra, int l_ket, int m_ket);

/// <n'l'm'| x |n l m>.
double dipole_x_matrix_element(const HydrogenState& bra,
                               const HydrogenState& ket,
                               const numerics::QuadSpec& spec = {});

/// The bracket 1 - (l+m+1)(l-m+1)/((2l+1)(2l+3)) - (l+m)(l-m)/((2l+1)(2l-1)),
/// equal to 2 <sin^2(theta) cos^2(phi)>_lm.
double angular_bracket(int l, int m);

/// <x^2>_nlm in a0^2.
double x_squared_expectation(const HydrogenState& state);

/// <x^2 / r^3>_nlm = <1/r> <sin^2 cos^2> = angular_bracket / (2 n^2).
double x2_over_r3_expectation(const HydrogenState& state);

/// Same expectation by radial quadrature of <1/r> times the exact angular
/// average; an independent route to x2_over_r3_expectation.
double x2_over_r3_expectation_quadrature(const HydrogenState& state,
                                         const numerics::QuadSpec& spec = {});

}  // namespace dipole_noise::hydrogen
