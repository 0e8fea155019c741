#pragma once

// Noise spectral functions of d_x = e x under Bohmian (SQM) dynamics.
//
// With r and theta conserved and phi(t) = phi0 + Omega t, the two-time
// correlator is Phi(tau) = E[(1/2) r0^2 sin^2(theta0) cos(Omega tau)] and
// the spectrum on omega > 0 is S(omega) = (1/4) E[r0^2 sin^2(theta0)
// delta(omega - Omega)]. All spectra are returned in units of e^2 a0^2/omega0.

#include <boost/multiprecision/cpp_int.hpp>
#include <span>
#include <vector>

#include "bohm.hpp"
#include "numerics.hpp"
#include "spectral_types.hpp"

namespace dipole_noise::sqm {

using Rational = boost::multiprecision::cpp_rational;
using numerics::QuadSpec;

/// c_nlm = n^4 (2l+1) (l-m)! ((2m-1)!!)^2 (n-l-1)! / (2 n m (l+m)! ((n+l)!)^3).
/// Requires m > 0.
Rational coefficient_c_exact(const HydrogenState& state);
double coefficient_c(const HydrogenState& state);

/// z_{n,m}(omega) = (2/n) sqrt(m omega0 / omega).
double z_variable(int n, int m, double omega);

/// Coefficient of S_{n,n-1,n-1} = c_n (omega0/omega)^{n+2} z K1(z), printed form.
Rational max_m_family_coefficient(int n);

/// The same coefficient obtained by reducing the general integral formula
/// (Gegenbauer factor 1, constant Laguerre factor).
Rational max_m_family_coefficient_from_general(int n);

/// Coefficient of S_{n,n-1,n-2} = cbar_n (omega0/omega)^{n+1} z^2 K2(z),
/// obtained from the general integral formula. This is the value the closed
/// form uses.
Rational second_family_coefficient(int n);

/// cbar_n as printed in the literature expression
/// c_{n,n-1,n-2} [(2n-1)! (2n-3)!!]^2 4(n-2) / (128 n^2). Kept only to
/// document that it does not reproduce the general formula.
Rational second_family_coefficient_printed(int n);

/// True for (2,1,1), (3,2,2), (3,2,1), (3,1,1), (n,n-1,n-1) and (n,n-1,n-2), m > 0.
bool has_closed_form(const HydrogenState& state);

/// Closed Bessel-K expression. Throws UnsupportedStateError for other states
/// and DomainError for omega <= 0.
double spectral_closed(const HydrogenState& state, double omega);

/// The general one-dimensional integral, evaluated after rho = z cosh(u)
/// removes the 1/xi endpoint singularity. Requires m > 0, omega > 0.
double spectral_general(const HydrogenState& state, double omega,
                        const QuadSpec& spec = {});

/// Mean of spectral_general over [lo, hi], for comparing with histograms.
double spectral_bin_average(const HydrogenState& state, double lo, double hi,
                            const QuadSpec& spec = {});

/// Deterministic spectrum on a frequency grid. For m = 0 the result carries
/// only the delta line (weight <x^2>) and no samples. Throws DomainError for
/// m < 0 (use S_{n,l,-m} = S_{n,l,m}).
SpectralFunction spectrum(const HydrogenState& state, std::span<const double> omegas,
                          SpectrumMethod method, const QuadSpec& spec = {});

/// Weighted-histogram Monte Carlo estimate: each trajectory contributes
/// r0^2 sin^2(theta0) / 4 to the bin containing its Omega. `edges` are
/// strictly increasing positive bin edges. Empty bins have value 0 and an
/// infinite standard error.
SpectralFunction spectral_mc(const HydrogenState& state, std::span<const double> edges,
                             const bohm::TrajectoryEnsemble& ensemble,
                             int workers = 0);

struct CorrelationPoint {
  double tau;
  double value;
  double std_error;
};

/// Phi(tau) = E[(1/2) r0^2 sin^2(theta0) cos(Omega tau)], with the phi0
/// average taken analytically and the (r0, theta0) average by Monte Carlo.
std::vector<CorrelationPoint> correlation_sqm(const HydrogenState& state,
                                              std::span<const double> taus,
                                              const bohm::TrajectoryEnsemble& ensemble,
                                              int workers = 0);

/// Leading coefficient of S ~ C (omega0/omega)^{3+m}. Requires m > 0.
double asymptotic_coeff_sqm(const HydrogenState& state, const QuadSpec& spec = {});

/// Power-law tail (C, 3 + m) of the SQM spectrum.
PowerLawTail tail_sqm(const HydrogenState& state, const QuadSpec& spec = {});

/// gamma^(k) = integral over the whole line of omega^k S(omega).
/// Odd k gives exact 0; k = 0 gives <x^2>; k = 2 gives m / (2 n^3) in units
/// of e^4 / (mu a0); k >= 2 + |m| is divergent; other even k are
/// (m^k / 2) <(r sin theta)^{2-2k}> by quadrature.
Moment moment_sqm(const HydrogenState& state, int k, const QuadSpec& spec = {});

/// (m^k / 2) <r^{2-2k}> <sin^{2-2k}(theta)> by quadrature, for even
/// 0 <= k < 2 + |m|. Independent of the closed forms used by moment_sqm.
double moment_sqm_quadrature(const HydrogenState& state, int k, const QuadSpec& spec = {});

}  // namespace dipole_noise::sqm
