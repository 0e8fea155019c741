#pragma once

// Standard quantum-mechanical noise spectrum of d_x = e x: a sum of lines
// at the bound-state transition frequencies plus a continuum that is only
// characterised through its high-frequency tail.

#include <vector>

#include "numerics.hpp"
#include "spectral_types.hpp"

namespace dipole_noise::qm {

using numerics::QuadSpec;

struct Line {
  double omega;   // +omega_MN (emission side S+) or -omega_MN (S-)
  double weight;  // |<M|x|N>|^2 / 2, in a0^2
  HydrogenState partner;
};

struct LineSpectrum {
  HydrogenState state{1, 0, 0};
  int n_max = 1;
  std::vector<Line> lines;  // sorted by omega
  PowerLawTail tail;        // continuum asymptote

  double total_weight() const;
};

/// All dipole-allowed lines to bound states with n' <= n_max. Each partner
/// contributes a pair of lines at +-omega_MN with weight |x_MN|^2 / 2.
/// Degenerate partners (n' = n) give a pair at omega = 0.
LineSpectrum line_spectrum(const HydrogenState& state, int n_max,
                           const QuadSpec& spec = {});

/// Symmetrised bound-state correlator sum_lines weight cos(omega tau).
double correlation_qm(const LineSpectrum& lines, double tau);
double correlation_qm(const HydrogenState& state, double tau, int n_max);

/// gamma^(k): odd k -> 0; k = 0 -> <x^2>; k = 2 -> <x^2 / r^3> in units of
/// e^4 / (mu a0), the full (bound plus continuum) second moment; divergent
/// when k + 1 >= 4 + l + 1/2. Other k have no closed form (DomainError).
Moment moment_qm(const HydrogenState& state, int k);

/// (1/n^2) times the angular bracket: the second moment exactly as it is
/// printed in the literature expression. It is twice <x^2 / r^3>, the value
/// obtained from sum |x_MN|^2 omega_MN^2 = <p_x^2>.
double qm_second_moment_printed(const HydrogenState& state);

/// C_lm^(l') = sum over m' of |<l' m'| sin(theta) cos(phi) |l m>|^2; zero
/// unless l' = l +- 1.
double angular_factor(int l, int m, int l_prime);

/// (C', 4 + l + 1/2) with S_QM ~ C' (omega0/omega)^{4+l+1/2}. The Legendre
/// derivative entering C' is cross-checked against a finite difference of
/// the hypergeometric series; a mismatch throws ConvergenceError.
PowerLawTail tail_coeff_qm(const HydrogenState& state);

}  // namespace dipole_noise::qm
