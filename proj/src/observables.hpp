#pragma once

#include <optional>
#include <span>

#include "numerics.hpp"
#include "qm_spectra.hpp"
#include "spectral_types.hpp"

namespace dipole_noise::observables {

inline constexpr double kAlphaQed = 1.0 / 137.035999;

/// Allowed disagreement between the last sample and the tail model before
/// the tail is trusted to extend the integral.
inline constexpr double kTailMatchTolerance = 2e-2;

/// Allowed weight omega^{k+1} S(omega) at the lowest sample, relative to
/// the moment, before the grid counts as starting too late.
inline constexpr double kHeadTolerance = 1e-7;

/// gamma^(k) = integral over the whole line of omega^k S, using evenness.
/// Sampled spectra are integrated in ln(omega) (composite Simpson on
/// uniform log grids, trapezoid otherwise) and extended past the last
/// sample by the power-law tail; histograms are summed bin by bin.
/// Throws CoverageError when the grid starts or ends too early.
Moment numeric_moment(const SpectralFunction& spectrum, int k);

/// Sum of weight * omega^k over bound-state lines (both signs). This is
/// only the bound-state part of the moment; the continuum is not included.
Moment numeric_moment(const qm::LineSpectrum& lines, int k);

/// sigma_tot = 8 pi^2 alpha omega S(omega).
double cross_section(double spectral_value, double omega, double alpha = kAlphaQed);

struct AsymptoteFit {
  double exponent;     // slope of ln S against ln omega
  double coefficient;  // exp(intercept)
  double r_squared;
  std::size_t points;
};

/// Least squares in log-log coordinates over samples with lo <= omega <= hi.
/// Needs at least 10 such samples, all positive.
AsymptoteFit fit_asymptote(const SpectralFunction& spectrum, double lo, double hi);

struct SemiclassicalComparison {
  // n^2 gamma^(2) in units of e^4 / (2 a0 mu).
  double n2_gamma2_sqm;
  double n2_gamma2_qm;
  double ratio;  // qm / sqm
};

struct MomentReport {
  HydrogenState state{1, 0, 0};
  /// m < 0 is mapped to |m| by the S(n,l,-m) = S(n,l,m) symmetry.
  HydrogenState sqm_state{1, 0, 0};
  int n_max = 1;
  double gamma0 = 0.0;
  double gamma0_numeric_sqm = 0.0;
  Moment gamma2_sqm = Moment::finite(0.0);
  Moment gamma2_numeric_sqm = Moment::finite(0.0);
  Moment gamma2_qm = Moment::finite(0.0);
  double gamma2_qm_quadrature = 0.0;
  double gamma2_qm_printed = 0.0;
  double gamma0_bound_lines = 0.0;
  double gamma2_bound_lines = 0.0;
  std::optional<PowerLawTail> tail_sqm;  // absent for m = 0
  PowerLawTail tail_qm;
  std::optional<SemiclassicalComparison> semiclassical;  // (n, n-1, n-1), n >= 2
};

/// Grid that resolves an SQM spectrum for numeric moments: log-uniform,
/// from z = 60 + 4(3 + |m|) down to z = 10^-3.5, 100 points per decade.
std::vector<double> moment_grid(const HydrogenState& state);

/// Both theories side by side: gamma^(0), gamma^(2) and tail exponents.
MomentReport compare_theories(const HydrogenState& state, int n_max,
                              const numerics::QuadSpec& spec = {});

}  // namespace dipole_noise::observables
