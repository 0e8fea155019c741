#include "observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "sqm_spectra.hpp"

namespace dipole_noise::observables {

namespace {

bool uniform_steps(std::span<const double> x) {
  if (x.size() < 3) return false;
  const double h = x[1] - x[0];
  for (std::size_t i = 2; i < x.size(); ++i) {
    if (std::abs((x[i] - x[i - 1]) - h) > 1e-9 * std::abs(h)) return false;
  }
  return true;
}

// Composite Simpson on a uniform grid; an odd number of intervals ends with
// the 3/8 rule on the last three.
double simpson(std::span<const double> y, double h) {
  const std::size_t intervals = y.size() - 1;
  std::size_t simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
  double sum = 0.0;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    sum += h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
  }
  if (intervals % 2 != 0) {
    const std::size_t i = simpson_end;
    sum += 3.0 * h / 8.0 * (y[i] + 3.0 * y[i + 1] + 3.0 * y[i + 2] + y[i + 3]);
  }
  return sum;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

}  // namespace

Moment numeric_moment(const SpectralFunction& spectrum, int k) {
  if (k < 0) throw DomainError("numeric_moment: k must be >= 0");
  if (k % 2 != 0) return Moment::finite(0.0, "evenness");
  const double delta =
      spectrum.delta_line && (k == 0 || spectrum.delta_line->omega != 0.0)
          ? spectrum.delta_line->weight * std::pow(spectrum.delta_line->omega, k)
          : 0.0;
  if (spectrum.samples.empty()) return Moment::finite(delta, "delta line");
  if (spectrum.tail && k + 1.0 >= spectrum.tail->exponent) {
    return Moment::divergent("tail exponent " + std::to_string(spectrum.tail->exponent));
  }

  const auto& samples = spectrum.samples;
  if (!spectrum.bin_edges.empty()) {
    const auto& e = spectrum.bin_edges;
    if (e.size() != samples.size() + 1) {
      throw DomainError("numeric_moment: bin edges do not match samples");
    }
    double sum = 0.0;
    for (std::size_t b = 0; b < samples.size(); ++b) {
      const double span = (std::pow(e[b + 1], k + 1) - std::pow(e[b], k + 1)) / (k + 1);
      sum += samples[b].value * span;
    }
    return Moment::finite(2.0 * sum + delta, "histogram");
  }

  if (samples.size() < 3) throw CoverageError("numeric_moment: need at least 3 samples");
  std::vector<double> t(samples.size()), f(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    t[i] = std::log(samples[i].omega);
    f[i] = std::pow(samples[i].omega, k + 1) * samples[i].value;
  }
  double body = uniform_steps(t) ? simpson(f, t[1] - t[0]) : trapezoid(t, f);

  if (!spectrum.tail) {
    throw CoverageError("numeric_moment: spectrum has no tail model");
  }
  const PowerLawTail& tail = *spectrum.tail;
  const auto& last = samples.back();
  const double model = tail.coefficient * std::pow(last.omega, -tail.exponent);
  if (!(std::abs(last.value / model - 1.0) <= kTailMatchTolerance)) {
    throw CoverageError("numeric_moment: samples end at omega = " + std::to_string(last.omega) +
                        " before the power-law tail applies");
  }
  const double p = tail.exponent - k - 1.0;
  const double tail_part = last.value * std::pow(last.omega, k + 1) / p;
  const double total = 2.0 * (body + tail_part);
  if (!(f.front() <= kHeadTolerance * std::abs(total))) {
    throw CoverageError("numeric_moment: samples start at omega = " +
                        std::to_string(samples.front().omega) +
                        " where the spectrum still carries weight");
  }
  return Moment::finite(total + delta, "quadrature");
}

Moment numeric_moment(const qm::LineSpectrum& lines, int k) {
  if (k < 0) throw DomainError("numeric_moment: k must be >= 0");
  if (k % 2 != 0) return Moment::finite(0.0, "evenness");
  if (k + 1.0 >= lines.tail.exponent) {
    return Moment::divergent("tail exponent " + std::to_string(lines.tail.exponent));
  }
  double sum = 0.0;
  for (const auto& line : lines.lines) {
    sum += line.weight * (k == 0 ? 1.0 : std::pow(line.omega, k));
  }
  return Moment::finite(sum, "bound-state lines");
}

double cross_section(double spectral_value, double omega, double alpha) {
  if (!(omega >= 0.0)) throw DomainError("cross_section: omega must be >= 0");
  if (!(spectral_value >= 0.0)) throw DomainError("cross_section: S must be >= 0");
  return 8.0 * std::numbers::pi * std::numbers::pi * alpha * omega * spectral_value;
}

AsymptoteFit fit_asymptote(const SpectralFunction& spectrum, double lo, double hi) {
  if (!(lo > 0.0 && hi > lo)) throw DomainError("fit_asymptote: window must satisfy 0 < lo < hi");
  std::vector<double> x, y;
  for (const auto& s : spectrum.samples) {
    if (s.omega < lo || s.omega > hi) continue;
    if (!(s.value > 0.0)) throw DomainError("fit_asymptote: non-positive sample in window");
    x.push_back(std::log(s.omega));
    y.push_back(std::log(s.value));
  }
  if (x.size() < 10) throw DomainError("fit_asymptote: fewer than 10 samples in window");
  const double count = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw DomainError("fit_asymptote: degenerate window");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    ss_res += r * r;
  }
  const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return {slope, std::exp(intercept), r2, x.size()};
}

std::vector<double> moment_grid(const HydrogenState& state) {
  const double n = state.n();
  const double am = std::abs(state.m());
  if (am == 0) throw DomainError("moment_grid: requires m != 0");
  // omega = 4 |m| / (n^2 z^2); S carries z^{2(3+m)} e^{-z}, which peaks near
  // z = 2(3+m), so the low end must sit well beyond that.
  const double z_hi = 60.0 + 4.0 * (3.0 + am);
  const double lo = 4.0 * am / (n * n * z_hi * z_hi);
  // Stop before S(omega) ~ C omega^{-(3+m)} leaves the normal double range.
  const double c = sqm::asymptotic_coeff_sqm(state);
  const double underflow = (std::log(c) - std::log(1e-280)) / (3.0 + am);
  const double hi = std::min(4.0 * am / (n * n) * 1e7, std::exp(underflow));
  const double decades = std::log10(hi / lo);
  const int points = static_cast<int>(std::ceil(decades * 100.0)) + 1;
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = lo * std::pow(10.0, decades * i / (points - 1));
  }
  return grid;
}

MomentReport compare_theories(const HydrogenState& state, int n_max,
                              const numerics::QuadSpec& spec) {
  MomentReport report;
  report.state = state;
  report.sqm_state = HydrogenState(state.n(), state.l(), std::abs(state.m()));
  report.n_max = n_max;
  report.gamma0 = hydrogen::x_squared_expectation(state);

  const HydrogenState& sq = report.sqm_state;
  report.gamma2_sqm = sqm::moment_sqm(sq, 2, spec);
  if (sq.m() == 0) {
    const SpectralFunction delta =
        sqm::spectrum(sq, {}, SpectrumMethod::GeneralQuadrature, spec);
    report.gamma0_numeric_sqm = numeric_moment(delta, 0).value();
    report.gamma2_numeric_sqm = numeric_moment(delta, 2);
  } else {
    const auto grid = moment_grid(sq);
    const SpectralFunction s =
        sqm::spectrum(sq, grid, SpectrumMethod::GeneralQuadrature, spec);
    report.gamma0_numeric_sqm = numeric_moment(s, 0).value();
    report.gamma2_numeric_sqm = numeric_moment(s, 2);
    report.tail_sqm = s.tail;
  }

  report.gamma2_qm = qm::moment_qm(state, 2);
  report.gamma2_qm_quadrature = hydrogen::x2_over_r3_expectation_quadrature(state, spec);
  report.gamma2_qm_printed = qm::qm_second_moment_printed(state);
  const qm::LineSpectrum lines = qm::line_spectrum(state, n_max, spec);
  report.gamma0_bound_lines = numeric_moment(lines, 0).value();
  const Moment bound2 = numeric_moment(lines, 2);
  report.gamma2_bound_lines = bound2.value();
  report.tail_qm = lines.tail;

  const int n = state.n();
  if (n >= 2 && state.l() == n - 1 && std::abs(state.m()) == n - 1) {
    const double n2 = double(n) * n;
    SemiclassicalComparison sc;
    sc.n2_gamma2_sqm = 2.0 * n2 * report.gamma2_sqm.value();
    sc.n2_gamma2_qm = 2.0 * n2 * report.gamma2_qm.value();
    sc.ratio = sc.n2_gamma2_qm / sc.n2_gamma2_sqm;
    report.semiclassical = sc;
  }
  return report;
}

}  // namespace dipole_noise::observables
