#include "qm_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "errors.hpp"

namespace dipole_noise::qm {

double LineSpectrum::total_weight() const {
  double sum = 0.0;
  for (const auto& line : lines) sum += line.weight;
  return sum;
}

LineSpectrum line_spectrum(const HydrogenState& state, int n_max, const QuadSpec& spec) {
  if (n_max < state.n()) {
    throw DomainError("line_spectrum: n_max must be >= n = " + std::to_string(state.n()));
  }
  const int n = state.n();
  const int l = state.l();
  const int m = state.m();
  LineSpectrum out;
  out.state = state;
  out.n_max = n_max;
  out.tail = tail_coeff_qm(state);

  std::map<std::pair<int, int>, double> radial;
  for (int np = 1; np <= n_max; ++np) {
    for (int lp : {l - 1, l + 1}) {
      if (lp < 0 || lp > np - 1) continue;
      for (int mp : {m - 1, m + 1}) {
        if (std::abs(mp) > lp) continue;
        const double ang = hydrogen::angular_x_amplitude(lp, mp, l, m);
        if (ang == 0.0) continue;
        auto it = radial.find({np, lp});
        if (it == radial.end()) {
          it = radial.emplace(std::pair{np, lp},
                              hydrogen::radial_integral(np, lp, n, l, 1, spec))
                   .first;
        }
        const double amp = ang * it->second;
        const double weight = 0.5 * amp * amp;
        const HydrogenState partner(np, lp, mp);
        const double w = hydrogen::transition_frequency(partner, state);
        out.lines.push_back({w, weight, partner});
        out.lines.push_back({-w, weight, partner});
      }
    }
  }
  std::stable_sort(out.lines.begin(), out.lines.end(),
                   [](const Line& a, const Line& b) { return a.omega < b.omega; });
  return out;
}

double correlation_qm(const LineSpectrum& lines, double tau) {
  double sum = 0.0;
  for (const auto& line : lines.lines) sum += line.weight * std::cos(line.omega * tau);
  return sum;
}

double correlation_qm(const HydrogenState& state, double tau, int n_max) {
  return correlation_qm(line_spectrum(state, n_max), tau);
}

Moment moment_qm(const HydrogenState& state, int k) {
  if (k < 0) throw DomainError("moment_qm: k must be >= 0");
  if (k % 2 != 0) return Moment::finite(0.0, "evenness");
  if (k == 0) return Moment::finite(hydrogen::x_squared_expectation(state), "<x^2>");
  const double exponent = 4.5 + state.l();
  if (k + 1.0 >= exponent) {
    return Moment::divergent("tail exponent " + std::to_string(exponent));
  }
  if (k == 2) return Moment::finite(hydrogen::x2_over_r3_expectation(state), "<x^2/r^3>");
  throw DomainError("moment_qm: no closed form for k = " + std::to_string(k));
}

double qm_second_moment_printed(const HydrogenState& state) {
  const double n = state.n();
  return hydrogen::angular_bracket(state.l(), state.m()) / (n * n);
}

double angular_factor(int l, int m, int l_prime) {
  if (l < 0 || std::abs(m) > l || l_prime < 0) {
    throw DomainError("angular_factor: requires l >= 0, |m| <= l, l' >= 0");
  }
  if (l_prime != l - 1 && l_prime != l + 1) return 0.0;
  double sum = 0.0;
  for (int mp : {m - 1, m + 1}) {
    if (std::abs(mp) > l_prime) continue;
    const double a = hydrogen::angular_x_amplitude(l_prime, mp, l, m);
    sum += a * a;
  }
  return sum;
}

PowerLawTail tail_coeff_qm(const HydrogenState& state) {
  const int n = state.n();
  const int l = state.l();
  const int m = state.m();
  const double exponent = 4.0 + l + 0.5;
  // (n-l-1)! [L_{n+l}^{2l+1}(0)]^2 / ((n+l)!)^3 = (n+l)! / ((n-l-1)! ((2l+1)!)^2)
  const double log_lag =
      std::lgamma(n + l + 1.0) - std::lgamma(n - l + 0.0) - 2.0 * std::lgamma(2.0 * l + 2.0);
  double sum = 0.0;
  for (int lp : {l - 1, l + 1}) {
    if (lp < 0) continue;
    const double ang = angular_factor(l, m, lp);
    if (ang == 0.0) continue;
    const double nu = 3.0 + l - 0.5;
    const double mu = -(lp + 0.5);
    const double deriv = numerics::legendre_p_deriv_at_zero(nu, mu);
    constexpr double h = 1e-4;
    const double fd = (numerics::ferrers_p(nu, mu, h) - numerics::ferrers_p(nu, mu, -h)) / (2 * h);
    const double mismatch = std::abs(fd - deriv);
    if (!(mismatch <= 1e-5 * std::max(1.0, std::abs(deriv)))) {
      throw ConvergenceError("tail_coeff_qm: Legendre derivative failed its finite-difference check",
                             mismatch);
    }
    const double log_brace = std::lgamma(l + lp + 4.0) - std::log(n) -
                             0.5 * exponent * std::log(2.0) + std::log(std::abs(deriv));
    sum += ang * std::exp(log_lag + 2.0 * log_brace);
  }
  const double n4 = std::pow(n, 4);
  return {2.0 / n4 * sum, exponent};
}

}  // namespace dipole_noise::qm
