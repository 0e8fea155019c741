#include "hydrogen.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "errors.hpp"

namespace dipole_noise::hydrogen {

using numerics::QuadSpec;

HydrogenState::HydrogenState(int n, int l, int m) : n_(n), l_(l), m_(m) {
  if (n < 1) {
    throw DomainError("invalid state: n must be >= 1 (got " +
                      std::to_string(n) + ")");
  }
  if (l < 0 || l > n - 1) {
    throw DomainError("invalid state: l must lie in 0.." +
                      std::to_string(n - 1) + " (got " + std::to_string(l) +
                      ")");
  }
  if (std::abs(m) > l) {
    throw DomainError("invalid state: |m| must be <= l (got m=" +
                      std::to_string(m) + ")");
  }
}

std::string HydrogenState::label() const {
  return std::to_string(n_) + "," + std::to_string(l_) + "," +
         std::to_string(m_);
}

HydrogenState HydrogenState::parse(const std::string& text) {
  std::string cleaned;
  for (char c : text) {
    if (c != ' ' && c != '\t') cleaned.push_back(c == ',' ? ' ' : c);
  }
  std::istringstream in(cleaned);
  int n = 0;
  int l = 0;
  int m = 0;
  if (!(in >> n >> l >> m) || !(in >> std::ws).eof()) {
    throw DomainError("cannot parse state '" + text + "', expected n,l,m");
  }
  return {n, l, m};
}

double radial_wavefunction(int n, int l, double r) {
  if (n < 1 || l < 0 || l > n - 1) {
    throw DomainError("radial_wavefunction: invalid (n, l)");
  }
  if (!(r >= 0.0)) throw DomainError("radial_wavefunction: r must be >= 0");
  const double rho = 2.0 * r / n;
  // -(2/n^2) [(n-l-1)!/((n+l)!)^3]^{1/2} L_{n+l}^{2l+1}(rho) with
  // L_{n+l}^{2l+1} = -(n+l)! Lt_{n-l-1}^{2l+1} collapses to the expression below.
  const double poly = numerics::laguerre(n - l - 1, 2.0 * l + 1.0, rho);
  if (l > 0 && rho == 0.0) return 0.0;
  const double log_norm =
      0.5 * (std::lgamma(double(n - l)) - std::lgamma(double(n + l + 1)));
  const double log_mag = log_norm + (l > 0 ? l * std::log(rho) : 0.0) - 0.5 * rho;
  return (2.0 / (double(n) * n)) * std::exp(log_mag) * poly;
}

double radial_wavefunction(const HydrogenState& state, double r) {
  return radial_wavefunction(state.n(), state.l(), r);
}

double spherical_norm(int l, int m) {
  const int am = std::abs(m);
  const double ratio = std::exp(std::lgamma(double(l - am + 1)) -
                                std::lgamma(double(l + am + 1)));
  return std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi) * ratio);
}

double density(const HydrogenState& state, double r, double theta) {
  if (!(r >= 0.0)) throw DomainError("density: r must be >= 0");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("density: theta must lie in [0, pi]");
  }
  const double chi = radial_wavefunction(state, r);
  const double y = spherical_norm(state.l(), state.m()) *
                   numerics::assoc_legendre(state.l(), std::abs(state.m()),
                                            std::cos(theta));
  return chi * chi * y * y;
}

double energy(int n) {
  if (n < 1) throw DomainError("energy: n must be >= 1");
  return -UnitSystem::omega0 / (2.0 * n * n);
}

double transition_frequency(const HydrogenState& to,
                            const HydrogenState& from) {
  return energy(to.n()) - energy(from.n());
}

double radial_cutoff(int n) { return 20.0 * n * n; }

double radial_integral(int n_bra, int l_bra, int n_ket, int l_ket, int power,
                       const QuadSpec& spec) {
  const double r_max = radial_cutoff(std::max(n_bra, n_ket));
  auto integrand = [=](double r) {
    return radial_wavefunction(n_bra, l_bra, r) *
           radial_wavefunction(n_ket, l_ket, r) * std::pow(r, 2 + power);
  };
  return numerics::integrate(integrand, 0.0, r_max, spec);
}

namespace {

// Y_lm here differs from the Condon-Shortley harmonic by (-1)^m for m > 0.
double phase_vs_condon_shortley(int m) {
  return (m > 0 && m % 2 != 0) ? -1.0 : 1.0;
}

double condon_shortley_x_amplitude(int lb, int mb, int l, int m) {
  const double dl = l;
  const double dm = m;
  if (lb == l + 1) {
    const double den = (2.0 * dl + 1.0) * (2.0 * dl + 3.0);
    if (mb == m + 1) return -0.5 * std::sqrt((dl + dm + 1.0) * (dl + dm + 2.0) / den);
    if (mb == m - 1) return 0.5 * std::sqrt((dl - dm + 1.0) * (dl - dm + 2.0) / den);
  } else if (lb == l - 1) {
    const double den = (2.0 * dl - 1.0) * (2.0 * dl + 1.0);
    if (mb == m + 1) return 0.5 * std::sqrt((dl - dm) * (dl - dm - 1.0) / den);
    if (mb == m - 1) return -0.5 * std::sqrt((dl + dm) * (dl + dm - 1.0) / den);
  }
  return 0.0;
}

}  // namespace

double angular_x_amplitude(int l_bra, int m_bra, int l_ket, int m_ket) {
  if (l_bra < 0 || l_ket < 0 || std::abs(m_bra) > l_bra ||
      std::abs(m_ket) > l_ket) {
    return 0.0;
  }
  if (std::abs(l_bra - l_ket) != 1 || std::abs(m_bra - m_ket) != 1) return 0.0;
  return phase_vs_condon_shortley(m_bra) * phase_vs_condon_shortley(m_ket) *
         condon_shortley_x_amplitude(l_bra, m_bra, l_ket, m_ket);
}

double dipole_x_matrix_element(const HydrogenState& bra,
                               const HydrogenState& ket,
                               const QuadSpec& spec) {
  const double angular =
      angular_x_amplitude(bra.l(), bra.m(), ket.l(), ket.m());
  if (angular == 0.0) return 0.0;
  return angular * radial_integral(bra.n(), bra.l(), ket.n(), ket.l(), 1, spec);
}

double angular_bracket(int l, int m) {
  const double dl = l;
  const double dm = m;
  const double up = (dl + dm + 1.0) * (dl - dm + 1.0) /
                    ((2.0 * dl + 1.0) * (2.0 * dl + 3.0));
  const double down_num = (dl + dm) * (dl - dm);
  const double down =
      down_num == 0.0 ? 0.0
                      : down_num / ((2.0 * dl + 1.0) * (2.0 * dl - 1.0));
  return 1.0 - up - down;
}

double x_squared_expectation(const HydrogenState& state) {
  const double n = state.n();
  const double l = state.l();
  return 0.25 * n * n * (5.0 * n * n + 1.0 - 3.0 * l * (l + 1.0)) *
         angular_bracket(state.l(), state.m());
}

double x2_over_r3_expectation(const HydrogenState& state) {
  const double n = state.n();
  return angular_bracket(state.l(), state.m()) / (2.0 * n * n);
}

double x2_over_r3_expectation_quadrature(const HydrogenState& state,
                                         const QuadSpec& spec) {
  // x^2/r^3 = sin^2(theta) cos^2(phi) / r; the phi integral of cos^2 is pi.
  const double r_max = radial_cutoff(state.n());
  auto over_theta = [&](double theta) {
    const double s = std::sin(theta);
    auto over_r = [&](double r) { return density(state, r, theta) * r; };
    return numerics::integrate(over_r, 0.0, r_max, spec) * s * s * s;
  };
  return std::numbers::pi *
         numerics::integrate(over_theta, 0.0, std::numbers::pi, spec);
}

}  // namespace dipole_noise::hydrogen
