#include "sqm_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"

namespace dipole_noise {

const char* to_string(SpectrumMethod method) {
  switch (method) {
    case SpectrumMethod::ClosedForm:
      return "closed";
    case SpectrumMethod::GeneralQuadrature:
      return "general";
    case SpectrumMethod::MonteCarlo:
      return "mc";
  }
  return "unknown";
}

}  // namespace dipole_noise

namespace dipole_noise::sqm {

namespace {

using boost::multiprecision::cpp_int;

cpp_int int_factorial(int n) {
  cpp_int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// (2k-1)!!
cpp_int int_double_factorial_odd(int k) {
  cpp_int f = 1;
  for (int i = 2 * k - 1; i > 1; i -= 2) f *= i;
  return f;
}

Rational rational_pow(const Rational& base, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

void require_positive_m(const HydrogenState& state, const char* who) {
  if (state.m() == 0) {
    throw DomainError(std::string(who) + ": m = 0 has no continuous spectrum; " +
                      "all weight is the delta line at omega = 0");
  }
  if (state.m() < 0) {
    throw DomainError(std::string(who) +
                      ": requires m > 0; use S(n,l,-m) = S(n,l,m)");
  }
}

void require_positive_omega(double omega, const char* who) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError(std::string(who) + ": omega must be finite and > 0");
  }
}

// ln of the double value of a positive rational, safe for huge factorials.
double log_rational(const Rational& r) {
  const cpp_int num = boost::multiprecision::numerator(r);
  const cpp_int den = boost::multiprecision::denominator(r);
  auto log_int = [](const cpp_int& x) {
    const auto bits = static_cast<long>(boost::multiprecision::msb(x));
    if (bits < 1000) return std::log(x.convert_to<double>());
    const long shift = bits - 900;
    const cpp_int top = x >> shift;
    return std::log(top.convert_to<double>()) + shift * std::numbers::ln2;
  };
  return log_int(num) - log_int(den);
}

void check_family_n(int n, int min_n, const char* who) {
  if (n < min_n) {
    throw DomainError(std::string(who) + ": n must be >= " + std::to_string(min_n));
  }
}

}  // namespace

Rational coefficient_c_exact(const HydrogenState& state) {
  require_positive_m(state, "coefficient_c");
  const int n = state.n();
  const int l = state.l();
  const int m = state.m();
  const cpp_int df = int_double_factorial_odd(m);
  const cpp_int nl = int_factorial(n + l);
  const cpp_int num = cpp_int(n) * n * n * n * (2 * l + 1) * int_factorial(l - m) *
                      df * df * int_factorial(n - l - 1);
  const cpp_int den = cpp_int(2) * n * m * int_factorial(l + m) * nl * nl * nl;
  return Rational(num, den);
}

double coefficient_c(const HydrogenState& state) {
  return to_double(coefficient_c_exact(state));
}

double z_variable(int n, int m, double omega) {
  require_positive_omega(omega, "z_variable");
  if (n < 1 || m == 0) throw DomainError("z_variable: requires n >= 1 and m != 0");
  return (2.0 / n) * std::sqrt(std::abs(m) * hydrogen::UnitSystem::omega0 / omega);
}

Rational max_m_family_coefficient(int n) {
  check_family_n(n, 2, "max_m_family_coefficient");
  const cpp_int df = int_double_factorial_odd(n - 1);
  const cpp_int f = int_factorial(2 * n - 2);
  return Rational(1, 8) * rational_pow(Rational(2, n), 2 * n) *
         rational_pow(Rational(n - 1), n + 1) * Rational(df * df, cpp_int(2) * n * f * f);
}

Rational max_m_family_coefficient_from_general(int n) {
  check_family_n(n, 2, "max_m_family_coefficient_from_general");
  const Rational c = coefficient_c_exact(HydrogenState(n, n - 1, n - 1));
  const cpp_int lag = int_factorial(2 * n - 1);
  return c / 128 * Rational(lag * lag) * rational_pow(Rational(2, n), 2 * (n + 2)) *
         rational_pow(Rational(n - 1), n + 2);
}

Rational second_family_coefficient(int n) {
  check_family_n(n, 3, "second_family_coefficient");
  const int m = n - 2;
  const Rational c = coefficient_c_exact(HydrogenState(n, n - 1, m));
  const cpp_int lag = int_factorial(2 * n - 1);
  const cpp_int gegen = 2 * m + 1;
  return c / 128 * Rational(gegen * gegen * lag * lag) *
         rational_pow(Rational(2, n), 2 * (n + 1)) * rational_pow(Rational(m), n + 1);
}

Rational second_family_coefficient_printed(int n) {
  check_family_n(n, 3, "second_family_coefficient_printed");
  const Rational c = coefficient_c_exact(HydrogenState(n, n - 1, n - 2));
  const cpp_int bracket = int_factorial(2 * n - 1) * int_double_factorial_odd(n - 1);
  return c * Rational(bracket * bracket) * Rational(4 * (n - 2), 128 * n * n);
}

bool has_closed_form(const HydrogenState& state) {
  const int n = state.n();
  const int l = state.l();
  const int m = state.m();
  if (m <= 0) return false;
  if (n == 3 && l == 1 && m == 1) return true;
  if (l == n - 1 && m == n - 1) return true;
  if (l == n - 1 && m == n - 2) return true;
  return false;
}

double spectral_closed(const HydrogenState& state, double omega) {
  require_positive_omega(omega, "spectral_closed");
  if (!has_closed_form(state)) {
    throw UnsupportedStateError("spectral_closed: no closed form for state " +
                                state.label() + "; use spectral_general");
  }
  const int n = state.n();
  const int l = state.l();
  const int m = state.m();
  const double z = z_variable(n, m, omega);
  // K_nu(z) = e^{-z} Ks_nu(z); the e^{-z} goes into the log prefactor.
  const double k0 = numerics::bessel_k_scaled(0, z);
  const double k1 = numerics::bessel_k_scaled(1, z);
  double coeff_log = 0.0;
  double power = 0.0;
  double shape = 0.0;
  if (n == 3 && l == 1) {
    coeff_log = -std::log(243.0);
    power = 4.0;
    shape = z * ((5.0 / 8.0 + z * z / 16.0) * k1 - (7.0 / 16.0) * z * k0);
  } else if (m == l) {
    coeff_log = log_rational(max_m_family_coefficient(n));
    power = n + 2.0;
    shape = z * k1;
  } else {
    coeff_log = log_rational(second_family_coefficient(n));
    power = n + 1.0;
    shape = z * (2.0 * k1 + z * k0);  // z^2 K2(z)
  }
  if (shape <= 0.0) return 0.0;
  return std::exp(coeff_log - power * std::log(omega) - z + std::log(shape));
}

double spectral_general(const HydrogenState& state, double omega, const QuadSpec& spec) {
  require_positive_m(state, "spectral_general");
  require_positive_omega(omega, "spectral_general");
  const int n = state.n();
  const int l = state.l();
  const int m = state.m();
  const double z = z_variable(n, m, omega);

  // L_{n+l}^{2l+1} = (-1)^{2l+1} (n+l)! Lt_{n-l-1}^{2l+1}; the (n+l)!^2 joins
  // the rational prefactor and the integrand keeps the modern polynomial.
  const int k = n - l - 1;
  const double alpha = 2.0 * l + 1.0;
  const cpp_int q_fact = int_factorial(n + l);
  const double log_pref =
      log_rational(coefficient_c_exact(state) * Rational(q_fact * q_fact) / 128);
  const int rho_power = 2 * (l - m);

  auto integrand = [&](double u) {
    const double c = std::cosh(u);
    const double decay = std::exp(-z * (c - 1.0));
    if (decay == 0.0) return 0.0;
    const double rho = z * c;
    const double lag = numerics::laguerre(k, alpha, rho);
    const double gegen = numerics::gegenbauer(l - m, m + 0.5, std::tanh(u));
    return decay * std::pow(rho, rho_power) * lag * lag * gegen * gegen * rho;
  };
  const double integral = numerics::integrate(integrand, 0.0, numerics::kInfinity, spec);
  if (integral <= 0.0) return 0.0;
  return std::exp(log_pref + 2.0 * (3 + m) * std::log(z) - z + std::log(integral));
}

double spectral_bin_average(const HydrogenState& state, double lo, double hi,
                            const QuadSpec& spec) {
  if (!(lo > 0.0 && hi > lo)) {
    throw DomainError("spectral_bin_average: requires 0 < lo < hi");
  }
  QuadSpec outer = spec;
  outer.rel_tol = std::max(spec.rel_tol, 1e-8);
  // Integrate in ln(omega): smoother across decades.
  auto f = [&](double t) {
    const double w = std::exp(t);
    return w * spectral_general(state, w, spec);
  };
  return numerics::integrate(f, std::log(lo), std::log(hi), outer) / (hi - lo);
}

double asymptotic_coeff_sqm(const HydrogenState& state, const QuadSpec& spec) {
  require_positive_m(state, "asymptotic_coeff_sqm");
  const int n = state.n();
  const int l = state.l();
  const int m = state.m();
  const int k = n - l - 1;
  const double alpha = 2.0 * l + 1.0;
  const double gegen_one = numerics::gegenbauer(l - m, m + 0.5, 1.0);
  const int rho_power = 2 * (l - m);
  auto integrand = [&](double rho) {
    const double lag = numerics::laguerre(k, alpha, rho);
    return std::exp(-rho) * std::pow(rho, rho_power) * lag * lag;
  };
  const double integral = numerics::integrate(integrand, 0.0, numerics::kInfinity, spec);
  const cpp_int q_fact = int_factorial(n + l);
  const double log_pref =
      log_rational(coefficient_c_exact(state) * Rational(q_fact * q_fact) / 128 *
                   rational_pow(Rational(4 * m, n * n), 3 + m));
  return std::exp(log_pref) * gegen_one * gegen_one * integral;
}

PowerLawTail tail_sqm(const HydrogenState& state, const QuadSpec& spec) {
  return {asymptotic_coeff_sqm(state, spec), 3.0 + state.m()};
}

SpectralFunction spectrum(const HydrogenState& state, std::span<const double> omegas,
                          SpectrumMethod method, const QuadSpec& spec) {
  if (method == SpectrumMethod::MonteCarlo) {
    throw DomainError("spectrum: Monte Carlo spectra are built by spectral_mc");
  }
  if (state.m() < 0) {
    throw DomainError("spectrum: requires m >= 0; use S(n,l,-m) = S(n,l,m)");
  }
  SpectralFunction out;
  out.state = state;
  out.method = method;
  if (state.m() == 0) {
    out.delta_line = DeltaLine{0.0, hydrogen::x_squared_expectation(state)};
    return out;
  }
  if (method == SpectrumMethod::ClosedForm && !has_closed_form(state)) {
    throw UnsupportedStateError("spectrum: no closed form for state " + state.label() +
                                "; use the general method");
  }
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    require_positive_omega(omegas[i], "spectrum");
    if (i > 0 && !(omegas[i] > omegas[i - 1])) {
      throw DomainError("spectrum: frequency grid must be strictly increasing");
    }
  }
  out.samples.resize(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    const double w = omegas[i];
    const double v = method == SpectrumMethod::ClosedForm ? spectral_closed(state, w)
                                                          : spectral_general(state, w, spec);
    out.samples[i] = SpectralSample{w, v};
  }
  out.tail = tail_sqm(state, spec);
  return out;
}

SpectralFunction spectral_mc(const HydrogenState& state, std::span<const double> edges,
                             const bohm::TrajectoryEnsemble& ensemble, int workers) {
  require_positive_m(state, "spectral_mc");
  if (ensemble.state != state) {
    throw DomainError("spectral_mc: ensemble was sampled for state " +
                      ensemble.state.label());
  }
  if (ensemble.size() == 0) throw DomainError("spectral_mc: empty ensemble");
  if (edges.size() < 2) throw DomainError("spectral_mc: need at least two bin edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!(edges[i] > 0.0) || !std::isfinite(edges[i]) ||
        (i > 0 && !(edges[i] > edges[i - 1]))) {
      throw DomainError("spectral_mc: bin edges must be positive and strictly increasing");
    }
  }
  const std::size_t bins = edges.size() - 1;
  const std::size_t chunk = ensemble.chunk_size > 0 ? ensemble.chunk_size : bohm::kSampleChunkSize;
  const std::size_t num_chunks = (ensemble.size() + chunk - 1) / chunk;
  std::vector<std::vector<double>> sum(num_chunks), sum_sq(num_chunks);

  parallel_for_chunks(num_chunks, resolve_workers(workers), [&](std::size_t c) {
    auto& s1 = sum[c];
    auto& s2 = sum_sq[c];
    s1.assign(bins, 0.0);
    s2.assign(bins, 0.0);
    const std::size_t end = std::min(ensemble.size(), (c + 1) * chunk);
    for (std::size_t i = c * chunk; i < end; ++i) {
      const auto& p = ensemble.points[i];
      const double omega = bohm::angular_frequency(state, p);
      const auto it = std::upper_bound(edges.begin(), edges.end(), omega);
      if (it == edges.begin() || it == edges.end()) continue;
      const auto b = static_cast<std::size_t>(it - edges.begin()) - 1;
      const double s = p.r0 * std::sin(p.theta0);
      const double w = 0.25 * s * s;
      s1[b] += w;
      s2[b] += w * w;
    }
  });

  std::vector<double> total(bins, 0.0), total_sq(bins, 0.0);
  for (std::size_t c = 0; c < num_chunks; ++c) {
    for (std::size_t b = 0; b < bins; ++b) {
      total[b] += sum[c][b];
      total_sq[b] += sum_sq[c][b];
    }
  }

  SpectralFunction out;
  out.state = state;
  out.method = SpectrumMethod::MonteCarlo;
  out.bin_edges.assign(edges.begin(), edges.end());
  out.rng = ensemble.rng;
  out.ensemble_size = ensemble.size();
  out.samples.resize(bins);
  const double count = static_cast<double>(ensemble.size());
  for (std::size_t b = 0; b < bins; ++b) {
    const double width = edges[b + 1] - edges[b];
    const double mean = total[b] / count;
    SpectralSample& sample = out.samples[b];
    sample.omega = std::sqrt(edges[b] * edges[b + 1]);
    sample.value = mean / width;
    if (total[b] == 0.0) {
      sample.std_error = std::numeric_limits<double>::infinity();
    } else {
      const double var = std::max(0.0, total_sq[b] / count - mean * mean);
      sample.std_error = std::sqrt(var / count) / width;
    }
  }
  out.tail = tail_sqm(state);
  return out;
}

std::vector<CorrelationPoint> correlation_sqm(const HydrogenState& state,
                                              std::span<const double> taus,
                                              const bohm::TrajectoryEnsemble& ensemble,
                                              int workers) {
  if (ensemble.state != state) {
    throw DomainError("correlation_sqm: ensemble was sampled for state " +
                      ensemble.state.label());
  }
  if (ensemble.size() == 0) throw DomainError("correlation_sqm: empty ensemble");
  const std::size_t nt = taus.size();
  const std::size_t chunk = ensemble.chunk_size > 0 ? ensemble.chunk_size : bohm::kSampleChunkSize;
  const std::size_t num_chunks = (ensemble.size() + chunk - 1) / chunk;
  std::vector<std::vector<double>> sum(num_chunks), sum_sq(num_chunks);

  parallel_for_chunks(num_chunks, resolve_workers(workers), [&](std::size_t c) {
    sum[c].assign(nt, 0.0);
    sum_sq[c].assign(nt, 0.0);
    const std::size_t end = std::min(ensemble.size(), (c + 1) * chunk);
    for (std::size_t i = c * chunk; i < end; ++i) {
      const auto& p = ensemble.points[i];
      const double omega = bohm::angular_frequency(state, p);
      const double s = p.r0 * std::sin(p.theta0);
      for (std::size_t j = 0; j < nt; ++j) {
        const double y = 0.5 * s * s * std::cos(omega * taus[j]);
        sum[c][j] += y;
        sum_sq[c][j] += y * y;
      }
    }
  });

  std::vector<CorrelationPoint> out(nt);
  const double count = static_cast<double>(ensemble.size());
  for (std::size_t j = 0; j < nt; ++j) {
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t c = 0; c < num_chunks; ++c) {
      s1 += sum[c][j];
      s2 += sum_sq[c][j];
    }
    const double mean = s1 / count;
    const double var = std::max(0.0, s2 / count - mean * mean);
    out[j] = {taus[j], mean, std::sqrt(var / count)};
  }
  return out;
}

double moment_sqm_quadrature(const HydrogenState& state, int k, const QuadSpec& spec) {
  const int n = state.n();
  const int l = state.l();
  const int am = std::abs(state.m());
  if (am == 0) throw DomainError("moment_sqm_quadrature: requires m != 0");
  if (k < 0 || k % 2 != 0 || k >= 2 + am) {
    throw DomainError("moment_sqm_quadrature: requires even 0 <= k < 2 + |m|");
  }
  const double radial = hydrogen::radial_integral(n, l, n, l, 2 - 2 * k, spec);
  const double norm = hydrogen::spherical_norm(l, am);
  auto angular_integrand = [&](double u) {
    const double p = numerics::assoc_legendre(l, am, u);
    return p * p * std::pow((1.0 - u) * (1.0 + u), 1 - k);
  };
  const double angular =
      2.0 * std::numbers::pi * norm * norm * numerics::integrate(angular_integrand, -1.0, 1.0, spec);
  return 0.5 * std::pow(am, k) * radial * angular;
}

Moment moment_sqm(const HydrogenState& state, int k, const QuadSpec& spec) {
  if (k < 0) throw DomainError("moment_sqm: k must be >= 0");
  if (k % 2 != 0) return Moment::finite(0.0, "evenness");
  const int am = std::abs(state.m());
  if (k == 0) return Moment::finite(hydrogen::x_squared_expectation(state), "<x^2>");
  if (am == 0) return Moment::finite(0.0, "delta line at omega = 0");
  if (k >= 2 + am) {
    return Moment::divergent("tail exponent " + std::to_string(3 + am));
  }
  if (k == 2) {
    const double n = state.n();
    return Moment::finite(am / (2.0 * n * n * n), "m / (2 n^3)");
  }
  return Moment::finite(moment_sqm_quadrature(state, k, spec), "quadrature");
}

}  // namespace dipole_noise::sqm
