#include "bohm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "errors.hpp"
#include "parallel.hpp"

namespace dipole_noise::bohm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double checked_sin_theta(const HydrogenState& state, double r, double theta,
                         const char* who) {
  if (!(r > 0.0)) throw DomainError(std::string(who) + ": r must be > 0");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError(std::string(who) + ": theta must lie in [0, pi]");
  }
  const double s = std::sin(theta);
  if (state.m() != 0 && !(s > 0.0)) {
    throw SingularityError(std::string(who) +
                           ": velocity is singular on the polar axis for m != 0");
  }
  return s;
}

// max over rho of Lt_k^alpha(rho)^2 exp(-rho/2), the radial envelope ratio
// for a Gamma(2l+3, rate 1/n) proposal.
double radial_envelope_bound(int k, double alpha) {
  if (k == 0) return 1.0;
  const double rho_hi = 16.0 * (k + 1) + 40.0 + 2.0 * alpha;
  constexpr int kGrid = 40000;
  double best = 0.0;
  for (int i = 0; i <= kGrid; ++i) {
    const double rho = rho_hi * i / kGrid;
    const double p = numerics::laguerre(k, alpha, rho);
    best = std::max(best, p * p * std::exp(-0.5 * rho));
  }
  return 1.05 * best;
}

}  // namespace

RandomStream::RandomStream(const RngStreamSpec& spec, std::uint64_t chunk) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(spec.seed & 0xffffffffu),
      static_cast<std::uint32_t>(spec.seed >> 32),
      static_cast<std::uint32_t>(spec.stream_id & 0xffffffffu),
      static_cast<std::uint32_t>(spec.stream_id >> 32),
      static_cast<std::uint32_t>(chunk & 0xffffffffu),
      static_cast<std::uint32_t>(chunk >> 32)};
  engine_.seed(seq);
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

Velocity velocity_field(const HydrogenState& state, double r, double theta) {
  const double s = checked_sin_theta(state, r, theta, "velocity_field");
  if (state.m() == 0) return {0.0, 0.0, 0.0};
  using U = hydrogen::UnitSystem;
  return {0.0, 0.0, state.m() * U::hbar / (U::mu * r * s)};
}

double angular_frequency(const HydrogenState& state,
                         const InitialCondition& ic) {
  const double s = checked_sin_theta(state, ic.r0, ic.theta0, "angular_frequency");
  if (state.m() == 0) return 0.0;
  using U = hydrogen::UnitSystem;
  return state.m() * U::hbar / (U::mu * ic.r0 * ic.r0 * s * s);
}

SphericalPoint trajectory(const HydrogenState& state,
                          const InitialCondition& ic, double t) {
  const double omega = angular_frequency(state, ic);
  double phi = std::fmod(ic.phi0 + omega * t, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  return {ic.r0, ic.theta0, phi};
}

double quantum_potential(const HydrogenState& state, double r, double theta) {
  if (!(r > 0.0)) throw DomainError("quantum_potential: r must be > 0");
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw SingularityError(
        "quantum_potential: theta must lie strictly inside (0, pi)");
  }
  const int n = state.n();
  const int l = state.l();
  const int am = std::abs(state.m());

  // Radial factor f(r) = r^l e^{-r/n} Lt_k^alpha(2r/n).
  const int k = n - l - 1;
  const double alpha = 2.0 * l + 1.0;
  const double rho = 2.0 * r / n;
  const double lag = numerics::laguerre(k, alpha, rho);
  if (std::abs(lag) <= kNodeEps * numerics::laguerre(k, alpha, 0.0)) {
    throw NodeError("quantum_potential: radial node at r = " + std::to_string(r));
  }
  const double lag1 = k >= 1 ? -numerics::laguerre(k - 1, alpha + 1.0, rho) : 0.0;
  const double lag2 = k >= 2 ? numerics::laguerre(k - 2, alpha + 2.0, rho) : 0.0;
  const double q1 = lag1 / lag;
  const double q2 = lag2 / lag;
  const double a1 = l / r - 1.0 / n + (2.0 / n) * q1;
  const double da1 = -l / (r * r) + (4.0 / (double(n) * n)) * (q2 - q1 * q1);
  const double radial = da1 + a1 * a1 + (2.0 / r) * a1;

  // Angular factor sin^M(theta) G(cos theta), G = (d/du)^M P_l(u), which is
  // proportional to the Gegenbauer polynomial C_{l-M}^{(M+1/2)}.
  const double u = std::cos(theta);
  const double s = std::sin(theta);
  const int j = l - am;
  const double g0 = numerics::gegenbauer(j, am + 0.5, u);
  if (std::abs(g0) <= kNodeEps * numerics::gegenbauer(j, am + 0.5, 1.0)) {
    throw NodeError("quantum_potential: angular node at theta = " +
                    std::to_string(theta));
  }
  const double g1 =
      j >= 1 ? (2.0 * am + 1.0) * numerics::gegenbauer(j - 1, am + 1.5, u) / g0
             : 0.0;
  const double g2 = j >= 2 ? (2.0 * am + 1.0) * (2.0 * am + 3.0) *
                                 numerics::gegenbauer(j - 2, am + 2.5, u) / g0
                           : 0.0;
  const double cot = u / s;
  const double b1 = am * cot - s * g1;
  const double db1 = -am / (s * s) - u * g1 + s * s * (g2 - g1 * g1);
  const double angular = db1 + b1 * b1 + cot * b1;

  using U = hydrogen::UnitSystem;
  const double laplacian_over_r = radial + angular / (r * r);
  return -(U::hbar * U::hbar / (2.0 * U::mu)) * laplacian_over_r;
}

TrajectoryEnsemble sample_qeh(const HydrogenState& state, std::size_t size,
                              const RngStreamSpec& rng, int workers) {
  if (size < 1) throw DomainError("sample_qeh: size must be >= 1");
  const int n = state.n();
  const int l = state.l();
  const int am = std::abs(state.m());
  const int k = n - l - 1;
  const double alpha = 2.0 * l + 1.0;
  const int gamma_shape = 2 * l + 3;
  const double gamma_rate = 1.0 / n;
  const double radial_bound = radial_envelope_bound(k, alpha);
  // |Y_lm|^2 <= (2l+1)/(4 pi), so 4 pi N^2 P^2 / (2l+1) <= 1.
  const double ylm_norm = hydrogen::spherical_norm(l, am);
  const double angular_scale =
      4.0 * std::numbers::pi * ylm_norm * ylm_norm / (2.0 * l + 1.0);

  const std::size_t chunk_size = kSampleChunkSize;
  const std::size_t num_chunks = (size + chunk_size - 1) / chunk_size;
  std::vector<std::vector<InitialCondition>> chunks(num_chunks);
  std::vector<std::uint64_t> chunk_proposals(num_chunks, 0);

  parallel_for_chunks(num_chunks, resolve_workers(workers), [&](std::size_t c) {
    RandomStream stream(rng, c);
    const std::size_t want = std::min(chunk_size, size - c * chunk_size);
    auto& out = chunks[c];
    out.reserve(want);
    std::uint64_t proposals = 0;
    while (out.size() < want) {
      ++proposals;
      double log_sum = 0.0;
      for (int i = 0; i < gamma_shape; ++i) {
        log_sum -= std::log(stream.uniform_open_left());
      }
      const double r = log_sum / gamma_rate;
      const double u = 2.0 * stream.uniform() - 1.0;
      const double accept = stream.uniform();
      const double lag = numerics::laguerre(k, alpha, 2.0 * r / n);
      const double radial_ratio = lag * lag * std::exp(-r / n) / radial_bound;
      const double p = numerics::assoc_legendre(l, am, u);
      const double angular_ratio = angular_scale * p * p;
      if (radial_ratio > 1.0 || angular_ratio > 1.0 + 1e-12) {
        throw std::logic_error("sample_qeh: rejection envelope violated");
      }
      if (accept >= radial_ratio * angular_ratio) continue;
      if (!(r > 0.0)) continue;
      const double s2 = (1.0 - u) * (1.0 + u);
      if (am != 0 && !(s2 > 0.0)) continue;
      const double phi = 2.0 * std::numbers::pi * stream.uniform();
      out.push_back({r, std::acos(u), phi});
    }
    chunk_proposals[c] = proposals;
  });

  TrajectoryEnsemble ensemble;
  ensemble.state = state;
  ensemble.rng = rng;
  ensemble.chunk_size = chunk_size;
  ensemble.points.reserve(size);
  for (std::size_t c = 0; c < num_chunks; ++c) {
    ensemble.points.insert(ensemble.points.end(), chunks[c].begin(),
                           chunks[c].end());
    ensemble.proposals += chunk_proposals[c];
  }
  return ensemble;
}

}  // namespace dipole_noise::bohm
