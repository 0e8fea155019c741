#pragma once

// Bohmian dynamics of hydrogen eigenstates. For psi = R e^{iS} with
// S = m phi - E t the guidance velocity is purely azimuthal, so every
// trajectory is a circle about the z axis at constant (r, theta).

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "hydrogen.hpp"

namespace dipole_noise::bohm {

using hydrogen::HydrogenState;

struct InitialCondition {
  double r0 = 1.0;
  double theta0 = std::numbers::pi / 2;
  double phi0 = 0.0;
};

struct SphericalPoint {
  double r;
  double theta;
  double phi;
};

struct Velocity {
  double v_r;
  double v_theta;
  double v_phi;
};

/// Identifies a reproducible random substream. Distinct stream ids give
/// independent sequences; the same (seed, stream_id) is bit-reproducible.
struct RngStreamSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// Uniform deviates from one substream. Uses mt19937_64 seeded through
/// std::seed_seq, both of which are fully specified by the standard, and
/// converts to doubles by hand so results do not depend on the library's
/// distribution implementations.
class RandomStream {
 public:
  RandomStream(const RngStreamSpec& spec, std::uint64_t chunk);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open_left() { return 1.0 - uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Samples are produced in fixed chunks; chunk c draws from its own
/// substream, so the result is independent of the worker count.
inline constexpr std::size_t kSampleChunkSize = 8192;

struct TrajectoryEnsemble {
  HydrogenState state{1, 0, 0};
  std::vector<InitialCondition> points;
  RngStreamSpec rng;
  std::size_t chunk_size = kSampleChunkSize;
  std::uint64_t proposals = 0;  // rejection-sampler proposals consumed

  std::size_t size() const { return points.size(); }
  double acceptance_rate() const {
    return proposals == 0 ? 0.0 : double(points.size()) / double(proposals);
  }
};

/// Minimum |polynomial factor| (relative to its scale) treated as non-nodal.
inline constexpr double kNodeEps = 1e-12;

/// (0, 0, m hbar / (mu r sin(theta))). Throws SingularityError on the polar
/// axis when m != 0 and DomainError for r <= 0.
Velocity velocity_field(const HydrogenState& state, double r, double theta);

/// Omega = m hbar / (mu r0^2 sin^2 theta0), the azimuthal angular velocity.
double angular_frequency(const HydrogenState& state, const InitialCondition& ic);

/// (r0, theta0, phi0 + Omega t) with phi reduced to [0, 2 pi).
SphericalPoint trajectory(const HydrogenState& state, const InitialCondition& ic,
                          double t);

/// Q = -(hbar^2 / 2 mu) lap(R) / R from analytic derivatives of the radial
/// Laguerre factor and the angular Gegenbauer factor. Requires r > 0 and
/// 0 < theta < pi; throws NodeError within kNodeEps of a nodal surface.
double quantum_potential(const HydrogenState& state, double r, double theta);

/// i.i.d. draws from |psi|^2 by rejection (Gamma radial proposal times
/// uniform cos(theta)) with phi uniform. `workers` = 0 resolves through
/// resolve_workers().
TrajectoryEnsemble sample_qeh(const HydrogenState& state, std::size_t size,
                              const RngStreamSpec& rng, int workers = 0);

}  // namespace dipole_noise::bohm
