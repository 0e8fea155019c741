#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bohm.hpp"
#include "hydrogen.hpp"

namespace dipole_noise {

using hydrogen::HydrogenState;

/// A frequency moment that may be divergent. Divergence is a result, not an
/// error: power-law tails make high moments infinite.
class Moment {
 public:
  static Moment finite(double value, std::string reason = {}) {
    return Moment(false, value, std::move(reason));
  }
  static Moment divergent(std::string reason) {
    return Moment(true, std::numeric_limits<double>::infinity(), std::move(reason));
  }

  bool is_divergent() const noexcept { return divergent_; }
  /// +infinity when divergent.
  double value() const noexcept { return value_; }
  /// Why the value is what it is ("evenness", "tail exponent 4", ...); may be empty.
  const std::string& reason() const noexcept { return reason_; }

 private:
  Moment(bool divergent, double value, std::string reason)
      : divergent_(divergent), value_(value), reason_(std::move(reason)) {}

  bool divergent_;
  double value_;
  std::string reason_;
};

/// S(omega) ~ coefficient * (omega0 / omega)^exponent as omega -> infinity.
struct PowerLawTail {
  double coefficient = 0.0;
  double exponent = 0.0;
};

enum class SpectrumMethod { ClosedForm, GeneralQuadrature, MonteCarlo };

const char* to_string(SpectrumMethod method);

struct SpectralSample {
  double omega = 0.0;
  double value = 0.0;
  /// NaN for deterministic methods; +infinity for empty Monte Carlo bins.
  double std_error = std::numeric_limits<double>::quiet_NaN();
};

struct DeltaLine {
  double omega = 0.0;
  double weight = 0.0;
};

/// Positive-frequency half of an even spectral function, in units of
/// e^2 a0^2 / omega0. States with m = 0 carry only the delta line at 0.
struct SpectralFunction {
  HydrogenState state{1, 0, 0};
  SpectrumMethod method = SpectrumMethod::ClosedForm;
  std::vector<SpectralSample> samples;
  std::optional<DeltaLine> delta_line;
  std::optional<PowerLawTail> tail;
  /// Monte Carlo only: histogram bin edges (samples.size() + 1 entries).
  std::vector<double> bin_edges;
  /// Monte Carlo only.
  std::optional<bohm::RngStreamSpec> rng;
  std::size_t ensemble_size = 0;
};

/// Units label used in exported files.
inline constexpr const char* kSpectrumUnits = "e2a02_per_omega0";

}  // namespace dipole_noise
