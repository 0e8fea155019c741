#pragma once

// CSV and JSON renderings of library results. CSV files open with
// `# key=value` metadata lines followed by a header row; JSON documents are
// one object with a "metadata" member. Numbers are written in shortest
// round-trip form, so identical results give byte-identical files.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bohm.hpp"
#include "observables.hpp"
#include "qm_spectra.hpp"
#include "spectral_types.hpp"

namespace dipole_noise::io {

enum class Format { Csv, Json };

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline constexpr const char* kToolName = "dipole-noise";

/// Shortest decimal that round-trips; "inf", "-inf" and "nan" otherwise.
std::string format_number(double x);

/// tool, version, command, state, method, units, seed (seed "none" when absent).
Metadata standard_metadata(const std::string& command, const HydrogenState& state,
                           const std::string& method, const std::string& units,
                           std::optional<std::uint64_t> seed = std::nullopt);

/// omega,value,stderr rows. A delta-only spectrum is one row (0, weight).
std::string render_spectrum(const SpectralFunction& spectrum, const Metadata& meta,
                            Format format);

/// omega,value,stderr with value = 8 pi^2 alpha omega S.
std::string render_cross_section(const SpectralFunction& spectrum, double alpha,
                                 const Metadata& meta, Format format);

/// omega,weight,partner rows.
std::string render_lines(const qm::LineSpectrum& lines, const Metadata& meta, Format format);

/// r0,theta0,phi0 rows.
std::string render_ensemble(const bohm::TrajectoryEnsemble& ensemble, const Metadata& meta,
                            Format format);

/// id,t,x,y,z rows for the first `count` ensemble members at t = 0, dt, ... <= t_max.
std::string render_trajectories(const bohm::TrajectoryEnsemble& ensemble, std::size_t count,
                                double t_max, double dt, const Metadata& meta, Format format);

enum class Theory { Sqm, Qm, Both };

/// quantity,value,reason rows of a theory comparison.
std::string render_report(const observables::MomentReport& report, Theory theory,
                          const Metadata& meta, Format format);

struct NamedMoment {
  std::string name;
  Moment moment;
};

/// quantity,value,reason rows for individual moments.
std::string render_moments(const std::vector<NamedMoment>& moments, const Metadata& meta,
                           Format format);

struct KeyValue {
  std::string key;
  double value;
};

/// key,value rows; used for asymptote summaries.
std::string render_key_values(const std::vector<KeyValue>& rows, const Metadata& meta,
                              Format format);

}  // namespace dipole_noise::io
