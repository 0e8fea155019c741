#include "dipole_noise.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "bohm.hpp"
#include "errors.hpp"
#include "export.hpp"
#include "observables.hpp"
#include "parallel.hpp"
#include "qm_spectra.hpp"
#include "sqm_spectra.hpp"
#include "version.hpp"

using namespace dipole_noise;

struct dn_spectrum {
  SpectralFunction value;
};

struct dn_lines {
  qm::LineSpectrum value;
};

struct dn_ensemble {
  bohm::TrajectoryEnsemble value;
};

struct dn_report {
  observables::MomentReport value;
};

namespace {

thread_local std::string g_last_error;

class NullArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class F>
dn_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return DN_OK;
  } catch (const NullArgument& e) {
    g_last_error = e.what();
    return DN_ERR_NULL_ARGUMENT;
  } catch (const UnsupportedStateError& e) {
    g_last_error = e.what();
    return DN_ERR_UNSUPPORTED_STATE;
  } catch (const SingularityError& e) {
    g_last_error = e.what();
    return DN_ERR_SINGULARITY;
  } catch (const NodeError& e) {
    g_last_error = e.what();
    return DN_ERR_NODE;
  } catch (const PoleError& e) {
    g_last_error = e.what();
    return DN_ERR_POLE;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return DN_ERR_DOMAIN;
  } catch (const ConvergenceError& e) {
    g_last_error = e.what();
    return DN_ERR_CONVERGENCE;
  } catch (const CoverageError& e) {
    g_last_error = e.what();
    return DN_ERR_COVERAGE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return DN_ERR_INTERNAL;
  }
}

template <class T>
T& need(T* p, const char* what) {
  if (p == nullptr) throw NullArgument(std::string(what) + " must not be null");
  return *p;
}

template <class T>
const T& need(const T* p, const char* what) {
  if (p == nullptr) throw NullArgument(std::string(what) + " must not be null");
  return *p;
}

HydrogenState to_state(dn_state s) { return HydrogenState(s.n, s.l, s.m); }

numerics::QuadSpec to_spec(const dn_quad_spec* spec) {
  numerics::QuadSpec q;
  if (spec != nullptr) {
    q.rel_tol = spec->rel_tol;
    q.abs_tol = spec->abs_tol;
    q.max_subdivisions = spec->max_subdivisions;
  }
  q.validate();
  return q;
}

io::Format to_format(dn_format f) {
  switch (f) {
    case DN_FORMAT_CSV:
      return io::Format::Csv;
    case DN_FORMAT_JSON:
      return io::Format::Json;
  }
  throw DomainError("unknown output format");
}

io::Theory to_theory(dn_theory t) {
  switch (t) {
    case DN_THEORY_SQM:
      return io::Theory::Sqm;
    case DN_THEORY_QM:
      return io::Theory::Qm;
    case DN_THEORY_BOTH:
      return io::Theory::Both;
  }
  throw DomainError("unknown theory");
}

const char* theory_name(dn_theory t) {
  switch (t) {
    case DN_THEORY_SQM:
      return "sqm";
    case DN_THEORY_QM:
      return "qm";
    case DN_THEORY_BOTH:
      return "both";
  }
  return "unknown";
}

dn_moment to_c(const Moment& m) { return {m.value(), m.is_divergent() ? 1 : 0}; }

void emit(const std::string& text, char** out) {
  char* buf = static_cast<char*>(std::malloc(text.size() + 1));
  if (buf == nullptr) throw std::bad_alloc();
  std::memcpy(buf, text.c_str(), text.size() + 1);
  *out = buf;
}

io::Metadata spectrum_metadata(const SpectralFunction& s, const std::string& command,
                               const std::string& units) {
  std::optional<std::uint64_t> seed;
  if (s.rng) seed = s.rng->seed;
  auto meta = io::standard_metadata(command, s.state, to_string(s.method), units, seed);
  if (s.method == SpectrumMethod::MonteCarlo) {
    meta.emplace_back("stream_id", std::to_string(s.rng ? s.rng->stream_id : 0));
    meta.emplace_back("samples", std::to_string(s.ensemble_size));
    meta.emplace_back("bins", std::to_string(s.samples.size()));
  } else {
    meta.emplace_back("points", std::to_string(s.samples.size()));
  }
  if (s.samples.empty() && s.delta_line) meta.emplace_back("delta_line", "true");
  return meta;
}

io::Metadata ensemble_metadata(const bohm::TrajectoryEnsemble& e, const std::string& command,
                               const std::string& units) {
  auto meta = io::standard_metadata(command, e.state, "rejection", units, e.rng.seed);
  meta.emplace_back("stream_id", std::to_string(e.rng.stream_id));
  meta.emplace_back("samples", std::to_string(e.size()));
  return meta;
}

}  // namespace

extern "C" {

int dn_status_is_numerical(dn_status status) {
  return status == DN_ERR_CONVERGENCE || status == DN_ERR_COVERAGE ||
                 status == DN_ERR_INTERNAL
             ? 1
             : 0;
}

const char* dn_status_name(dn_status status) {
  switch (status) {
    case DN_OK:
      return "ok";
    case DN_ERR_NULL_ARGUMENT:
      return "null_argument";
    case DN_ERR_DOMAIN:
      return "domain";
    case DN_ERR_UNSUPPORTED_STATE:
      return "unsupported_state";
    case DN_ERR_SINGULARITY:
      return "singularity";
    case DN_ERR_NODE:
      return "node";
    case DN_ERR_POLE:
      return "pole";
    case DN_ERR_CONVERGENCE:
      return "convergence";
    case DN_ERR_COVERAGE:
      return "coverage";
    case DN_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

const char* dn_version(void) { return kVersion; }

const char* dn_last_error(void) { return g_last_error.c_str(); }

void dn_string_free(char* text) { std::free(text); }

dn_quad_spec dn_quad_spec_default(void) {
  const numerics::QuadSpec q;
  return {q.rel_tol, q.abs_tol, q.max_subdivisions};
}

int dn_resolve_workers(int requested) { return resolve_workers(requested); }

dn_status dn_state_parse(const char* text, dn_state* out) {
  return guarded([&] {
    need(text, "text");
    const auto s = HydrogenState::parse(text);
    need(out, "out") = {s.n(), s.l(), s.m()};
  });
}

dn_status dn_state_validate(dn_state state) {
  return guarded([&] { to_state(state); });
}

dn_status dn_coefficient_c(dn_state state, double* out) {
  return guarded([&] { need(out, "out") = sqm::coefficient_c(to_state(state)); });
}

dn_status dn_spectral_closed(dn_state state, double omega, double* out) {
  return guarded([&] { need(out, "out") = sqm::spectral_closed(to_state(state), omega); });
}

dn_status dn_spectral_general(dn_state state, double omega, const dn_quad_spec* spec,
                              double* out) {
  return guarded([&] {
    need(out, "out") = sqm::spectral_general(to_state(state), omega, to_spec(spec));
  });
}

dn_status dn_asymptotic_coeff_sqm(dn_state state, double* out) {
  return guarded([&] { need(out, "out") = sqm::asymptotic_coeff_sqm(to_state(state)); });
}

dn_status dn_tail_qm(dn_state state, double* coefficient, double* exponent) {
  return guarded([&] {
    const auto tail = qm::tail_coeff_qm(to_state(state));
    need(coefficient, "coefficient") = tail.coefficient;
    need(exponent, "exponent") = tail.exponent;
  });
}

dn_status dn_x_squared_expectation(dn_state state, double* out) {
  return guarded(
      [&] { need(out, "out") = hydrogen::x_squared_expectation(to_state(state)); });
}

dn_status dn_moment_sqm(dn_state state, int k, dn_moment* out) {
  return guarded([&] { need(out, "out") = to_c(sqm::moment_sqm(to_state(state), k)); });
}

dn_status dn_moment_qm(dn_state state, int k, dn_moment* out) {
  return guarded([&] { need(out, "out") = to_c(qm::moment_qm(to_state(state), k)); });
}

dn_status dn_cross_section(double spectral_value, double omega, double alpha, double* out) {
  return guarded(
      [&] { need(out, "out") = observables::cross_section(spectral_value, omega, alpha); });
}

double dn_alpha_qed(void) { return observables::kAlphaQed; }

dn_status dn_spectrum_create(dn_state state, dn_method method, const double* omegas,
                             size_t count, const dn_quad_spec* spec, dn_spectrum** out) {
  return guarded([&] {
    need(out, "out") = nullptr;
    if (count > 0) need(omegas, "omegas");
    SpectrumMethod m;
    switch (method) {
      case DN_METHOD_CLOSED:
        m = SpectrumMethod::ClosedForm;
        break;
      case DN_METHOD_GENERAL:
        m = SpectrumMethod::GeneralQuadrature;
        break;
      default:
        throw DomainError("dn_spectrum_create: use dn_spectrum_create_mc for Monte Carlo");
    }
    auto s = sqm::spectrum(to_state(state), std::span<const double>(omegas, count), m,
                           to_spec(spec));
    *out = new dn_spectrum{std::move(s)};
  });
}

dn_status dn_spectrum_create_mc(dn_state state, const double* edges, size_t edge_count,
                                size_t samples, uint64_t seed, int workers,
                                dn_spectrum** out) {
  return guarded([&] {
    need(out, "out") = nullptr;
    need(edges, "edges");
    const auto s = to_state(state);
    if (s.m() <= 0) {
      throw DomainError("Monte Carlo spectrum requires m > 0; for m = 0 all weight is the "
                        "delta line at omega = 0");
    }
    const auto ensemble = bohm::sample_qeh(s, samples, {seed, 0}, workers);
    auto spectrum =
        sqm::spectral_mc(s, std::span<const double>(edges, edge_count), ensemble, workers);
    *out = new dn_spectrum{std::move(spectrum)};
  });
}

size_t dn_spectrum_size(const dn_spectrum* spectrum) {
  return spectrum == nullptr ? 0 : spectrum->value.samples.size();
}

dn_status dn_spectrum_sample(const dn_spectrum* spectrum, size_t index, double* omega,
                             double* value, double* std_error) {
  return guarded([&] {
    const auto& s = need(spectrum, "spectrum").value;
    if (index >= s.samples.size()) throw DomainError("sample index out of range");
    const auto& p = s.samples[index];
    if (omega) *omega = p.omega;
    if (value) *value = p.value;
    if (std_error) *std_error = p.std_error;
  });
}

dn_status dn_spectrum_delta_line(const dn_spectrum* spectrum, int* present, double* omega,
                                 double* weight) {
  return guarded([&] {
    const auto& s = need(spectrum, "spectrum").value;
    need(present, "present") = s.delta_line ? 1 : 0;
    if (s.delta_line) {
      if (omega) *omega = s.delta_line->omega;
      if (weight) *weight = s.delta_line->weight;
    }
  });
}

dn_status dn_spectrum_moment(const dn_spectrum* spectrum, int k, dn_moment* out) {
  return guarded([&] {
    need(out, "out") = to_c(observables::numeric_moment(need(spectrum, "spectrum").value, k));
  });
}

dn_status dn_spectrum_fit_asymptote(const dn_spectrum* spectrum, double lo, double hi,
                                    dn_fit* out) {
  return guarded([&] {
    const auto fit = observables::fit_asymptote(need(spectrum, "spectrum").value, lo, hi);
    need(out, "out") = {fit.exponent, fit.coefficient, fit.r_squared, fit.points};
  });
}

dn_status dn_spectrum_to_string(const dn_spectrum* spectrum, dn_format format, char** out) {
  return guarded([&] {
    const auto& s = need(spectrum, "spectrum").value;
    need(out, "out") = nullptr;
    emit(io::render_spectrum(s, spectrum_metadata(s, "spectrum", kSpectrumUnits),
                             to_format(format)),
         out);
  });
}

dn_status dn_spectrum_cross_section_to_string(const dn_spectrum* spectrum, double alpha,
                                              dn_format format, char** out) {
  return guarded([&] {
    const auto& s = need(spectrum, "spectrum").value;
    need(out, "out") = nullptr;
    auto meta = spectrum_metadata(s, "cross-section", "a0^2");
    meta.emplace_back("alpha", io::format_number(alpha));
    emit(io::render_cross_section(s, alpha, meta, to_format(format)), out);
  });
}

void dn_spectrum_free(dn_spectrum* spectrum) { delete spectrum; }

dn_status dn_lines_create(dn_state state, int n_max, dn_lines** out) {
  return guarded([&] {
    need(out, "out") = nullptr;
    *out = new dn_lines{qm::line_spectrum(to_state(state), n_max)};
  });
}

size_t dn_lines_size(const dn_lines* lines) {
  return lines == nullptr ? 0 : lines->value.lines.size();
}

dn_status dn_lines_get(const dn_lines* lines, size_t index, double* omega, double* weight,
                       dn_state* partner) {
  return guarded([&] {
    const auto& l = need(lines, "lines").value;
    if (index >= l.lines.size()) throw DomainError("line index out of range");
    const auto& line = l.lines[index];
    if (omega) *omega = line.omega;
    if (weight) *weight = line.weight;
    if (partner) *partner = {line.partner.n(), line.partner.l(), line.partner.m()};
  });
}

dn_status dn_lines_correlation(const dn_lines* lines, double tau, double* out) {
  return guarded(
      [&] { need(out, "out") = qm::correlation_qm(need(lines, "lines").value, tau); });
}

dn_status dn_lines_moment(const dn_lines* lines, int k, dn_moment* out) {
  return guarded([&] {
    need(out, "out") = to_c(observables::numeric_moment(need(lines, "lines").value, k));
  });
}

dn_status dn_lines_to_string(const dn_lines* lines, dn_format format, char** out) {
  return guarded([&] {
    const auto& l = need(lines, "lines").value;
    need(out, "out") = nullptr;
    auto meta = io::standard_metadata("lines", l.state, "bound_lines", "a0^2");
    meta.emplace_back("n_max", std::to_string(l.n_max));
    emit(io::render_lines(l, meta, to_format(format)), out);
  });
}

void dn_lines_free(dn_lines* lines) { delete lines; }

dn_status dn_ensemble_create(dn_state state, size_t size, uint64_t seed, int workers,
                             dn_ensemble** out) {
  return guarded([&] {
    need(out, "out") = nullptr;
    *out = new dn_ensemble{bohm::sample_qeh(to_state(state), size, {seed, 0}, workers)};
  });
}

size_t dn_ensemble_size(const dn_ensemble* ensemble) {
  return ensemble == nullptr ? 0 : ensemble->value.size();
}

dn_status dn_ensemble_get(const dn_ensemble* ensemble, size_t index, double* r0,
                          double* theta0, double* phi0) {
  return guarded([&] {
    const auto& e = need(ensemble, "ensemble").value;
    if (index >= e.size()) throw DomainError("ensemble index out of range");
    const auto& p = e.points[index];
    if (r0) *r0 = p.r0;
    if (theta0) *theta0 = p.theta0;
    if (phi0) *phi0 = p.phi0;
  });
}

double dn_ensemble_acceptance_rate(const dn_ensemble* ensemble) {
  return ensemble == nullptr ? 0.0 : ensemble->value.acceptance_rate();
}

dn_status dn_ensemble_correlation(const dn_ensemble* ensemble, const double* taus,
                                  size_t count, int workers, double* values,
                                  double* std_errors) {
  return guarded([&] {
    const auto& e = need(ensemble, "ensemble").value;
    if (count == 0) return;
    need(taus, "taus");
    need(values, "values");
    const auto points =
        sqm::correlation_sqm(e.state, std::span<const double>(taus, count), e, workers);
    for (size_t i = 0; i < count; ++i) {
      values[i] = points[i].value;
      if (std_errors) std_errors[i] = points[i].std_error;
    }
  });
}

dn_status dn_ensemble_to_string(const dn_ensemble* ensemble, dn_format format, char** out) {
  return guarded([&] {
    const auto& e = need(ensemble, "ensemble").value;
    need(out, "out") = nullptr;
    emit(io::render_ensemble(e, ensemble_metadata(e, "ensemble", "a0,rad,rad"),
                             to_format(format)),
         out);
  });
}

dn_status dn_trajectories_to_string(const dn_ensemble* ensemble, size_t count, double t_max,
                                    double dt, dn_format format, char** out) {
  return guarded([&] {
    const auto& e = need(ensemble, "ensemble").value;
    need(out, "out") = nullptr;
    auto meta = ensemble_metadata(e, "trajectories", "a0;1/omega0");
    meta.emplace_back("count", std::to_string(count));
    meta.emplace_back("t_max", io::format_number(t_max));
    meta.emplace_back("dt", io::format_number(dt));
    emit(io::render_trajectories(e, count, t_max, dt, meta, to_format(format)), out);
  });
}

void dn_ensemble_free(dn_ensemble* ensemble) { delete ensemble; }

dn_status dn_report_create(dn_state state, int n_max, const dn_quad_spec* spec,
                           dn_report** out) {
  return guarded([&] {
    need(out, "out") = nullptr;
    *out = new dn_report{observables::compare_theories(to_state(state), n_max, to_spec(spec))};
  });
}

dn_status dn_report_gamma2(const dn_report* report, dn_moment* sqm, dn_moment* qm,
                           double* qm_printed) {
  return guarded([&] {
    const auto& r = need(report, "report").value;
    if (sqm) *sqm = to_c(r.gamma2_sqm);
    if (qm) *qm = to_c(r.gamma2_qm);
    if (qm_printed) *qm_printed = r.gamma2_qm_printed;
  });
}

dn_status dn_report_semiclassical(const dn_report* report, int* present, double* n2_gamma2_sqm,
                                  double* n2_gamma2_qm, double* ratio) {
  return guarded([&] {
    const auto& r = need(report, "report").value;
    need(present, "present") = r.semiclassical ? 1 : 0;
    if (!r.semiclassical) return;
    if (n2_gamma2_sqm) *n2_gamma2_sqm = r.semiclassical->n2_gamma2_sqm;
    if (n2_gamma2_qm) *n2_gamma2_qm = r.semiclassical->n2_gamma2_qm;
    if (ratio) *ratio = r.semiclassical->ratio;
  });
}

dn_status dn_report_to_string(const dn_report* report, dn_theory theory, dn_format format,
                              char** out) {
  return guarded([&] {
    const auto& r = need(report, "report").value;
    need(out, "out") = nullptr;
    auto meta = io::standard_metadata("moments", r.state, theory_name(theory),
                                      "gamma0:e2a02;gamma2:e4/(mu a0)");
    meta.emplace_back("n_max", std::to_string(r.n_max));
    emit(io::render_report(r, to_theory(theory), meta, to_format(format)), out);
  });
}

void dn_report_free(dn_report* report) { delete report; }

dn_status dn_moment_to_string(dn_state state, dn_theory theory, int k, dn_format format,
                              char** out) {
  return guarded([&] {
    need(out, "out") = nullptr;
    const auto s = to_state(state);
    const HydrogenState reflected(s.n(), s.l(), std::abs(s.m()));
    std::vector<io::NamedMoment> rows;
    const std::string order = std::to_string(k);
    if (theory != DN_THEORY_QM) {
      rows.push_back({"gamma" + order + "_sqm", sqm::moment_sqm(reflected, k)});
    }
    if (theory != DN_THEORY_SQM) {
      rows.push_back({"gamma" + order + "_qm", qm::moment_qm(s, k)});
    }
    auto meta = io::standard_metadata("moments", s, theory_name(theory),
                                      "e^(k+2) a0^(2-k) mu^(-k/2) units");
    meta.emplace_back("order", order);
    emit(io::render_moments(rows, meta, to_format(format)), out);
  });
}

dn_status dn_asymptote_to_string(dn_state state, dn_theory theory, double lo, double hi,
                                 size_t points, dn_format format, char** out) {
  return guarded([&] {
    need(out, "out") = nullptr;
    const auto s = to_state(state);
    std::vector<io::KeyValue> rows;
    if (theory == DN_THEORY_BOTH) throw DomainError("asymptote: choose sqm or qm");
    if (theory == DN_THEORY_SQM) {
      if (!(lo > 0.0 && hi > lo)) throw DomainError("asymptote: requires 0 < lo < hi");
      if (points < 10) throw DomainError("asymptote: need at least 10 points");
      const HydrogenState reflected(s.n(), s.l(), std::abs(s.m()));
      std::vector<double> grid(points);
      for (size_t i = 0; i < points; ++i) {
        grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
      }
      const auto spectrum =
          sqm::spectrum(reflected, grid, SpectrumMethod::GeneralQuadrature);
      if (!spectrum.tail) throw DomainError("asymptote: m = 0 has no continuous spectrum");
      const auto fit = observables::fit_asymptote(spectrum, lo, hi);
      rows = {{"fitted_exponent", fit.exponent},
              {"fitted_coefficient", fit.coefficient},
              {"r_squared", fit.r_squared},
              {"model_exponent", -spectrum.tail->exponent},
              {"model_coefficient", spectrum.tail->coefficient},
              {"omega_lo", lo},
              {"omega_hi", hi}};
    } else {
      const auto tail = qm::tail_coeff_qm(s);
      rows = {{"model_exponent", -tail.exponent}, {"model_coefficient", tail.coefficient}};
    }
    auto meta = io::standard_metadata("asymptote", s, theory_name(theory), kSpectrumUnits);
    emit(io::render_key_values(rows, meta, to_format(format)), out);
  });
}

}  // extern "C"
