#ifndef DIPOLE_NOISE_H
#define DIPOLE_NOISE_H

/* Noise spectral functions of the hydrogen dipole under Bohmian (SQM) and
 * standard quantum (QM) dynamics. Internal units: hbar = mu = e = a0 = 1,
 * so omega0 = 1. Spectra are in e^2 a0^2 / omega0.
 *
 * Every fallible call returns a dn_status; on failure dn_last_error()
 * returns a message for the calling thread. Handles are opaque and must be
 * released with their *_free function. Strings returned through char**
 * are released with dn_string_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DN_API __declspec(dllexport)
#else
#define DN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dn_status {
  DN_OK = 0,
  DN_ERR_NULL_ARGUMENT = 1,
  DN_ERR_DOMAIN = 2,
  DN_ERR_UNSUPPORTED_STATE = 3,
  DN_ERR_SINGULARITY = 4,
  DN_ERR_NODE = 5,
  DN_ERR_POLE = 6,
  DN_ERR_CONVERGENCE = 7,
  DN_ERR_COVERAGE = 8,
  DN_ERR_INTERNAL = 9
} dn_status;

/* 1 for DN_ERR_CONVERGENCE, DN_ERR_COVERAGE and DN_ERR_INTERNAL. */
DN_API int dn_status_is_numerical(dn_status status);
DN_API const char* dn_status_name(dn_status status);

typedef struct dn_state {
  int n;
  int l;
  int m;
} dn_state;

typedef enum dn_method {
  DN_METHOD_CLOSED = 0,
  DN_METHOD_GENERAL = 1,
  DN_METHOD_MC = 2
} dn_method;

typedef enum dn_theory { DN_THEORY_SQM = 0, DN_THEORY_QM = 1, DN_THEORY_BOTH = 2 } dn_theory;

typedef enum dn_format { DN_FORMAT_CSV = 0, DN_FORMAT_JSON = 1 } dn_format;

typedef struct dn_quad_spec {
  double rel_tol;
  double abs_tol;
  int max_subdivisions;
} dn_quad_spec;

typedef struct dn_moment {
  double value; /* +inf when divergent */
  int divergent;
} dn_moment;

typedef struct dn_fit {
  double exponent;
  double coefficient;
  double r_squared;
  size_t points;
} dn_fit;

typedef struct dn_spectrum dn_spectrum;
typedef struct dn_lines dn_lines;
typedef struct dn_ensemble dn_ensemble;
typedef struct dn_report dn_report;

DN_API const char* dn_version(void);
/* Message of the last failed call on this thread; "" if none. */
DN_API const char* dn_last_error(void);
DN_API void dn_string_free(char* text);

DN_API dn_quad_spec dn_quad_spec_default(void);
/* Worker count after applying the DIPOLE_NOISE_THREADS cap. */
DN_API int dn_resolve_workers(int requested);

DN_API dn_status dn_state_parse(const char* text, dn_state* out);
DN_API dn_status dn_state_validate(dn_state state);

/* Scalars. `spec` may be NULL for defaults. */
DN_API dn_status dn_coefficient_c(dn_state state, double* out);
DN_API dn_status dn_spectral_closed(dn_state state, double omega, double* out);
DN_API dn_status dn_spectral_general(dn_state state, double omega, const dn_quad_spec* spec,
                                     double* out);
DN_API dn_status dn_asymptotic_coeff_sqm(dn_state state, double* out);
DN_API dn_status dn_tail_qm(dn_state state, double* coefficient, double* exponent);
DN_API dn_status dn_x_squared_expectation(dn_state state, double* out);
DN_API dn_status dn_moment_sqm(dn_state state, int k, dn_moment* out);
DN_API dn_status dn_moment_qm(dn_state state, int k, dn_moment* out);
DN_API dn_status dn_cross_section(double spectral_value, double omega, double alpha,
                                  double* out);
DN_API double dn_alpha_qed(void);

/* Spectra. Deterministic spectra take a strictly increasing frequency
 * grid; Monte Carlo spectra take histogram bin edges and sample `samples`
 * points from |psi|^2 with the given seed (workers = 0 means automatic). */
DN_API dn_status dn_spectrum_create(dn_state state, dn_method method, const double* omegas,
                                    size_t count, const dn_quad_spec* spec, dn_spectrum** out);
DN_API dn_status dn_spectrum_create_mc(dn_state state, const double* edges, size_t edge_count,
                                       size_t samples, uint64_t seed, int workers,
                                       dn_spectrum** out);
DN_API size_t dn_spectrum_size(const dn_spectrum* spectrum);
DN_API dn_status dn_spectrum_sample(const dn_spectrum* spectrum, size_t index, double* omega,
                                    double* value, double* std_error);
/* *present = 0 when the spectrum has no delta line. */
DN_API dn_status dn_spectrum_delta_line(const dn_spectrum* spectrum, int* present,
                                        double* omega, double* weight);
DN_API dn_status dn_spectrum_moment(const dn_spectrum* spectrum, int k, dn_moment* out);
DN_API dn_status dn_spectrum_fit_asymptote(const dn_spectrum* spectrum, double lo, double hi,
                                           dn_fit* out);
DN_API dn_status dn_spectrum_to_string(const dn_spectrum* spectrum, dn_format format,
                                       char** out);
/* Same rows with value replaced by 8 pi^2 alpha omega S. */
DN_API dn_status dn_spectrum_cross_section_to_string(const dn_spectrum* spectrum, double alpha,
                                                     dn_format format, char** out);
DN_API void dn_spectrum_free(dn_spectrum* spectrum);

/* QM bound-state lines to partners with n' <= n_max. */
DN_API dn_status dn_lines_create(dn_state state, int n_max, dn_lines** out);
DN_API size_t dn_lines_size(const dn_lines* lines);
DN_API dn_status dn_lines_get(const dn_lines* lines, size_t index, double* omega, double* weight,
                              dn_state* partner);
DN_API dn_status dn_lines_correlation(const dn_lines* lines, double tau, double* out);
DN_API dn_status dn_lines_moment(const dn_lines* lines, int k, dn_moment* out);
DN_API dn_status dn_lines_to_string(const dn_lines* lines, dn_format format, char** out);
DN_API void dn_lines_free(dn_lines* lines);

/* Quantum-equilibrium initial conditions (r0, theta0, phi0). */
DN_API dn_status dn_ensemble_create(dn_state state, size_t size, uint64_t seed, int workers,
                                    dn_ensemble** out);
DN_API size_t dn_ensemble_size(const dn_ensemble* ensemble);
DN_API dn_status dn_ensemble_get(const dn_ensemble* ensemble, size_t index, double* r0,
                                 double* theta0, double* phi0);
DN_API double dn_ensemble_acceptance_rate(const dn_ensemble* ensemble);
/* Monte Carlo Phi(tau) with standard errors; outputs have `count` entries. */
DN_API dn_status dn_ensemble_correlation(const dn_ensemble* ensemble, const double* taus,
                                         size_t count, int workers, double* values,
                                         double* std_errors);
DN_API dn_status dn_ensemble_to_string(const dn_ensemble* ensemble, dn_format format,
                                       char** out);
/* id,t,x,y,z rows for the first `count` members, t = 0, dt, ... <= t_max. */
DN_API dn_status dn_trajectories_to_string(const dn_ensemble* ensemble, size_t count,
                                           double t_max, double dt, dn_format format,
                                           char** out);
DN_API void dn_ensemble_free(dn_ensemble* ensemble);

/* Side-by-side moments of both theories. */
DN_API dn_status dn_report_create(dn_state state, int n_max, const dn_quad_spec* spec,
                                  dn_report** out);
DN_API dn_status dn_report_gamma2(const dn_report* report, dn_moment* sqm, dn_moment* qm,
                                  double* qm_printed);
/* *present = 0 unless the state is (n, n-1, n-1) with n >= 2. */
DN_API dn_status dn_report_semiclassical(const dn_report* report, int* present,
                                         double* n2_gamma2_sqm, double* n2_gamma2_qm,
                                         double* ratio);
DN_API dn_status dn_report_to_string(const dn_report* report, dn_theory theory,
                                     dn_format format, char** out);
DN_API void dn_report_free(dn_report* report);

/* Single moment of order k for one or both theories. */
DN_API dn_status dn_moment_to_string(dn_state state, dn_theory theory, int k, dn_format format,
                                     char** out);

/* Power-law tail summary. SQM: log-log fit of the general spectrum on
 * `points` log-spaced frequencies in [lo, hi] next to the analytic tail.
 * QM: the analytic tail model. */
DN_API dn_status dn_asymptote_to_string(dn_state state, dn_theory theory, double lo, double hi,
                                        size_t points, dn_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* DIPOLE_NOISE_H */
