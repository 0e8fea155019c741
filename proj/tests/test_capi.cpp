#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "dipole_noise.h"

namespace {

std::string take(char* text) {
  std::string s(text);
  dn_string_free(text);
  return s;
}

}  // namespace

TEST_CASE("status names and classification") {
  CHECK(std::string(dn_status_name(DN_OK)) == "ok");
  CHECK(dn_status_is_numerical(DN_ERR_CONVERGENCE) == 1);
  CHECK(dn_status_is_numerical(DN_ERR_COVERAGE) == 1);
  CHECK(dn_status_is_numerical(DN_ERR_DOMAIN) == 0);
  CHECK(dn_status_is_numerical(DN_ERR_UNSUPPORTED_STATE) == 0);
  CHECK(std::string(dn_version()) == "0.1.0");
}

TEST_CASE("state parsing and validation") {
  dn_state s{};
  CHECK(dn_state_parse("3,2,-1", &s) == DN_OK);
  CHECK(s.n == 3);
  CHECK(s.l == 2);
  CHECK(s.m == -1);
  CHECK(dn_state_parse("3,3,0", &s) == DN_ERR_DOMAIN);
  CHECK(std::strlen(dn_last_error()) > 0);
  CHECK(dn_state_parse(nullptr, &s) == DN_ERR_NULL_ARGUMENT);
  CHECK(dn_state_parse("2,1,1", nullptr) == DN_ERR_NULL_ARGUMENT);
  CHECK(dn_state_validate({2, 1, 1}) == DN_OK);
  CHECK(dn_state_validate({2, 1, 2}) == DN_ERR_DOMAIN);
}

TEST_CASE("scalar entry points") {
  double v = 0;
  CHECK(dn_coefficient_c({2, 1, 1}, &v) == DN_OK);
  CHECK(v == doctest::Approx(1.0 / 36));
  CHECK(dn_spectral_closed({2, 1, 1}, 1.0, &v) == DN_OK);
  double g = 0;
  CHECK(dn_spectral_general({2, 1, 1}, 1.0, nullptr, &g) == DN_OK);
  CHECK(v == doctest::Approx(g).epsilon(1e-12));
  CHECK(dn_spectral_closed({4, 1, 1}, 1.0, &v) == DN_ERR_UNSUPPORTED_STATE);
  CHECK(dn_spectral_closed({2, 1, 1}, -1.0, &v) == DN_ERR_DOMAIN);
  CHECK(dn_spectral_closed({2, 1, 1}, 1.0, nullptr) == DN_ERR_NULL_ARGUMENT);

  dn_quad_spec tight = dn_quad_spec_default();
  tight.rel_tol = 1e-15;
  tight.abs_tol = 0;
  tight.max_subdivisions = 1;
  CHECK(dn_spectral_general({5, 2, 1}, 0.01, &tight, &v) == DN_ERR_CONVERGENCE);

  dn_moment m{};
  CHECK(dn_moment_sqm({2, 1, 1}, 2, &m) == DN_OK);
  CHECK(m.value == doctest::Approx(0.0625));
  CHECK(m.divergent == 0);
  CHECK(dn_moment_sqm({2, 1, 1}, 4, &m) == DN_OK);
  CHECK(m.divergent == 1);
  CHECK(std::isinf(m.value));
  CHECK(dn_moment_qm({2, 1, 1}, 2, &m) == DN_OK);
  CHECK(m.value == doctest::Approx(0.1));
  double c = 0, e = 0;
  CHECK(dn_tail_qm({2, 1, 1}, &c, &e) == DN_OK);
  CHECK(e == 5.5);
  CHECK(dn_x_squared_expectation({2, 1, 0}, &v) == DN_OK);
  CHECK(v == doctest::Approx(6.0));
  CHECK(dn_cross_section(1.0, 1.0, dn_alpha_qed(), &v) == DN_OK);
  CHECK(dn_cross_section(-1.0, 1.0, dn_alpha_qed(), &v) == DN_ERR_DOMAIN);
}

TEST_CASE("spectrum handles") {
  const std::vector<double> grid{0.1, 1.0, 10.0};
  dn_spectrum* s = nullptr;
  REQUIRE(dn_spectrum_create({2, 1, 1}, DN_METHOD_CLOSED, grid.data(), grid.size(), nullptr, &s) ==
          DN_OK);
  CHECK(dn_spectrum_size(s) == 3);
  double w = 0, v = 0, err = 0;
  CHECK(dn_spectrum_sample(s, 1, &w, &v, &err) == DN_OK);
  CHECK(w == 1.0);
  CHECK(std::isnan(err));
  CHECK(dn_spectrum_sample(s, 3, &w, &v, &err) == DN_ERR_DOMAIN);
  int present = 1;
  CHECK(dn_spectrum_delta_line(s, &present, &w, &v) == DN_OK);
  CHECK(present == 0);
  char* text = nullptr;
  REQUIRE(dn_spectrum_to_string(s, DN_FORMAT_JSON, &text) == DN_OK);
  const auto j = nlohmann::json::parse(take(text));
  CHECK(j["samples"].size() == 3);
  REQUIRE(dn_spectrum_cross_section_to_string(s, dn_alpha_qed(), DN_FORMAT_CSV, &text) == DN_OK);
  CHECK(take(text).find("# command=cross-section") != std::string::npos);
  dn_spectrum_free(s);

  dn_spectrum* d = nullptr;
  REQUIRE(dn_spectrum_create({2, 1, 0}, DN_METHOD_GENERAL, grid.data(), grid.size(), nullptr, &d) ==
          DN_OK);
  CHECK(dn_spectrum_delta_line(d, &present, &w, &v) == DN_OK);
  CHECK(present == 1);
  CHECK(v == doctest::Approx(6.0));
  dn_spectrum_free(d);

  CHECK(dn_spectrum_create({2, 1, 1}, DN_METHOD_MC, grid.data(), grid.size(), nullptr, &s) ==
        DN_ERR_DOMAIN);
  CHECK(dn_spectrum_create({2, 1, 1}, DN_METHOD_CLOSED, nullptr, 3, nullptr, &s) ==
        DN_ERR_NULL_ARGUMENT);
  dn_spectrum_free(nullptr);
}

TEST_CASE("Monte Carlo spectra are independent of the worker count") {
  const std::vector<double> edges{0.05, 0.2, 1.0, 5.0, 20.0};
  std::string reference;
  for (int workers : {1, 2, 8}) {
    dn_spectrum* s = nullptr;
    REQUIRE(dn_spectrum_create_mc({2, 1, 1}, edges.data(), edges.size(), 50000, 11, workers, &s) ==
            DN_OK);
    char* text = nullptr;
    REQUIRE(dn_spectrum_to_string(s, DN_FORMAT_CSV, &text) == DN_OK);
    const auto body = take(text);
    if (reference.empty()) reference = body;
    CHECK(body == reference);
    dn_spectrum_free(s);
  }
  CHECK(reference.find("# seed=11") != std::string::npos);
  dn_spectrum* s = nullptr;
  CHECK(dn_spectrum_create_mc({2, 1, 0}, edges.data(), edges.size(), 100, 1, 1, &s) ==
        DN_ERR_DOMAIN);
}

TEST_CASE("line and ensemble handles") {
  dn_lines* l = nullptr;
  REQUIRE(dn_lines_create({2, 1, 1}, 10, &l) == DN_OK);
  REQUIRE(dn_lines_size(l) > 0);
  double w = 0, weight = 0, corr = 0;
  dn_state partner{};
  CHECK(dn_lines_get(l, 0, &w, &weight, &partner) == DN_OK);
  CHECK(w < 0);
  CHECK(dn_lines_correlation(l, 0.0, &corr) == DN_OK);
  dn_moment m{};
  CHECK(dn_lines_moment(l, 0, &m) == DN_OK);
  CHECK(corr == doctest::Approx(m.value));
  dn_lines_free(l);
  CHECK(dn_lines_create({2, 1, 1}, 1, &l) == DN_ERR_DOMAIN);

  dn_ensemble* e = nullptr;
  REQUIRE(dn_ensemble_create({2, 1, 1}, 1000, 3, 2, &e) == DN_OK);
  CHECK(dn_ensemble_size(e) == 1000);
  double r0 = 0, t0 = 0, p0 = 0;
  CHECK(dn_ensemble_get(e, 10, &r0, &t0, &p0) == DN_OK);
  CHECK(r0 > 0);
  CHECK(dn_ensemble_acceptance_rate(e) > 0);
  const double taus[2] = {0.0, 1.0};
  double vals[2], errs[2];
  CHECK(dn_ensemble_correlation(e, taus, 2, 1, vals, errs) == DN_OK);
  CHECK(std::abs(vals[0] - 12.0) < 4 * errs[0]);
  char* text = nullptr;
  CHECK(dn_trajectories_to_string(e, 2, 1.0, 0.5, DN_FORMAT_CSV, &text) == DN_OK);
  CHECK(take(text).find("id,t,x,y,z") != std::string::npos);
  CHECK(dn_trajectories_to_string(e, 2, 1.0, 0.0, DN_FORMAT_CSV, &text) == DN_ERR_DOMAIN);
  dn_ensemble_free(e);
}

TEST_CASE("report handle") {
  dn_report* r = nullptr;
  REQUIRE(dn_report_create({2, 1, 1}, 12, nullptr, &r) == DN_OK);
  dn_moment sqm{}, qm{};
  double printed = 0;
  CHECK(dn_report_gamma2(r, &sqm, &qm, &printed) == DN_OK);
  CHECK(sqm.value == doctest::Approx(0.0625));
  CHECK(qm.value == doctest::Approx(0.1));
  CHECK(printed == doctest::Approx(0.2));
  int present = 0;
  double a = 0, b = 0, ratio = 0;
  CHECK(dn_report_semiclassical(r, &present, &a, &b, &ratio) == DN_OK);
  CHECK(present == 1);
  CHECK(ratio == doctest::Approx(1.6));
  char* text = nullptr;
  REQUIRE(dn_report_to_string(r, DN_THEORY_BOTH, DN_FORMAT_JSON, &text) == DN_OK);
  const auto j = nlohmann::json::parse(take(text));
  CHECK(j["quantities"]["gamma2_qm"]["value"].get<double>() == doctest::Approx(0.1));
  dn_report_free(r);

  REQUIRE(dn_moment_to_string({2, 1, 1}, DN_THEORY_SQM, 4, DN_FORMAT_CSV, &text) == DN_OK);
  CHECK(take(text).find("divergent") != std::string::npos);
  REQUIRE(dn_asymptote_to_string({3, 2, 2}, DN_THEORY_SQM, 1e3, 1e5, 30, DN_FORMAT_CSV, &text) ==
          DN_OK);
  CHECK(take(text).find("fitted_exponent") != std::string::npos);
}

TEST_CASE("errors are reported per call") {
  double v = 0;
  CHECK(dn_spectral_closed({9, 1, 1}, 1.0, &v) == DN_ERR_UNSUPPORTED_STATE);
  const std::string msg = dn_last_error();
  CHECK(msg.find("9,1,1") != std::string::npos);
}
