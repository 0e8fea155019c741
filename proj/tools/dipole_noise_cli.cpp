// dipole-noise: command-line front end over the C API.
//
// Exit codes: 0 success, 2 usage or domain error, 3 numerical failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dipole_noise.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Failure {
  int code;
  std::string message;
};

void check(dn_status status) {
  if (status == DN_OK) return;
  throw Failure{dn_status_is_numerical(status) ? kExitNumerical : kExitUsage,
                std::string(dn_status_name(status)) + ": " + dn_last_error()};
}

struct Common {
  std::string state;
  std::string format = "csv";
  std::string output;
};

dn_state parse_state(const std::string& text) {
  dn_state s{};
  check(dn_state_parse(text.c_str(), &s));
  return s;
}

dn_format parse_format(const std::string& f) {
  return f == "json" ? DN_FORMAT_JSON : DN_FORMAT_CSV;
}

dn_theory parse_theory(const std::string& t) {
  if (t == "sqm") return DN_THEORY_SQM;
  if (t == "qm") return DN_THEORY_QM;
  return DN_THEORY_BOTH;
}

// Takes ownership of `text`.
void write_output(char* text, const std::string& path) {
  const std::string body(text);
  dn_string_free(text);
  if (path.empty() || path == "-") {
    std::cout << body;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kExitUsage, "cannot open output file " + path};
  out << body;
  if (!out) throw Failure{kExitUsage, "failed writing " + path};
}

std::vector<double> make_grid(double lo, double hi, int points, bool linear) {
  if (points < 1) throw Failure{kExitUsage, "--points must be >= 1"};
  if (!(lo > 0.0 && hi >= lo)) throw Failure{kExitUsage, "need 0 < omega-min <= omega-max"};
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    grid[i] = linear ? lo + (hi - lo) * t : lo * std::pow(hi / lo, t);
  }
  return grid;
}

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--state", c.state, "quantum numbers n,l,m")->required();
  cmd->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", c.output, "output file (default stdout)");
}

struct GridOptions {
  double omega_min = 1e-2;
  double omega_max = 1e2;
  int points = 200;
  bool linear = false;
};

void add_grid(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--omega-min", g.omega_min, "lowest frequency in omega0");
  cmd->add_option("--omega-max", g.omega_max, "highest frequency in omega0");
  cmd->add_option("--points", g.points, "grid points (bins for mc)");
  cmd->add_flag("--linear", g.linear, "linear instead of logarithmic spacing");
}

dn_method parse_method(const std::string& m) {
  if (m == "closed") return DN_METHOD_CLOSED;
  if (m == "mc") return DN_METHOD_MC;
  return DN_METHOD_GENERAL;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noise spectral functions of the hydrogen dipole"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(dn_version()));

  Common common;
  GridOptions grid;
  std::string method = "general";
  std::string theory = "both";
  std::uint64_t seed = 0;
  std::size_t samples = 100000;
  int threads = 0;
  int order = -1;
  int n_max = 0;
  std::size_t count = 10;
  double t_max = 10.0;
  double dt = 0.1;
  std::vector<double> omegas;
  double alpha = dn_alpha_qed();
  dn_quad_spec quad = dn_quad_spec_default();

  auto* spectrum = app.add_subcommand("spectrum", "SQM spectral function on a frequency grid");
  add_common(spectrum, common);
  add_grid(spectrum, grid);
  spectrum->add_option("--method", method, "closed, general (alias quad) or mc")
      ->check(CLI::IsMember({"closed", "general", "quad", "mc"}));
  spectrum->add_option("--seed", seed, "Monte Carlo seed");
  spectrum->add_option("--samples", samples, "Monte Carlo ensemble size");
  spectrum->add_option("--threads", threads, "worker threads (0 = automatic)");
  spectrum->add_option("--rel-tol", quad.rel_tol, "quadrature relative tolerance");
  spectrum->add_option("--max-subdivisions", quad.max_subdivisions, "quadrature budget");

  auto* moments = app.add_subcommand("moments", "frequency moments of both theories");
  add_common(moments, common);
  moments->add_option("--theory", theory, "sqm, qm or both")
      ->check(CLI::IsMember({"sqm", "qm", "both"}));
  moments->add_option("--order", order, "single moment order k (default: full report)");
  moments->add_option("--n-max", n_max, "highest n' in the bound-line sums");
  moments->add_option("--rel-tol", quad.rel_tol, "quadrature relative tolerance");
  moments->add_option("--max-subdivisions", quad.max_subdivisions, "quadrature budget");

  auto* trajectories = app.add_subcommand("trajectories", "Bohmian trajectories from |psi|^2");
  add_common(trajectories, common);
  trajectories->add_option("--count", count, "number of trajectories");
  trajectories->add_option("--t-max", t_max, "final time in 1/omega0");
  trajectories->add_option("--dt", dt, "time step in 1/omega0");
  trajectories->add_option("--seed", seed, "sampling seed");
  trajectories->add_option("--threads", threads, "worker threads (0 = automatic)");

  GridOptions tail_grid{1e3, 1e5, 50, false};
  auto* asymptote = app.add_subcommand("asymptote", "high-frequency power law");
  add_common(asymptote, common);
  asymptote->add_option("--theory", theory, "sqm or qm")->check(CLI::IsMember({"sqm", "qm"}));
  asymptote->add_option("--omega-min", tail_grid.omega_min, "fit window start");
  asymptote->add_option("--omega-max", tail_grid.omega_max, "fit window end");
  asymptote->add_option("--points", tail_grid.points, "points in the fit window");

  auto* cross = app.add_subcommand("cross-section", "total absorption cross-section");
  add_common(cross, common);
  add_grid(cross, grid);
  cross->add_option("--method", method, "closed or general (alias quad)")
      ->check(CLI::IsMember({"closed", "general", "quad"}));
  cross->add_option("--omega", omegas, "explicit frequencies (overrides the grid)");
  cross->add_option("--alpha", alpha, "fine-structure constant");

  auto* lines = app.add_subcommand("lines", "QM bound-state line spectrum");
  add_common(lines, common);
  lines->add_option("--n-max", n_max, "highest n' of the partner states");

  auto* ensemble = app.add_subcommand("ensemble", "quantum-equilibrium initial conditions");
  add_common(ensemble, common);
  ensemble->add_option("--samples", samples, "ensemble size");
  ensemble->add_option("--seed", seed, "sampling seed");
  ensemble->add_option("--threads", threads, "worker threads (0 = automatic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const dn_state state = parse_state(common.state);
    const dn_format format = parse_format(common.format);
    const int default_n_max = std::max(state.n + 10, 20);
    char* text = nullptr;

    if (*spectrum) {
      const dn_method m = parse_method(method);
      dn_spectrum* s = nullptr;
      if (m == DN_METHOD_MC) {
        const auto edges = make_grid(grid.omega_min, grid.omega_max, grid.points + 1, grid.linear);
        check(dn_spectrum_create_mc(state, edges.data(), edges.size(), samples, seed, threads, &s));
      } else {
        const auto g = make_grid(grid.omega_min, grid.omega_max, grid.points, grid.linear);
        check(dn_spectrum_create(state, m, g.data(), g.size(), &quad, &s));
      }
      const dn_status st = dn_spectrum_to_string(s, format, &text);
      dn_spectrum_free(s);
      check(st);
    } else if (*moments) {
      const dn_theory t = parse_theory(theory);
      if (order >= 0) {
        check(dn_moment_to_string(state, t, order, format, &text));
      } else {
        dn_report* r = nullptr;
        check(dn_report_create(state, n_max > 0 ? n_max : default_n_max, &quad, &r));
        const dn_status st = dn_report_to_string(r, t, format, &text);
        dn_report_free(r);
        check(st);
      }
    } else if (*trajectories) {
      dn_ensemble* e = nullptr;
      check(dn_ensemble_create(state, std::max<std::size_t>(count, 1), seed, threads, &e));
      const dn_status st = dn_trajectories_to_string(e, count, t_max, dt, format, &text);
      dn_ensemble_free(e);
      check(st);
    } else if (*asymptote) {
      check(dn_asymptote_to_string(state, parse_theory(theory == "both" ? "sqm" : theory),
                                   tail_grid.omega_min, tail_grid.omega_max,
                                   static_cast<std::size_t>(std::max(tail_grid.points, 0)),
                                   format, &text));
    } else if (*cross) {
      const auto g = omegas.empty()
                         ? make_grid(grid.omega_min, grid.omega_max, grid.points, grid.linear)
                         : omegas;
      dn_spectrum* s = nullptr;
      check(dn_spectrum_create(state, parse_method(method), g.data(), g.size(), nullptr, &s));
      const dn_status st = dn_spectrum_cross_section_to_string(s, alpha, format, &text);
      dn_spectrum_free(s);
      check(st);
    } else if (*lines) {
      dn_lines* l = nullptr;
      check(dn_lines_create(state, n_max > 0 ? n_max : default_n_max, &l));
      const dn_status st = dn_lines_to_string(l, format, &text);
      dn_lines_free(l);
      check(st);
    } else if (*ensemble) {
      dn_ensemble* e = nullptr;
      check(dn_ensemble_create(state, samples, seed, threads, &e));
      const dn_status st = dn_ensemble_to_string(e, format, &text);
      dn_ensemble_free(e);
      check(st);
    }
    write_output(text, common.output);
  } catch (const Failure& f) {
    std::cerr << "dipole-noise: " << f.message << "\n";
    return f.code;
  }
  return kExitOk;
}
