#include "export.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"
#include "version.hpp"

namespace dipole_noise::io {

namespace {

using nlohmann::ordered_json;

std::string csv_prologue(const Metadata& meta, const std::string& header) {
  std::string out;
  for (const auto& [key, value] : meta) out += "# " + key + "=" + value + "\n";
  out += header + "\n";
  return out;
}

ordered_json json_metadata(const Metadata& meta) {
  ordered_json m = ordered_json::object();
  for (const auto& [key, value] : meta) m[key] = value;
  return m;
}

// JSON has no inf/nan; they become null.
ordered_json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

// CSV leaves undefined standard errors empty.
std::string csv_error(double x) { return std::isnan(x) ? std::string() : format_number(x); }

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string csv_quote(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct Row {
  double omega;
  double value;
  double std_error;
};

std::vector<Row> spectrum_rows(const SpectralFunction& s, double (*transform)(double, double, double),
                               double alpha) {
  std::vector<Row> rows;
  if (s.samples.empty() && s.delta_line) {
    rows.push_back({s.delta_line->omega, s.delta_line->weight,
                    std::numeric_limits<double>::quiet_NaN()});
    return rows;
  }
  for (const auto& p : s.samples) {
    rows.push_back({p.omega, transform(p.value, p.omega, alpha),
                    transform(p.std_error, p.omega, alpha)});
  }
  return rows;
}

double identity(double v, double, double) { return v; }

double to_cross_section(double v, double omega, double alpha) {
  if (std::isnan(v)) return v;
  return 8.0 * std::numbers::pi * std::numbers::pi * alpha * omega * v;
}

std::string render_rows(const SpectralFunction& s, const std::vector<Row>& rows,
                        const Metadata& meta, Format format) {
  if (format == Format::Csv) {
    std::string out = csv_prologue(meta, "omega,value,stderr");
    for (const auto& r : rows) {
      out += format_number(r.omega) + "," + format_number(r.value) + "," +
             csv_error(r.std_error) + "\n";
    }
    return out;
  }
  ordered_json j;
  j["metadata"] = json_metadata(meta);
  ordered_json samples = ordered_json::array();
  for (const auto& r : rows) {
    samples.push_back({{"omega", r.omega},
                       {"value", json_number(r.value)},
                       {"stderr", json_number(r.std_error)}});
  }
  j["samples"] = samples;
  if (s.delta_line) {
    j["delta_line"] = {{"omega", s.delta_line->omega}, {"weight", s.delta_line->weight}};
  } else {
    j["delta_line"] = nullptr;
  }
  if (s.tail) {
    j["tail"] = {{"coefficient", s.tail->coefficient}, {"exponent", s.tail->exponent}};
  } else {
    j["tail"] = nullptr;
  }
  if (!s.bin_edges.empty()) j["bin_edges"] = s.bin_edges;
  return dump(j);
}

ordered_json moment_json(const Moment& m) {
  return {{"value", m.is_divergent() ? ordered_json("divergent") : ordered_json(m.value())},
          {"reason", m.reason()}};
}

std::string moment_csv_value(const Moment& m) {
  return m.is_divergent() ? "divergent" : format_number(m.value());
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Metadata standard_metadata(const std::string& command, const HydrogenState& state,
                           const std::string& method, const std::string& units,
                           std::optional<std::uint64_t> seed) {
  return {{"tool", kToolName},
          {"version", kVersion},
          {"command", command},
          {"state", state.label()},
          {"method", method},
          {"units", units},
          {"seed", seed ? std::to_string(*seed) : std::string("none")}};
}

std::string render_spectrum(const SpectralFunction& spectrum, const Metadata& meta,
                            Format format) {
  return render_rows(spectrum, spectrum_rows(spectrum, identity, 0.0), meta, format);
}

std::string render_cross_section(const SpectralFunction& spectrum, double alpha,
                                 const Metadata& meta, Format format) {
  return render_rows(spectrum, spectrum_rows(spectrum, to_cross_section, alpha), meta, format);
}

std::string render_lines(const qm::LineSpectrum& lines, const Metadata& meta, Format format) {
  if (format == Format::Csv) {
    std::string out = csv_prologue(meta, "omega,weight,partner");
    for (const auto& line : lines.lines) {
      out += format_number(line.omega) + "," + format_number(line.weight) + "," +
             csv_quote(line.partner.label()) + "\n";
    }
    return out;
  }
  ordered_json j;
  j["metadata"] = json_metadata(meta);
  j["n_max"] = lines.n_max;
  ordered_json arr = ordered_json::array();
  for (const auto& line : lines.lines) {
    arr.push_back({{"omega", line.omega}, {"weight", line.weight},
                   {"partner", line.partner.label()}});
  }
  j["lines"] = arr;
  j["tail"] = {{"coefficient", lines.tail.coefficient}, {"exponent", lines.tail.exponent}};
  return dump(j);
}

std::string render_ensemble(const bohm::TrajectoryEnsemble& ensemble, const Metadata& meta,
                            Format format) {
  if (format == Format::Csv) {
    std::string out = csv_prologue(meta, "r0,theta0,phi0");
    for (const auto& p : ensemble.points) {
      out += format_number(p.r0) + "," + format_number(p.theta0) + "," +
             format_number(p.phi0) + "\n";
    }
    return out;
  }
  ordered_json j;
  j["metadata"] = json_metadata(meta);
  j["acceptance_rate"] = ensemble.acceptance_rate();
  ordered_json arr = ordered_json::array();
  for (const auto& p : ensemble.points) arr.push_back({p.r0, p.theta0, p.phi0});
  j["points"] = arr;
  return dump(j);
}

std::string render_trajectories(const bohm::TrajectoryEnsemble& ensemble, std::size_t count,
                                 double t_max, double dt, const Metadata& meta,
                                 Format format) {
  if (!(dt > 0.0) || !(t_max >= 0.0)) {
    throw DomainError("render_trajectories: requires dt > 0 and t_max >= 0");
  }
  if (count > ensemble.size()) throw DomainError("render_trajectories: count exceeds ensemble");
  const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9)) + 1;
  std::string out = format == Format::Csv ? csv_prologue(meta, "id,t,x,y,z") : std::string();
  ordered_json arr = ordered_json::array();
  for (std::size_t id = 0; id < count; ++id) {
    const auto& ic = ensemble.points[id];
    for (std::size_t s = 0; s < steps; ++s) {
      const double t = static_cast<double>(s) * dt;
      const auto p = bohm::trajectory(ensemble.state, ic, t);
      const double st = std::sin(p.theta);
      const double x = p.r * st * std::cos(p.phi);
      const double y = p.r * st * std::sin(p.phi);
      const double z = p.r * std::cos(p.theta);
      if (format == Format::Csv) {
        out += std::to_string(id) + "," + format_number(t) + "," + format_number(x) + "," +
               format_number(y) + "," + format_number(z) + "\n";
      } else {
        arr.push_back({{"id", id}, {"t", t}, {"x", x}, {"y", y}, {"z", z}});
      }
    }
  }
  if (format == Format::Csv) return out;
  ordered_json j;
  j["metadata"] = json_metadata(meta);
  j["rows"] = arr;
  return dump(j);
}

std::string render_report(const observables::MomentReport& r, Theory theory,
                          const Metadata& meta, Format format) {
  std::vector<NamedMoment> rows;
  const bool sqm = theory != Theory::Qm;
  const bool qm = theory != Theory::Sqm;
  rows.push_back({"gamma0", Moment::finite(r.gamma0, "<x^2>, shared by both theories")});
  if (sqm) {
    rows.push_back({"gamma0_sqm_numeric", Moment::finite(r.gamma0_numeric_sqm, "quadrature")});
    rows.push_back({"gamma2_sqm", r.gamma2_sqm});
    rows.push_back({"gamma2_sqm_numeric", r.gamma2_numeric_sqm});
    if (r.tail_sqm) {
      rows.push_back({"tail_exponent_sqm", Moment::finite(-r.tail_sqm->exponent, "3+m")});
      rows.push_back({"tail_coefficient_sqm", Moment::finite(r.tail_sqm->coefficient, "")});
    } else {
      rows.push_back({"tail_exponent_sqm", Moment::finite(0.0, "delta line only")});
    }
  }
  if (qm) {
    rows.push_back({"gamma2_qm", r.gamma2_qm});
    rows.push_back({"gamma2_qm_quadrature",
                    Moment::finite(r.gamma2_qm_quadrature, "<x^2/r^3> by quadrature")});
    rows.push_back({"gamma2_qm_printed",
                    Moment::finite(r.gamma2_qm_printed, "bracket/n^2 as printed; twice <x^2/r^3>")});
    rows.push_back({"gamma0_qm_bound_lines",
                    Moment::finite(r.gamma0_bound_lines,
                                   "n' <= " + std::to_string(r.n_max) + "; continuum excluded")});
    rows.push_back({"gamma2_qm_bound_lines",
                    Moment::finite(r.gamma2_bound_lines,
                                   "n' <= " + std::to_string(r.n_max) + "; continuum excluded")});
    rows.push_back({"tail_exponent_qm", Moment::finite(-r.tail_qm.exponent, "4+l+1/2")});
    rows.push_back({"tail_coefficient_qm", Moment::finite(r.tail_qm.coefficient, "")});
  }
  if (r.semiclassical && sqm && qm) {
    const auto& sc = *r.semiclassical;
    rows.push_back({"n2_gamma2_sqm", Moment::finite(sc.n2_gamma2_sqm, "units e^4/(2 a0 mu)")});
    rows.push_back({"n2_gamma2_qm", Moment::finite(sc.n2_gamma2_qm, "units e^4/(2 a0 mu)")});
    rows.push_back({"semiclassical_ratio", Moment::finite(sc.ratio, "qm/sqm")});
  }
  return render_moments(rows, meta, format);
}

std::string render_moments(const std::vector<NamedMoment>& moments, const Metadata& meta,
                           Format format) {
  if (format == Format::Csv) {
    std::string out = csv_prologue(meta, "quantity,value,reason");
    for (const auto& [name, m] : moments) {
      out += name + "," + moment_csv_value(m) + "," + csv_quote(m.reason()) + "\n";
    }
    return out;
  }
  ordered_json j;
  j["metadata"] = json_metadata(meta);
  ordered_json q = ordered_json::object();
  for (const auto& [name, m] : moments) q[name] = moment_json(m);
  j["quantities"] = q;
  return dump(j);
}

std::string render_key_values(const std::vector<KeyValue>& rows, const Metadata& meta,
                              Format format) {
  if (format == Format::Csv) {
    std::string out = csv_prologue(meta, "key,value");
    for (const auto& [key, value] : rows) out += key + "," + format_number(value) + "\n";
    return out;
  }
  ordered_json j;
  j["metadata"] = json_metadata(meta);
  ordered_json v = ordered_json::object();
  for (const auto& [key, value] : rows) v[key] = json_number(value);
  j["values"] = v;
  return dump(j);
}

}  // namespace dipole_noise::io
