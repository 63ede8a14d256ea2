#include "laxlab/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "laxlab/presets.hpp"

namespace laxlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

double to_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError(line, "expected a number, got '" + v + "'");
  }
}

long to_int(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& v, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ParseError(line, "expected true or false, got '" + v + "'");
}

std::string to_string_value(const std::string& v, int line) {
  if (v.size() < 2 || v.front() != '"' || v.back() != '"') {
    throw ParseError(line, "expected a quoted string, got '" + v + "'");
  }
  return v.substr(1, v.size() - 2);
}

std::vector<std::string> to_array(const std::string& v, int line) {
  if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
    throw ParseError(line, "expected an array [..], got '" + v + "'");
  }
  std::vector<std::string> out;
  std::string inner = v.substr(1, v.size() - 2);
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s = trim(text);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  if (s.empty()) throw ValidationError("zeta", "empty complex literal");

  if (s.back() != 'i') {
    return Complex{std::stod(s), 0.0};
  }
  s.pop_back();  // drop 'i'
  // Find the split between real and imaginary parts: the last +/- that is not
  // the leading sign and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    // pure imaginary: "", "+", "-" mean coefficient 1, 1, -1
    if (s.empty() || s == "+") return Complex{0.0, 1.0};
    if (s == "-") return Complex{0.0, -1.0};
    return Complex{0.0, std::stod(s)};
  }
  const double re = std::stod(s.substr(0, split));
  std::string im_part = s.substr(split);
  if (im_part == "+") return Complex{re, 1.0};
  if (im_part == "-") return Complex{re, -1.0};
  return Complex{re, std::stod(im_part)};
}

std::string format_complex_brief(Complex z) {
  char buf[96];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  } else if (z.real() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17gi", z.imag());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  }
  return buf;
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  // raw values before defaults are resolved
  std::optional<double> lambda, mu, dt;
  double m_s = 1.0, m_f = 1.0, beta = 1.0, g = 1.0, theta0 = 0.0;
  int grid_n = 64, fd_order = 2;
  double length = 2.0 * 3.14159265358979323846;

  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ParseError(line_no, "expected key = value");

    const std::string qual = section.empty() ? key : section + "." + key;
    if (qual == "seed") {
      cfg.seed = static_cast<std::uint64_t>(to_int(value, line_no));
    } else if (qual == "params.m_s") {
      m_s = to_double(value, line_no);
    } else if (qual == "params.m_f") {
      m_f = to_double(value, line_no);
    } else if (qual == "params.beta") {
      beta = to_double(value, line_no);
    } else if (qual == "params.g") {
      g = to_double(value, line_no);
    } else if (qual == "params.theta0") {
      theta0 = to_double(value, line_no);
    } else if (qual == "params.lambda") {
      lambda = to_double(value, line_no);
    } else if (qual == "params.mu") {
      mu = to_double(value, line_no);
    } else if (qual == "grid.n") {
      grid_n = static_cast<int>(to_int(value, line_no));
    } else if (qual == "grid.length") {
      length = to_double(value, line_no);
    } else if (qual == "grid.fd_order") {
      fd_order = static_cast<int>(to_int(value, line_no));
    } else if (qual == "time.dt") {
      dt = to_double(value, line_no);
    } else if (qual == "time.t_end") {
      cfg.t_end = to_double(value, line_no);
    } else if (qual == "time.allow_cfl_violation") {
      cfg.allow_cfl_violation = to_bool(value, line_no);
    } else if (qual == "initial.preset") {
      cfg.initial.preset = to_string_value(value, line_no);
    } else if (qual == "initial.amplitude") {
      cfg.initial.amplitude = to_double(value, line_no);
    } else if (qual == "initial.width") {
      cfg.initial.width = to_double(value, line_no);
    } else if (qual == "initial.center") {
      cfg.initial.center = to_double(value, line_no);
    } else if (qual == "initial.momentum") {
      cfg.initial.momentum = to_double(value, line_no);
    } else if (qual == "initial.phi0") {
      cfg.initial.phi0 = to_double(value, line_no);
    } else if (qual == "initial.phi_t0") {
      cfg.initial.phi_t0 = to_double(value, line_no);
    } else if (qual == "initial.zero_mean") {
      cfg.initial.zero_mean = to_bool(value, line_no);
    } else if (qual == "observers.stride") {
      cfg.observers.stride = static_cast<int>(to_int(value, line_no));
    } else if (qual == "observers.charges_n_max") {
      cfg.observers.charges_n_max = static_cast<int>(to_int(value, line_no));
    } else if (qual == "observers.charges_fermion_substitution") {
      cfg.observers.charges_fermion_substitution = to_bool(value, line_no);
    } else if (qual == "observers.monodromy_zetas") {
      for (const auto& item : to_array(value, line_no)) {
        cfg.observers.monodromy_zetas.push_back(parse_complex(to_string_value(item, line_no)));
      }
    } else if (qual == "observers.monodromy_connection") {
      const std::string c = to_string_value(value, line_no);
      if (c == "a_plus") {
        cfg.observers.monodromy_connection = Connection::a_plus;
      } else if (c == "a_x") {
        cfg.observers.monodromy_connection = Connection::a_x;
      } else {
        throw ValidationError("observers.monodromy_connection", "must be a_plus or a_x");
      }
    } else if (qual == "observers.curvature_zetas") {
      for (const auto& item : to_array(value, line_no)) {
        cfg.observers.curvature_zetas.push_back(parse_complex(to_string_value(item, line_no)));
      }
    } else if (qual == "observers.curvature_mode") {
      const std::string c = to_string_value(value, line_no);
      if (c == "analytic") {
        cfg.observers.curvature_mode.kind = CurvatureMode::Kind::analytic;
      } else if (c == "fd_time") {
        cfg.observers.curvature_mode.kind = CurvatureMode::Kind::fd_time;
      } else {
        throw ValidationError("observers.curvature_mode", "must be analytic or fd_time");
      }
    } else if (qual == "observers.curvature_dt_probe") {
      cfg.observers.curvature_mode.dt_probe = to_double(value, line_no);
    } else if (qual == "observers.continuity") {
      cfg.observers.continuity = to_bool(value, line_no);
    } else if (qual == "observers.gauge_check") {
      cfg.observers.gauge_check = to_bool(value, line_no);
    } else if (qual == "output.dir") {
      cfg.output_dir = to_string_value(value, line_no);
    } else if (qual == "output.seed") {
      cfg.seed = static_cast<std::uint64_t>(to_int(value, line_no));
    } else {
      throw ValidationError(qual, "unknown configuration key");
    }
  }

  cfg.grid = GridSpec(grid_n, length, fd_order);

  const double lam = lambda.value_or(m_s / beta);
  const double muv = mu.value_or(m_s / beta);
  cfg.params = ModelParams(m_s, m_f, beta, g, theta0, lam, muv);

  cfg.dt = dt.value_or(0.25 * cfg.grid.dx());
  if (!(cfg.t_end > 0.0)) throw ValidationError("time.t_end", "must be > 0");
  if (cfg.dt > 0.5 * cfg.grid.dx() && !cfg.allow_cfl_violation) {
    throw ValidationError("time.dt", "exceeds the CFL bound 0.5*dx; set allow_cfl_violation");
  }
  if (!(cfg.dt > 0.0)) throw ValidationError("time.dt", "must be > 0");
  if (cfg.observers.stride < 1) throw ValidationError("observers.stride", "must be >= 1");
  if (cfg.observers.charges_n_max < 0 || cfg.observers.charges_n_max > 4) {
    throw ValidationError("observers.charges_n_max", "must lie in [0, 4]");
  }
  return cfg;
}

std::string emit_config(const ScenarioConfig& cfg) {
  std::string out;
  char buf[256];
  auto num = [&](const char* key, double v) {
    std::snprintf(buf, sizeof buf, "%s = %.17g\n", key, v);
    out += buf;
  };
  auto integer = [&](const char* key, long v) {
    std::snprintf(buf, sizeof buf, "%s = %ld\n", key, v);
    out += buf;
  };
  auto boolean = [&](const char* key, bool v) {
    out += std::string(key) + " = " + (v ? "true" : "false") + "\n";
  };
  auto str = [&](const char* key, const std::string& v) {
    out += std::string(key) + " = \"" + v + "\"\n";
  };
  auto zeta_array = [&](const char* key, const std::vector<Complex>& zs) {
    if (zs.empty()) return;
    out += std::string(key) + " = [";
    for (std::size_t i = 0; i < zs.size(); ++i) {
      if (i) out += ", ";
      out += "\"" + format_complex_brief(zs[i]) + "\"";
    }
    out += "]\n";
  };

  integer("seed", static_cast<long>(cfg.seed));
  out += "[params]\n";
  num("m_s", cfg.params.m_s);
  num("m_f", cfg.params.m_f);
  num("beta", cfg.params.beta);
  num("g", cfg.params.g);
  num("theta0", cfg.params.theta0);
  num("lambda", cfg.params.lambda);
  num("mu", cfg.params.mu);
  out += "[grid]\n";
  integer("n", cfg.grid.n);
  num("length", cfg.grid.length);
  integer("fd_order", cfg.grid.fd_order);
  out += "[time]\n";
  num("dt", cfg.dt);
  num("t_end", cfg.t_end);
  boolean("allow_cfl_violation", cfg.allow_cfl_violation);
  out += "[initial]\n";
  str("preset", cfg.initial.preset);
  num("amplitude", cfg.initial.amplitude);
  num("width", cfg.initial.width);
  num("center", cfg.initial.center);
  num("momentum", cfg.initial.momentum);
  num("phi0", cfg.initial.phi0);
  num("phi_t0", cfg.initial.phi_t0);
  boolean("zero_mean", cfg.initial.zero_mean);
  out += "[observers]\n";
  integer("stride", cfg.observers.stride);
  integer("charges_n_max", cfg.observers.charges_n_max);
  boolean("charges_fermion_substitution", cfg.observers.charges_fermion_substitution);
  zeta_array("monodromy_zetas", cfg.observers.monodromy_zetas);
  str("monodromy_connection",
      cfg.observers.monodromy_connection == Connection::a_x ? "a_x" : "a_plus");
  zeta_array("curvature_zetas", cfg.observers.curvature_zetas);
  str("curvature_mode",
      cfg.observers.curvature_mode.kind == CurvatureMode::Kind::analytic ? "analytic"
                                                                         : "fd_time");
  num("curvature_dt_probe", cfg.observers.curvature_mode.dt_probe);
  boolean("continuity", cfg.observers.continuity);
  boolean("gauge_check", cfg.observers.gauge_check);
  out += "[output]\n";
  str("dir", cfg.output_dir);
  return out;
}

FieldState build_initial_state(const InitialCondition& ic, const GridSpec& spec) {
  if (ic.preset == "vacuum") return FieldState::vacuum(spec);
  if (ic.preset == "homogeneous_phi") return homogeneous_phi(spec, ic.phi0, ic.phi_t0);
  if (ic.preset == "gaussian_phi") {
    return gaussian_phi_bump(spec, ic.amplitude, ic.width, ic.center, ic.zero_mean);
  }
  if (ic.preset == "spinor_packet") {
    return spinor_packet(spec, ic.amplitude, ic.width, ic.center, ic.momentum);
  }
  if (ic.preset == "constrained") {
    return constrained_preset(spec, ic.phi0, ic.amplitude, ic.width, ic.center, ic.momentum);
  }
  throw ValidationError("initial.preset", "unknown preset '" + ic.preset + "'");
}

}  // namespace laxlab
