// Copyright 2026 The memkernel Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "memkernel/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "memkernel/errors.hpp"

namespace memkernel {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ConfigError, path + ": " + msg);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ConfigError,
                "JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  require_object(j, path);
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) fail(path + "." + key, "unknown field");
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) fail(path + "." + key, "missing required field");
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

double number_field(const json& j, const std::string& key, const std::string& path) {
  return number(field(j, key, path), path + "." + key);
}

double positive_field(const json& j, const std::string& key, const std::string& path) {
  const double v = number_field(j, key, path);
  if (!(v > 0.0)) fail(path + "." + key, "must be positive");
  return v;
}

int int_field(const json& j, const std::string& key, const std::string& path, int fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

std::string string_field(const json& j, const std::string& key, const std::string& path) {
  const auto& v = field(j, key, path);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> number_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

KernelSpec kernel_from(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string type = string_field(j, "type", path);
  KernelSpec k;
  if (type == "exp_modes") {
    check_keys(j, {"type", "modes", "g_inf"}, path);
    ExponentialModes e;
    const auto& modes = field(j, "modes", path);
    if (!modes.is_array()) fail(path + ".modes", "expected an array of [c, nu] pairs");
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const std::string p = path + ".modes[" + std::to_string(i) + "]";
      if (!modes[i].is_array() || modes[i].size() != 2) fail(p, "expected a [c, nu] pair");
      e.modes.push_back({number(modes[i][0], p + "[0]"), number(modes[i][1], p + "[1]")});
    }
    e.g_inf = j.contains("g_inf") ? number_field(j, "g_inf", path) : 0.0;
    k = e;
  } else if (type == "single_pole") {
    check_keys(j, {"type", "tau_c"}, path);
    k = single_pole(positive_field(j, "tau_c", path));
  } else if (type == "delta") {
    check_keys(j, {"type", "g"}, path);
    k = Delta{number_field(j, "g", path)};
  } else if (type == "lag") {
    check_keys(j, {"type", "t_lag"}, path);
    k = Lag{number_field(j, "t_lag", path)};
  } else if (type == "diffusive") {
    check_keys(j, {"type", "l", "D"}, path);
    k = Diffusive{number_field(j, "l", path), number_field(j, "D", path)};
  } else {
    fail(path + ".type", "unknown kernel type '" + type + "'");
  }
  try {
    validate(k);
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return k;
}

Waveform waveform_from(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string type = string_field(j, "type", path);
  Waveform w;
  if (type == "sine") {
    check_keys(j, {"type", "u0", "omega"}, path);
    w = Sine{number_field(j, "u0", path), number_field(j, "omega", path)};
  } else if (type == "triangle") {
    check_keys(j, {"type", "u0", "period"}, path);
    w = Triangle{number_field(j, "u0", path), number_field(j, "period", path)};
  } else if (type == "samples") {
    check_keys(j, {"type", "dt", "values"}, path);
    w = Samples{number_field(j, "dt", path), number_list(field(j, "values", path), path + ".values")};
  } else {
    fail(path + ".type", "unknown waveform type '" + type + "'");
  }
  try {
    validate(w);
  } catch (const Error& e) {
    fail(path, e.what());
  }
  return w;
}

Observable observable_from(const std::string& s, const std::string& path) {
  if (s == "sx" || s == "sigma_x") return Observable::SigmaX;
  if (s == "sy" || s == "sigma_y") return Observable::SigmaY;
  if (s == "sz" || s == "sigma_z") return Observable::SigmaZ;
  fail(path, "unknown observable '" + s + "' (use sx, sy or sz)");
}

Eigen::MatrixXcd matrix_from(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
  const std::size_t d = j.size();
  Eigen::MatrixXcd m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    const std::string pr = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != d) fail(pr, "row length must equal the number of rows");
    for (std::size_t c = 0; c < d; ++c) {
      const std::string pc = pr + "[" + std::to_string(c) + "]";
      const auto& e = j[r][c];
      if (e.is_number()) {
        m(r, c) = number(e, pc);
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = {number(e[0], pc + "[0]"), number(e[1], pc + "[1]")};
      } else {
        fail(pc, "expected a number or a [re, im] pair");
      }
    }
  }
  return m;
}

void check_version(const json& j) {
  if (!j.contains("version")) fail("$.version", "missing schema version");
  if (!j.at("version").is_number_integer() || j.at("version").get<int>() != kSchemaVersion)
    fail("$.version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
}

}  // namespace

const char* observable_name(Observable o) {
  switch (o) {
    case Observable::SigmaX: return "sx";
    case Observable::SigmaY: return "sy";
    case Observable::SigmaZ: return "sz";
  }
  return "?";
}

Waveform with_drive(const Waveform& w, double u0, double omega) {
  if (std::holds_alternative<Sine>(w)) return Sine{u0, omega};
  if (std::holds_alternative<Triangle>(w)) return Triangle{u0, 2.0 * std::numbers::pi / omega};
  throw Error(ErrorCode::ConfigError, "$.sweep: sample waveforms cannot be swept");
}

ScenarioConfig parse_scenario(const std::string& text) {
  const json j = parse_json(text);
  check_keys(j, {"version", "kernel", "waveform", "model", "numerics", "observables", "sweep", "adiabatic_threshold",
                 "description"},
             "$");
  check_version(j);
  ScenarioConfig cfg;
  cfg.kernel = kernel_from(field(j, "kernel", "$"), "$.kernel");
  cfg.waveform = waveform_from(field(j, "waveform", "$"), "$.waveform");

  const auto& m = field(j, "model", "$");
  check_keys(m, {"omega_z", "lambda", "gyro_factor", "drive", "initialization"}, "$.model");
  if (m.contains("omega_z") == m.contains("lambda")) fail("$.model", "give exactly one of omega_z or lambda");
  if (m.contains("omega_z")) {
    cfg.model.omega_z = number_field(m, "omega_z", "$.model");
  } else {
    const auto* e = std::get_if<ExponentialModes>(&cfg.kernel);
    if (!e || e->modes.size() != 1) fail("$.model.lambda", "lambda = omega_z tau_c needs a single-pole kernel");
    cfg.model.omega_z = number_field(m, "lambda", "$.model") * e->modes[0].nu;
  }
  cfg.model.gyro = m.contains("gyro_factor") ? number_field(m, "gyro_factor", "$.model") : 2.0;
  if (cfg.model.gyro != 1.0 && cfg.model.gyro != 2.0) fail("$.model.gyro_factor", "must be 1 or 2");
  if (m.contains("drive")) {
    const std::string d = string_field(m, "drive", "$.model");
    if (d == "transverse") cfg.model.drive = Drive::Transverse;
    else if (d == "longitudinal") cfg.model.drive = Drive::Longitudinal;
    else fail("$.model.drive", "must be 'transverse' or 'longitudinal'");
  }
  const std::string init = string_field(m, "initialization", "$.model");
  if (init == "plus_state") cfg.init = Initialization::PlusState;
  else if (init == "ground_state") cfg.init = Initialization::GroundState;
  else if (init == "floquet") cfg.init = Initialization::Floquet;
  else fail("$.model.initialization", "must be 'plus_state', 'ground_state' or 'floquet'");

  if (j.contains("numerics")) {
    const auto& n = j.at("numerics");
    check_keys(n, {"steps_per_period", "cycles", "max_cycles", "filter_init", "max_phase_step", "tolerances"},
               "$.numerics");
    auto& nc = cfg.numerics;
    nc.steps_per_period = int_field(n, "steps_per_period", "$.numerics", nc.steps_per_period);
    nc.cycles = int_field(n, "cycles", "$.numerics", nc.cycles);
    nc.max_cycles = int_field(n, "max_cycles", "$.numerics", nc.max_cycles);
    if (nc.steps_per_period < 16 || nc.steps_per_period % 4 != 0)
      fail("$.numerics.steps_per_period", "must be >= 16 and a multiple of 4");
    if (nc.cycles < 1) fail("$.numerics.cycles", "must be >= 1");
    if (nc.max_cycles < 1) fail("$.numerics.max_cycles", "must be >= 1");
    if (n.contains("filter_init")) {
      const std::string fi = string_field(n, "filter_init", "$.numerics");
      if (fi == "zero") nc.filter_init = FilterInit::Zero;
      else if (fi == "periodic") nc.filter_init = FilterInit::Periodic;
      else fail("$.numerics.filter_init", "must be 'zero' or 'periodic'");
    }
    if (n.contains("max_phase_step")) {
      nc.max_phase_step = number_field(n, "max_phase_step", "$.numerics");
      if (!(nc.max_phase_step >= 0.0)) fail("$.numerics.max_phase_step", "must be >= 0");
    }
    if (n.contains("tolerances")) {
      const auto& t = n.at("tolerances");
      const std::string p = "$.numerics.tolerances";
      check_keys(t, {"steady", "closure", "cyclic"}, p);
      if (t.contains("steady")) nc.steady_tol = positive_field(t, "steady", p);
      if (t.contains("closure")) nc.closure_tol = positive_field(t, "closure", p);
      if (t.contains("cyclic")) nc.cyclic_tol = positive_field(t, "cyclic", p);
    }
  }
  if (const auto* sm = std::get_if<Samples>(&cfg.waveform)) {
    if (cfg.numerics.steps_per_period % static_cast<int>(sm->values.size()) != 0)
      fail("$.numerics.steps_per_period", "must be a multiple of the number of waveform samples");
  }

  if (j.contains("observables")) {
    const auto& obs = j.at("observables");
    if (!obs.is_array() || obs.empty()) fail("$.observables", "expected a nonempty array");
    cfg.observables.clear();
    for (std::size_t i = 0; i < obs.size(); ++i) {
      const std::string p = "$.observables[" + std::to_string(i) + "]";
      if (!obs[i].is_string()) fail(p, "expected a string");
      cfg.observables.push_back(observable_from(obs[i].get<std::string>(), p));
    }
  }
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    check_keys(s, {"omega", "u0"}, "$.sweep");
    cfg.sweep.omega = number_list(field(s, "omega", "$.sweep"), "$.sweep.omega");
    cfg.sweep.u0 = number_list(field(s, "u0", "$.sweep"), "$.sweep.u0");
    for (double w : cfg.sweep.omega)
      if (!(w > 0.0)) fail("$.sweep.omega", "frequencies must be positive");
    for (double u : cfg.sweep.u0)
      if (!(u >= 0.0)) fail("$.sweep.u0", "amplitudes must be nonnegative");
  }
  if (j.contains("adiabatic_threshold")) {
    cfg.adiabatic_threshold = number_field(j, "adiabatic_threshold", "$");
    if (!(cfg.adiabatic_threshold > 0.0 && cfg.adiabatic_threshold < 1.0))
      fail("$.adiabatic_threshold", "must lie in (0, 1)");
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) { return parse_scenario(read_text_file(path)); }

KernelSpec parse_kernel(const std::string& text) { return kernel_from(parse_json(text), "$"); }

std::string kernel_to_json(const KernelSpec& k) {
  json j;
  if (const auto* e = std::get_if<ExponentialModes>(&k)) {
    j["type"] = "exp_modes";
    j["modes"] = json::array();
    for (const auto& m : e->modes) j["modes"].push_back({m.c, m.nu});
    j["g_inf"] = e->g_inf;
  } else if (const auto* d = std::get_if<Delta>(&k)) {
    j = {{"type", "delta"}, {"g", d->g}};
  } else if (const auto* l = std::get_if<Lag>(&k)) {
    j = {{"type", "lag"}, {"t_lag", l->t_lag}};
  } else {
    const auto& df = std::get<Diffusive>(k);
    j = {{"type", "diffusive"}, {"l", df.l}, {"D", df.D}};
  }
  return j.dump();
}

LadderSpec parse_ladder(const std::string& text) {
  const json j = parse_json(text);
  check_keys(j, {"version", "R", "C", "description"}, "$");
  LadderSpec s{number_list(field(j, "R", "$"), "$.R"), number_list(field(j, "C", "$"), "$.C")};
  if (s.R.empty() || s.R.size() != s.C.size()) fail("$", "R and C must be nonempty and of equal length");
  for (std::size_t i = 0; i < s.R.size(); ++i) {
    if (!(s.R[i] > 0.0)) fail("$.R[" + std::to_string(i) + "]", "must be positive");
    if (!(s.C[i] > 0.0)) fail("$.C[" + std::to_string(i) + "]", "must be positive");
  }
  return s;
}

KuboConfig parse_kubo(const std::string& text) {
  const json j = parse_json(text);
  check_keys(j, {"version", "H", "L", "F", "beta", "tau", "omega", "eta", "description"}, "$");
  check_version(j);
  KuboConfig kc;
  kc.channel.H = matrix_from(field(j, "H", "$"), "$.H");
  kc.channel.L = matrix_from(field(j, "L", "$"), "$.L");
  kc.channel.F = matrix_from(field(j, "F", "$"), "$.F");
  const auto& b = field(j, "beta", "$");
  if (b.is_string() && b.get<std::string>() == "inf") {
    kc.channel.beta = std::numeric_limits<double>::infinity();
  } else {
    kc.channel.beta = number(b, "$.beta");
    if (kc.channel.beta < 0.0) fail("$.beta", "must be >= 0 or \"inf\"");
  }
  try {
    validate(kc.channel);
  } catch (const Error& e) {
    fail("$", e.what());
  }
  if (j.contains("tau")) {
    const auto& t = j.at("tau");
    check_keys(t, {"max", "points"}, "$.tau");
    kc.grid.tau_max = positive_field(t, "max", "$.tau");
    kc.grid.tau_points = int_field(t, "points", "$.tau", kc.grid.tau_points);
    if (kc.grid.tau_points < 2) fail("$.tau.points", "must be >= 2");
  }
  if (j.contains("omega")) {
    const auto& w = j.at("omega");
    check_keys(w, {"min", "max", "points"}, "$.omega");
    kc.grid.omega_min = number_field(w, "min", "$.omega");
    kc.grid.omega_max = number_field(w, "max", "$.omega");
    kc.grid.omega_points = int_field(w, "points", "$.omega", kc.grid.omega_points);
    if (!(kc.grid.omega_max > kc.grid.omega_min)) fail("$.omega", "max must exceed min");
    if (kc.grid.omega_points < 2) fail("$.omega.points", "must be >= 2");
  }
  if (j.contains("eta")) kc.grid.eta = positive_field(j, "eta", "$");
  return kc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace memkernel
