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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "memkernel/config.hpp"
#include "memkernel/errors.hpp"
#include "memkernel/runner.hpp"

namespace mk = memkernel;
namespace fs = std::filesystem;

namespace {

const std::string kConfigs = MEMKERNEL_CONFIG_DIR;

std::string scenario(const std::string& kernel, const std::string& waveform, const std::string& model,
                     const std::string& extra = "") {
  return R"({"version": 1, "kernel": )" + kernel + R"(, "waveform": )" + waveform + R"(, "model": )" + model + extra +
         "}";
}

std::string single_pole(double u0, double w, const std::string& model, const std::string& extra = "") {
  std::ostringstream wf;
  wf.precision(17);
  wf << R"({"type": "sine", "u0": )" << u0 << R"(, "omega": )" << w << "}";
  return scenario(R"({"type": "single_pole", "tau_c": 1.0})", wf.str(), model, extra);
}

mk::ErrorCode parse_code(const std::string& text, std::string* msg = nullptr) {
  try {
    mk::parse_scenario(text);
  } catch (const mk::Error& e) {
    if (msg) *msg = e.what();
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return mk::ErrorCode::IoError;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("memkernel_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(const std::string& args) {
  const std::string cmd = std::string(MEMKERNEL_CLI) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "cfg.json";
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Config, ShippedConfigsParse) {
  for (const auto& e : fs::directory_iterator(kConfigs)) {
    const std::string name = e.path().filename().string();
    const std::string text = mk::read_text_file(e.path().string());
    if (name.rfind("ladder", 0) == 0) EXPECT_NO_THROW(mk::parse_ladder(text)) << name;
    else if (name.rfind("kubo", 0) == 0) EXPECT_NO_THROW(mk::parse_kubo(text)) << name;
    else EXPECT_NO_THROW(mk::parse_scenario(text)) << name;
  }
}

TEST(Config, Defaults) {
  const auto cfg = mk::parse_scenario(single_pole(1.0, 1.0, R"({"omega_z": 1.0, "initialization": "plus_state"})"));
  EXPECT_EQ(cfg.model.gyro, 2.0);
  EXPECT_EQ(cfg.numerics.steps_per_period, 1024);
  EXPECT_EQ(cfg.numerics.max_cycles, 200);
  EXPECT_EQ(cfg.adiabatic_threshold, 0.1);
  EXPECT_EQ(cfg.numerics.filter_init, mk::FilterInit::Zero);
  const auto lam = mk::parse_scenario(scenario(R"({"type": "single_pole", "tau_c": 0.5})",
                                                 R"({"type": "sine", "u0": 1, "omega": 1})", R"({"lambda": 10, "initialization": "plus_state"})"));
  EXPECT_DOUBLE_EQ(lam.model.omega_z, 20.0);
}

TEST(Config, Errors) {
  std::string msg;
  EXPECT_EQ(parse_code(single_pole(1, 1, R"({"omega_z": 1, "initialization": "plus_state", "spin": 2})"), &msg), mk::ErrorCode::ConfigError);
  EXPECT_NE(msg.find("$.model"), std::string::npos) << msg;
  EXPECT_NE(msg.find("spin"), std::string::npos) << msg;
  EXPECT_EQ(parse_code("{\"version\": 1,\n \"kernel\": [1, 2,,]}", &msg), mk::ErrorCode::ConfigError);
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_EQ(parse_code(R"({"version": 2})"), mk::ErrorCode::ConfigError);
  EXPECT_EQ(parse_code(single_pole(1, 1, R"({"omega_z": 1, "initialization": "plus_state", "lambda": 2})")), mk::ErrorCode::ConfigError);
  EXPECT_EQ(parse_code(single_pole(1, 1, R"({"omega_z": 1, "initialization": "plus_state", "gyro_factor": 3})")), mk::ErrorCode::ConfigError);
  EXPECT_EQ(parse_code(single_pole(1, 1, R"({"omega_z": 1, "initialization": "excited"})")),
            mk::ErrorCode::ConfigError);
  EXPECT_EQ(parse_code(single_pole(1, 1, R"({"omega_z": 1, "initialization": "plus_state"})", R"(, "numerics": {"steps_per_period": 30})")),
            mk::ErrorCode::ConfigError);
  EXPECT_EQ(parse_code(single_pole(1, 1, R"({"omega_z": 1, "initialization": "plus_state"})", R"(, "adiabatic_threshold": 1.5)")),
            mk::ErrorCode::ConfigError);
  EXPECT_EQ(parse_code(single_pole(1, 1, R"({"omega_z": 1, "initialization": "plus_state"})", R"(, "observables": ["sw"])")),
            mk::ErrorCode::ConfigError);
  EXPECT_EQ(parse_code(scenario(R"({"type": "exp_modes", "modes": [[1, -1]]})",
                                R"({"type": "sine", "u0": 1, "omega": 1})", R"({"omega_z": 1, "initialization": "plus_state"})")),
            mk::ErrorCode::ConfigError);
  EXPECT_EQ(parse_code(scenario(R"({"type": "exp_modes", "modes": [[1, 1]]})",
                                R"({"type": "samples", "dt": 0.1, "values": [0, 1, 0.5]})", R"({"omega_z": 1, "initialization": "plus_state"})",
                                R"(, "numerics": {"steps_per_period": 64})")),
            mk::ErrorCode::ConfigError);
  try {
    mk::load_scenario("/nonexistent/memkernel.json");
    ADD_FAILURE();
  } catch (const mk::Error& e) {
    EXPECT_EQ(e.code(), mk::ErrorCode::IoError);
  }
}

TEST(Config, KernelRoundTrip) {
  const mk::KernelSpec ks[] = {mk::ExponentialModes{{{0.1, 0.3}, {-2.0, 7.5}}, 0.25}, mk::Delta{0.5}, mk::Lag{1.25},
                               mk::Diffusive{0.7, 2.0}};
  for (const auto& k : ks) {
    const auto back = mk::parse_kernel(mk::kernel_to_json(k));
    EXPECT_EQ(back.index(), k.index());
    EXPECT_EQ(mk::kernel_to_json(back), mk::kernel_to_json(k));
  }
}

TEST(Config, KuboAndLadder) {
  const auto kc = mk::parse_kubo(
      R"({"version": 1, "H": [[0, 0], [0, 1]], "L": [[0, [0, -1]], [[0, 1], 0]], "F": [[1, 0], [0, -1]], "beta": "inf"})");
  EXPECT_TRUE(std::isinf(kc.channel.beta));
  EXPECT_EQ(kc.channel.L(0, 1), std::complex<double>(0, -1));
  try {
    mk::parse_kubo(R"({"version": 1, "H": [[0, 1], [0, 1]], "L": [[1, 0], [0, 1]], "F": [[1, 0], [0, 1]], "beta": 1})");
    ADD_FAILURE();
  } catch (const mk::Error& e) {
    EXPECT_EQ(e.code(), mk::ErrorCode::ConfigError);
  }
  const auto ls = mk::parse_ladder(R"({"R": [1, 2], "C": [3, 4]})");
  EXPECT_EQ(ls.R[1], 2.0);
  EXPECT_EQ(ls.C[0], 3.0);
}

TEST(Runner, ZeroDriveGivesZeroAreas) {
  const auto cfg = mk::parse_scenario(single_pole(0.0, 1.0, R"({"omega_z": 1, "initialization": "ground_state"})",
                                                  R"(, "observables": ["sx", "sy", "sz"])"));
  const auto res = mk::run_scenario(cfg);
  EXPECT_EQ(res.A_uPhi, 0.0);
  EXPECT_EQ(*res.A_uPhi_analytic, 0.0);
  for (const auto& o : res.observables) {
    EXPECT_EQ(o.A_uO, 0.0);
    EXPECT_EQ(o.A_PhiO, 0.0);
  }
}

TEST(Runner, UnitSinglePoleArea) {
  const auto cfg = mk::parse_scenario(single_pole(1.0, 1.0, R"({"omega_z": 1, "initialization": "plus_state"})",
                                                  R"(, "numerics": {"steps_per_period": 4096})"));
  const auto res = mk::run_scenario(cfg);
  EXPECT_NEAR(res.A_uPhi, -std::numbers::pi / 2.0, 1e-4);
  EXPECT_NEAR(*res.A_uPhi_analytic, -std::numbers::pi / 2.0, 1e-15);
  EXPECT_TRUE(res.steady);
}

TEST(Runner, AdiabaticImprint) {
  const auto cfg = mk::parse_scenario(single_pole(
      0.05, 0.1, R"({"lambda": 10, "initialization": "ground_state"})",
      R"(, "numerics": {"steps_per_period": 16384, "filter_init": "periodic"}, "observables": ["sx"])"));
  const auto res = mk::run_scenario(cfg);
  EXPECT_TRUE(res.adiabatic);
  EXPECT_LT(res.eps_ad_max, 0.01);
  const auto& o = res.observables[0];
  EXPECT_NEAR(o.fprime0, -0.1, 1e-12);
  EXPECT_LT(std::abs(o.A_uO - o.fprime0 * res.A_uPhi) / std::abs(res.A_uPhi), 0.05);
  EXPECT_LT(std::abs(o.A_PhiO), 0.01 * std::abs(res.A_uPhi));
}

TEST(Runner, StepRefinement) {
  auto cfg = mk::parse_scenario(single_pole(1.0, 0.01, R"({"omega_z": 10, "initialization": "plus_state"})"));
  const auto o = mk::propagate_options(cfg);
  const double T = 2.0 * std::numbers::pi / 0.01;
  EXPECT_GE(o.steps_per_period, 2.0 * std::hypot(10.0, 1.0) * T / 0.05);
  EXPECT_EQ(o.steps_per_period % 4, 0);
  cfg.numerics.max_phase_step = 0.0;
  EXPECT_EQ(mk::propagate_options(cfg).steps_per_period, 1024);
  const auto fast = mk::parse_scenario(single_pole(1.0, 10.0, R"({"omega_z": 1, "initialization": "plus_state"})"));
  EXPECT_EQ(mk::propagate_options(fast).steps_per_period, 1024);
}

TEST(Runner, DimensionlessScaling) {
  // Physical units with tau_c = 2.5 against the dimensionless problem s = t / tau_c.
  const double tc = 2.5, u0 = 0.4, w = 0.7, oz = 1.3;
  std::ostringstream phys, dim;
  phys.precision(17);
  dim.precision(17);
  phys << R"({"version": 1, "kernel": {"type": "single_pole", "tau_c": )" << tc
       << R"(}, "waveform": {"type": "sine", "u0": )" << u0 << R"(, "omega": )" << w
       << R"(}, "model": {"omega_z": )" << oz
       << R"(, "initialization": "ground_state"}, "numerics": {"steps_per_period": 2048, "filter_init": "periodic"}, "observables": ["sx", "sz"]})";
  dim << R"({"version": 1, "kernel": {"type": "single_pole", "tau_c": 1}, "waveform": {"type": "sine", "u0": )"
      << u0 * tc << R"(, "omega": )" << w * tc << R"(}, "model": {"lambda": )" << oz * tc
      << R"(, "initialization": "ground_state"}, "numerics": {"steps_per_period": 2048, "filter_init": "periodic"}, "observables": ["sx", "sz"]})";
  const auto a = mk::run_scenario(mk::parse_scenario(phys.str()));
  const auto b = mk::run_scenario(mk::parse_scenario(dim.str()));
  EXPECT_EQ(a.trajectory.steps_per_period, b.trajectory.steps_per_period);
  EXPECT_NEAR(b.A_uPhi, tc * tc * a.A_uPhi, 1e-10 * std::abs(b.A_uPhi));
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_NEAR(b.observables[i].A_uO, tc * a.observables[i].A_uO, 1e-10 * std::abs(b.observables[i].A_uO));
    EXPECT_NEAR(b.observables[i].A_PhiO, tc * a.observables[i].A_PhiO,
                1e-10 * std::abs(b.observables[i].A_PhiO) + 1e-18);
  }
  EXPECT_NEAR(a.eps_ad_max, b.eps_ad_max, 1e-10 * a.eps_ad_max);
}

TEST(Runner, SweepDeterministicAndOrdered) {
  const auto cfg = mk::load_scenario(kConfigs + "/sweep_single_pole.json");
  const auto r1 = mk::run_sweep(cfg, 1);
  const auto r4 = mk::run_sweep(cfg, 4);
  std::ostringstream a, b;
  mk::write_sweep_csv(a, r1);
  mk::write_sweep_csv(b, r4);
  EXPECT_EQ(a.str(), b.str());
  ASSERT_EQ(r1.size(), cfg.sweep.omega.size() * cfg.sweep.u0.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    EXPECT_EQ(r1[i].omega, cfg.sweep.omega[i / cfg.sweep.u0.size()]);
    EXPECT_EQ(r1[i].u0, cfg.sweep.u0[i % cfg.sweep.u0.size()]);
    EXPECT_TRUE(r1[i].error.empty()) << r1[i].error;
    EXPECT_TRUE(std::isfinite(r1[i].A_uO_sim));
  }
  std::istringstream is(a.str());
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, "omega,u0,A_uPhi_sim,A_uPhi_analytic,A_uO_sim,A_uO_pred,A_PhiO_sim,eps_ad_max,adiabatic,steady,error");
}

TEST(Runner, SweepScalingAndPeak) {
  auto cfg = mk::load_scenario(kConfigs + "/sweep_single_pole.json");
  cfg.sweep.u0 = {0.05, 0.1, 0.2};
  const auto rows = mk::run_sweep(cfg, 0);
  const std::size_t nu = cfg.sweep.u0.size();
  std::size_t best = 0;
  for (std::size_t i = 0; i < cfg.sweep.omega.size(); ++i) {
    const double ref = rows[i * nu].A_uPhi_sim / (0.05 * 0.05);
    for (std::size_t j = 1; j < nu; ++j) {
      const auto& r = rows[i * nu + j];
      EXPECT_NEAR(r.A_uPhi_sim / (r.u0 * r.u0), ref, 1e-10 * std::abs(ref));
    }
    if (std::abs(rows[i * nu].A_uPhi_sim) > std::abs(rows[best * nu].A_uPhi_sim)) best = i;
  }
  EXPECT_EQ(cfg.sweep.omega[best], 1.0);
  for (std::size_t i = 0; i + 1 < cfg.sweep.omega.size(); ++i) {
    const double a = std::abs(rows[i * nu].A_uPhi_sim), b = std::abs(rows[(i + 1) * nu].A_uPhi_sim);
    if (i < best) EXPECT_LT(a, b);
    else EXPECT_GT(a, b);
  }
}

TEST(Runner, SweepRecordsNotSteady) {
  auto cfg = mk::parse_scenario(scenario(R"({"type": "exp_modes", "modes": [[0.01, 0.01]]})",
                                         R"({"type": "sine", "u0": 1, "omega": 1})", R"({"omega_z": 1, "initialization": "plus_state"})",
                                         R"(, "numerics": {"max_cycles": 2}, "sweep": {"omega": [1, 2], "u0": [0.1]})"));
  const auto rows = mk::run_sweep(cfg, 2);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.steady);
    EXPECT_NE(r.error.find("NotSteady"), std::string::npos) << r.error;
  }
}

TEST(Runner, ScenarioOutputsAreDeterministic) {
  const auto cfg = mk::load_scenario(kConfigs + "/bounds_floquet.json");
  const auto d1 = scratch("det1"), d2 = scratch("det2");
  mk::write_scenario_outputs(mk::run_scenario(cfg), cfg, d1.string());
  mk::write_scenario_outputs(mk::run_scenario(cfg), cfg, d2.string());
  for (const char* f : {"trajectory.csv", "summary.json"}) {
    const std::string a = slurp(d1 / f);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(d2 / f)) << f;
  }
  EXPECT_EQ(slurp(d1 / "trajectory.csv").substr(0, 29), "t,u,phi,dphi,rx,ry,rz,eps_ad\n");
}

TEST(Runner, BoundsIdentityFromConfig) {
  const auto res = mk::run_scenario(mk::load_scenario(kConfigs + "/bounds_floquet.json"));
  for (const auto& o : res.observables) {
    ASSERT_TRUE(o.cyclic.has_value()) << o.cyclic_error;
    const double I = o.cyclic->I_direct;
    EXPECT_LT(std::abs(I - o.cyclic->I_commutator), 1e-6 * std::max(std::abs(I), 1e-3));
    EXPECT_LE(std::abs(I), o.cyclic->bound * (1.0 + 1e-3));
  }
}

TEST(Runner, KuboOutputs) {
  const auto dir = scratch("kubo");
  mk::write_kubo_outputs(mk::parse_kubo(mk::read_text_file(kConfigs + "/kubo_two_level.json")), dir.string());
  std::istringstream k(slurp(dir / "kernel.csv"));
  std::string line;
  std::getline(k, line);
  EXPECT_EQ(line, "tau,K_lehmann,K_evolution,K_imag_residue");
  int rows = 0;
  while (std::getline(k, line)) {
    double tau, kl, ke, im;
    char c;
    std::istringstream ls(line);
    ls >> tau >> c >> kl >> c >> ke >> c >> im;
    const double dp = std::tanh(0.5);
    EXPECT_NEAR(kl, 2.0 * dp * std::sin(tau), 1e-12);
    EXPECT_NEAR(kl, ke, 1e-10);
    ++rows;
  }
  EXPECT_EQ(rows, 501);
  std::istringstream s(slurp(dir / "susceptibility.csv"));
  std::getline(s, line);
  EXPECT_EQ(line, "omega,re_chi,im_chi");
  EXPECT_TRUE(fs::exists(dir / "kubo_summary.json"));
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch("cli");
  const std::string out = " --out " + dir.string();
  EXPECT_EQ(cli("simulate --config " + kConfigs + "/single_pole_unit.json" + out), 0);
  EXPECT_TRUE(fs::exists(dir / "trajectory.csv"));
  EXPECT_TRUE(fs::exists(dir / "summary.json"));
  EXPECT_EQ(cli("bounds --config " + kConfigs + "/bounds_floquet.json" + out), 0);
  EXPECT_TRUE(fs::exists(dir / "bounds.json"));
  EXPECT_EQ(cli("sweep --threads 2 --config " + kConfigs + "/sweep_single_pole.json" + out), 0);
  EXPECT_TRUE(fs::exists(dir / "sweep.csv"));
  EXPECT_EQ(cli("ladder --config " + kConfigs + "/ladder_uniform4.json" + out), 0);
  EXPECT_TRUE(fs::exists(dir / "ladder.json"));
  EXPECT_EQ(cli("kubo --config " + kConfigs + "/kubo_two_level.json" + out), 0);
  EXPECT_EQ(cli("metrics --tau-c 1"), 0);
  EXPECT_EQ(cli("metrics --f3db 1e9"), 0);
  EXPECT_EQ(cli("metrics --eta 0.5 --l 1 --D 1"), 0);
  EXPECT_EQ(cli("metrics --ladder " + kConfigs + "/ladder_uniform4.json"), 0);

  EXPECT_EQ(cli("simulate" + out), 2);
  EXPECT_EQ(cli("metrics"), 2);
  EXPECT_EQ(cli("metrics --eta 1.5 --l 1 --D 1"), 2);
  const std::string bad = write_config(dir, single_pole(1, 1, R"({"omega_z": 1, "initialization": "plus_state", "bogus": 1})"));
  EXPECT_EQ(cli("simulate --config " + bad + out), 2);
  const std::string slow =
      write_config(dir, scenario(R"({"type": "exp_modes", "modes": [[0.01, 0.01]]})",
                                 R"({"type": "sine", "u0": 1, "omega": 1})", R"({"omega_z": 1, "initialization": "plus_state"})",
                                 R"(, "numerics": {"max_cycles": 2}, "sweep": {"omega": [1], "u0": [1]})"));
  EXPECT_EQ(cli("simulate --config " + slow + out), 3);
  EXPECT_EQ(cli("sweep --config " + slow + out), 3);
  EXPECT_EQ(cli("simulate --config /nonexistent/cfg.json" + out), 4);
  EXPECT_EQ(cli("simulate --config " + kConfigs + "/single_pole_unit.json --out /proc/memkernel_out"), 4);
}

TEST(Cli, MetricsOutput) {
  const auto dir = scratch("metrics");
  const std::string file = (dir / "m.json").string();
  ASSERT_EQ(std::system((std::string(MEMKERNEL_CLI) + " metrics --tau-c 1 > " + file).c_str()), 0);
  const std::string m = slurp(file);
  EXPECT_NE(m.find("t_rise"), std::string::npos);
  EXPECT_NE(m.find("2.19722457733"), std::string::npos) << m;
}
