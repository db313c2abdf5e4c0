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

#include "memkernel/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "json.hpp"
#include "memkernel/adiabatic.hpp"
#include "memkernel/errors.hpp"
#include "memkernel/numfmt.hpp"

namespace memkernel {

namespace {

using json = nlohmann::json;

std::vector<double> slice(const std::vector<double>& v, std::size_t a, std::size_t b) {
  return std::vector<double>(v.begin() + static_cast<std::ptrdiff_t>(a), v.begin() + static_cast<std::ptrdiff_t>(b) + 1);
}

json cyclic_to_json(const CyclicFunctional& cf) {
  return {{"I_direct", cf.I_direct},   {"I_commutator", cf.I_commutator},
          {"I_bias", cf.I_bias},       {"I_memory", cf.I_memory},
          {"u_l2", cf.u_l2},           {"a_l2", cf.a_l2},
          {"b_sup", cf.b_sup},         {"k_l1", cf.k_l1},
          {"bound", cf.bound},         {"state_mismatch", cf.state_mismatch}};
}

std::filesystem::path ensure_dir(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir + ": " + ec.message());
  return std::filesystem::path(out_dir);
}

double sup_command(const Waveform& w) {
  if (const auto* s = std::get_if<Sine>(&w)) return s->u0;
  if (const auto* t = std::get_if<Triangle>(&w)) return t->u0;
  double m = 0.0;
  for (double v : std::get<Samples>(w).values) m = std::max(m, std::abs(v));
  return m;
}

// Raise steps_per_period until gyro |h|max dt <= max_phase_step, with |Phi| <= ||K||_1 sup|u|.
int resolved_steps(const ScenarioConfig& cfg) {
  const int spp = cfg.numerics.steps_per_period;
  if (cfg.numerics.max_phase_step <= 0.0 || std::holds_alternative<Diffusive>(cfg.kernel)) return spp;
  const double phi_max = l1_norm(cfg.kernel) * sup_command(cfg.waveform);
  const double oz = std::abs(cfg.model.omega_z);
  const double h_max = cfg.model.drive == Drive::Transverse ? std::hypot(oz, phi_max) : oz + phi_max;
  const double need = cfg.model.gyro * h_max * period(cfg.waveform) / cfg.numerics.max_phase_step;
  int quantum = 4;
  if (const auto* sm = std::get_if<Samples>(&cfg.waveform)) quantum = std::lcm(4, static_cast<int>(sm->values.size()));
  if (!(need > spp)) return spp;
  if (need > 1e8) throw Error(ErrorCode::InvalidStep, "resolving the qubit needs more than 1e8 steps per period");
  const int refined = static_cast<int>(std::ceil(need / quantum)) * quantum;
  spdlog::info("steps_per_period raised from {} to {} (max_phase_step {})", spp, refined,
               cfg.numerics.max_phase_step);
  return refined;
}

}  // namespace

void init_logging() {
  auto logger = spdlog::stderr_color_mt("memkernel");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("MEMKERNEL_LOG");
  if (!env) return;
  const std::string lvl(env);
  if (lvl == "error") spdlog::set_level(spdlog::level::err);
  else if (lvl == "warn") spdlog::set_level(spdlog::level::warn);
  else if (lvl == "info") spdlog::set_level(spdlog::level::info);
  else if (lvl == "debug") spdlog::set_level(spdlog::level::debug);
  else spdlog::warn("ignoring MEMKERNEL_LOG={} (use error, warn, info or debug)", lvl);
}

PropagateOptions propagate_options(const ScenarioConfig& cfg) {
  PropagateOptions o;
  o.steps_per_period = resolved_steps(cfg);
  o.cycles = cfg.numerics.cycles;
  o.max_cycles = cfg.numerics.max_cycles;
  o.steady_tol = cfg.numerics.steady_tol;
  o.filter_init = cfg.numerics.filter_init;
  o.init = cfg.init;
  return o;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioResult res;
  res.trajectory = propagate(cfg.model, cfg.kernel, cfg.waveform, propagate_options(cfg));
  const Trajectory& tr = res.trajectory;
  const std::size_t s0 = tr.final_cycle_start();
  const std::size_t s1 = tr.size() - 1;
  const double tol = cfg.numerics.closure_tol;

  const auto u = slice(tr.u, s0, s1);
  const auto phi = slice(tr.phi, s0, s1);
  const Cycle c_uphi = make_cycle(u, phi, tol);
  res.A_uPhi = loop_area(c_uphi, true);
  res.closed_uPhi = c_uphi.closed;
  double control_area = res.A_uPhi;
  if (const auto* s = std::get_if<Sine>(&cfg.waveform)) {
    res.A_uPhi_analytic = analytic_area(cfg.kernel, s->u0, s->omega);
    control_area = *res.A_uPhi_analytic;
  }

  for (Observable o : cfg.observables) {
    ObservableResult r;
    r.observable = o;
    const auto obs = slice(tr.component(o), s0, s1);
    const Cycle c_uo = make_cycle(u, obs, tol);
    const Cycle c_po = make_cycle(phi, obs, tol);
    r.A_uO = loop_area(c_uo, true);
    r.A_PhiO = loop_area(c_po, true);
    r.closed_uO = c_uo.closed;
    r.closed_PhiO = c_po.closed;
    try {
      r.fprime0 = fprime0_general(qubit_problem(cfg.model, o, tr.r[s0], tr.phi[s0]));
    } catch (const Error& e) {
      spdlog::warn("f'(0) unavailable: {}", e.what());
      r.fprime0 = std::numeric_limits<double>::quiet_NaN();
    }
    r.A_uO_pred = r.fprime0 * control_area;
    if (cfg.model.drive == Drive::Transverse) r.nonadiabatic_integral = nonadiabatic_integral(tr, cfg.model.omega_z);
    try {
      r.cyclic = cyclic_integrals(tr, cfg.model, cfg.kernel, o, cfg.numerics.cyclic_tol);
    } catch (const Error& e) {
      r.cyclic_error = e.what();
    }
    res.observables.push_back(std::move(r));
  }
  res.eps_ad_max = tr.eps_ad_max;
  res.adiabatic = res.eps_ad_max < cfg.adiabatic_threshold;
  res.steady = tr.steady;
  if (!res.steady) spdlog::warn("control channel not settled after {} cycles", tr.transient_cycles);
  return res;
}

std::string summary_json(const ScenarioConfig& cfg, const ScenarioResult& res) {
  const Trajectory& tr = res.trajectory;
  json j;
  j["version"] = kSchemaVersion;
  j["kernel"] = json::parse(kernel_to_json(cfg.kernel));
  j["omega_z"] = cfg.model.omega_z;
  j["gyro_factor"] = cfg.model.gyro;
  j["steps_per_period"] = tr.steps_per_period;
  j["dt"] = tr.dt;
  j["transient_cycles"] = tr.transient_cycles;
  j["recorded_cycles"] = tr.cycle_starts.size();
  j["steady"] = res.steady;
  j["filter_defect"] = tr.filter_defect;
  j["state_defect"] = tr.state_defect;
  j["eps_ad_max"] = res.eps_ad_max;
  j["adiabatic_threshold"] = cfg.adiabatic_threshold;
  j["adiabatic"] = res.adiabatic;
  j["A_uPhi"] = res.A_uPhi;
  j["closed_uPhi"] = res.closed_uPhi;
  j["A_uPhi_analytic"] = res.A_uPhi_analytic ? json(*res.A_uPhi_analytic) : json(nullptr);
  j["observables"] = json::array();
  for (const auto& r : res.observables) {
    json o{{"observable", observable_name(r.observable)},
           {"A_uO", r.A_uO},
           {"A_PhiO", r.A_PhiO},
           {"closed_uO", r.closed_uO},
           {"closed_PhiO", r.closed_PhiO},
           {"fprime0", std::isfinite(r.fprime0) ? json(r.fprime0) : json(nullptr)},
           {"A_uO_pred", std::isfinite(r.A_uO_pred) ? json(r.A_uO_pred) : json(nullptr)},
           {"nonadiabatic_integral", r.nonadiabatic_integral}};
    o["cyclic"] = r.cyclic ? cyclic_to_json(*r.cyclic) : json(nullptr);
    if (!r.cyclic_error.empty()) o["cyclic_error"] = r.cyclic_error;
    j["observables"].push_back(o);
  }
  return j.dump(2) + "\n";
}

std::string bounds_json(const ScenarioResult& res) {
  json j = json::array();
  for (const auto& r : res.observables) {
    json o{{"observable", observable_name(r.observable)}};
    if (r.cyclic) o["cyclic"] = cyclic_to_json(*r.cyclic);
    else o["error"] = r.cyclic_error;
    j.push_back(o);
  }
  return j.dump(2) + "\n";
}

void write_scenario_outputs(const ScenarioResult& res, const ScenarioConfig& cfg, const std::string& out_dir) {
  const auto dir = ensure_dir(out_dir);
  std::ostringstream csv;
  write_trajectory_csv(csv, res.trajectory);
  write_text_file((dir / "trajectory.csv").string(), csv.str());
  write_text_file((dir / "summary.json").string(), summary_json(cfg, res));
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, unsigned threads) {
  if (cfg.sweep.omega.empty() || cfg.sweep.u0.empty())
    throw Error(ErrorCode::ConfigError, "$.sweep: omega and u0 grids must be nonempty");
  std::vector<SweepRow> rows;
  for (double w : cfg.sweep.omega)
    for (double u0 : cfg.sweep.u0) {
      SweepRow r;
      r.omega = w;
      r.u0 = u0;
      rows.push_back(r);
    }

  auto evaluate = [&cfg](SweepRow& row) {
    try {
      ScenarioConfig point = cfg;
      point.waveform = with_drive(cfg.waveform, row.u0, row.omega);
      point.observables = {cfg.observables.front()};
      const ScenarioResult res = run_scenario(point);
      const auto& obs = res.observables.front();
      row.A_uPhi_sim = res.A_uPhi;
      row.A_uPhi_analytic = res.A_uPhi_analytic.value_or(std::numeric_limits<double>::quiet_NaN());
      row.A_uO_sim = obs.A_uO;
      row.A_uO_pred = obs.A_uO_pred;
      row.A_PhiO_sim = obs.A_PhiO;
      row.eps_ad_max = res.eps_ad_max;
      row.adiabatic = res.adiabatic;
      row.steady = res.steady;
      if (!res.steady) row.error = "NotSteady";
      spdlog::info("sweep point omega={} u0={} done", row.omega, row.u0);
    } catch (const std::exception& e) {
      row.error = e.what();
      spdlog::error("sweep point omega={} u0={} failed: {}", row.omega, row.u0, e.what());
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < rows.size(); i = next++) evaluate(rows[i]);
    });
  }
  pool.clear();
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "omega,u0,A_uPhi_sim,A_uPhi_analytic,A_uO_sim,A_uO_pred,A_PhiO_sim,eps_ad_max,adiabatic,steady,error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    for (char& ch : err)
      if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
    os << shortest(r.omega) << ',' << shortest(r.u0) << ',' << shortest(r.A_uPhi_sim) << ','
       << shortest(r.A_uPhi_analytic) << ',' << shortest(r.A_uO_sim) << ',' << shortest(r.A_uO_pred) << ','
       << shortest(r.A_PhiO_sim) << ',' << shortest(r.eps_ad_max) << ',' << (r.adiabatic ? 1 : 0) << ','
       << (r.steady ? 1 : 0) << ',' << err << '\n';
  }
}

std::string ladder_json(const LadderSpec& spec) {
  const StateSpace ss = build_state_space(spec);
  const ModalDecomposition md = modal_decompose(ss);
  json j;
  j["R"] = spec.R;
  j["C"] = spec.C;
  json A = json::array();
  for (Eigen::Index r = 0; r < ss.A.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < ss.A.cols(); ++c) row.push_back(ss.A(r, c));
    A.push_back(row);
  }
  j["A"] = A;
  j["b"] = std::vector<double>(ss.b.data(), ss.b.data() + ss.b.size());
  j["rates"] = md.rates;
  j["weights"] = md.weights;
  j["dc_gain"] = md.dc_gain();
  j["kernel"] = json::parse(kernel_to_json(md.kernel()));
  return j.dump(2) + "\n";
}

std::string metrics_json(const StepMetrics& m) {
  json j{{"tau_c", m.tau_c}, {"f_3db", m.f_3db}, {"omega_3db", m.omega_3db},         {"t_10", m.t_10},
         {"t_90", m.t_90},   {"t_rise", m.t_rise}, {"t_rise_approx", m.t_rise_approx}};
  return j.dump(2) + "\n";
}

void write_kubo_outputs(const KuboConfig& kc, const std::string& out_dir) {
  const auto dir = ensure_dir(out_dir);
  const LehmannKernel lk(kc.channel);
  const auto& g = kc.grid;

  std::ostringstream kernel_csv;
  kernel_csv << "tau,K_lehmann,K_evolution,K_imag_residue\n";
  double worst_imag = 0.0;
  for (int i = 0; i < g.tau_points; ++i) {
    const double tau = g.tau_max * i / (g.tau_points - 1);
    const auto k = lk.complex_value(tau);
    worst_imag = std::max(worst_imag, std::abs(k.imag()));
    kernel_csv << shortest(tau) << ',' << shortest(k.real()) << ',' << shortest(evolution_oracle(kc.channel, tau))
               << ',' << shortest(k.imag()) << '\n';
  }
  write_text_file((dir / "kernel.csv").string(), kernel_csv.str());

  std::ostringstream chi_csv;
  chi_csv << "omega,re_chi,im_chi\n";
  for (int i = 0; i < g.omega_points; ++i) {
    const double w = g.omega_min + (g.omega_max - g.omega_min) * i / (g.omega_points - 1);
    const auto chi = lk.susceptibility(w, g.eta);
    chi_csv << shortest(w) << ',' << shortest(chi.real()) << ',' << shortest(chi.imag()) << '\n';
  }
  write_text_file((dir / "susceptibility.csv").string(), chi_csv.str());

  const auto& tw = lk.weights();
  json j;
  j["energies"] = std::vector<double>(tw.energies.data(), tw.energies.data() + tw.energies.size());
  j["weights"] = std::vector<double>(tw.p.data(), tw.p.data() + tw.p.size());
  j["port_offset"] = lk.port_offset();
  j["max_imag_residue"] = worst_imag;
  j["eta"] = g.eta;
  if (std::isfinite(kc.channel.beta)) {
    j["beta"] = kc.channel.beta;
    j["detailed_balance_residual"] = detailed_balance_residual(kc.channel);
    j["fdt_residual"] = fdt_residual(kc.channel);
  } else {
    j["beta"] = "inf";
  }
  write_text_file((dir / "kubo_summary.json").string(), j.dump(2) + "\n");
}

}  // namespace memkernel
