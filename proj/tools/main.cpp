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

// memkernel command line: simulate, sweep, ladder, kubo, bounds, metrics

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "memkernel/config.hpp"
#include "memkernel/errors.hpp"
#include "memkernel/ladder.hpp"
#include "memkernel/numfmt.hpp"
#include "memkernel/runner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;
constexpr int kIoError = 4;

int exit_code(const memkernel::Error& e) {
  switch (e.code()) {
    case memkernel::ErrorCode::ConfigError:
      return kConfigError;
    case memkernel::ErrorCode::IoError:
      return kIoError;
    case memkernel::ErrorCode::InvalidKernel:
    case memkernel::ErrorCode::InvalidWaveform:
    case memkernel::ErrorCode::InvalidLadder:
    case memkernel::ErrorCode::InvalidFraction:
    case memkernel::ErrorCode::InvalidStep:
    case memkernel::ErrorCode::InvalidProblem:
    case memkernel::ErrorCode::NonHermitianPorts:
    case memkernel::ErrorCode::NonpositiveEta:
      return kConfigError;
    default:
      return kNumericalFailure;
  }
}

struct Options {
  std::string config;
  std::string out = ".";
  unsigned threads = 0;
  long seed = 0;
};

void common_flags(CLI::App* sub, Options& o, bool needs_config) {
  auto* c = sub->add_option("--config", o.config, "Path to the JSON configuration");
  if (needs_config) c->required();
  sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  sub->add_option("--seed", o.seed, "Reserved; the dynamics are deterministic");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace memkernel;
  CLI::App app{"memkernel: control-channel memory and hysteresis of a driven qubit"};
  app.require_subcommand(1);
  Options o;

  auto* simulate = app.add_subcommand("simulate", "Propagate one scenario; writes trajectory.csv and summary.json");
  common_flags(simulate, o, true);
  auto* sweep = app.add_subcommand("sweep", "Evaluate the (omega, u0) grid; writes sweep.csv");
  common_flags(sweep, o, true);
  sweep->add_option("--threads", o.threads, "Worker threads (0: hardware concurrency)");
  auto* ladder = app.add_subcommand("ladder", "Modal decomposition of an RC ladder; writes ladder.json");
  common_flags(ladder, o, true);
  auto* kubo = app.add_subcommand("kubo", "Lehmann kernel and susceptibility tables of a closed channel");
  common_flags(kubo, o, true);
  auto* bounds = app.add_subcommand("bounds", "Cyclic functional, commutator identity and bound; writes bounds.json");
  common_flags(bounds, o, true);

  auto* metrics = app.add_subcommand("metrics", "Step and bandwidth conversions (JSON on stdout)");
  double tau_c = 0.0;
  double f3db = 0.0;
  double diff_l = 0.0;
  double diff_d = 0.0;
  double eta = 0.0;
  std::string ladder_cfg;
  auto* g = metrics->add_option_group("source", "Channel description");
  g->add_option("--tau-c", tau_c, "Single-pole time constant");
  g->add_option("--f3db", f3db, "Single-pole -3 dB frequency");
  g->add_option("--ladder", ladder_cfg, "RC ladder JSON {\"R\":[...],\"C\":[...]}");
  g->add_option("--eta", eta, "Diffusive line: fraction of the final value");
  g->require_option(1);
  metrics->add_option("--l", diff_l, "Diffusive line: readout depth");
  metrics->add_option("--D", diff_d, "Diffusive line: diffusivity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }
  init_logging();

  try {
    if (*simulate || *bounds) {
      const ScenarioConfig cfg = load_scenario(o.config);
      const ScenarioResult res = run_scenario(cfg);
      if (*simulate) {
        write_scenario_outputs(res, cfg, o.out);
      } else {
        std::filesystem::create_directories(o.out);
        write_text_file((std::filesystem::path(o.out) / "bounds.json").string(), bounds_json(res));
      }
      if (!res.steady) {
        std::cerr << "NotSteady: control channel did not settle within max_cycles\n";
        return kNumericalFailure;
      }
      return kOk;
    }
    if (*sweep) {
      const ScenarioConfig cfg = load_scenario(o.config);
      const auto rows = run_sweep(cfg, o.threads);
      std::filesystem::create_directories(o.out);
      std::ostringstream csv;
      write_sweep_csv(csv, rows);
      write_text_file((std::filesystem::path(o.out) / "sweep.csv").string(), csv.str());
      for (const auto& r : rows)
        if (!r.error.empty()) return kNumericalFailure;
      return kOk;
    }
    if (*ladder) {
      const LadderSpec spec = parse_ladder(read_text_file(o.config));
      std::filesystem::create_directories(o.out);
      write_text_file((std::filesystem::path(o.out) / "ladder.json").string(), ladder_json(spec));
      return kOk;
    }
    if (*kubo) {
      write_kubo_outputs(parse_kubo(read_text_file(o.config)), o.out);
      return kOk;
    }
    if (*metrics) {
      if (eta > 0.0 || diff_l > 0.0 || diff_d > 0.0) {
        const double t = diffusive_fraction_time(diff_l, diff_d, eta);
        std::cout << "{\n  \"l\": " << shortest(diff_l) << ",\n  \"D\": " << shortest(diff_d)
                  << ",\n  \"eta\": " << shortest(eta) << ",\n  \"tau_eta\": " << shortest(t) << "\n}\n";
        return kOk;
      }
      StepMetrics m;
      if (!ladder_cfg.empty()) m = modal_metrics(modal_decompose(build_state_space(parse_ladder(read_text_file(ladder_cfg)))));
      else if (f3db > 0.0) m = single_pole_metrics(tau_c_from_f3db(f3db));
      else m = single_pole_metrics(tau_c);
      std::cout << metrics_json(m);
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kNumericalFailure;
  }
  return kOk;
}
