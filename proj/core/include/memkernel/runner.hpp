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

// runner.hpp: scenario and sweep orchestration with CSV/JSON emission

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "memkernel/bounds.hpp"
#include "memkernel/config.hpp"
#include "memkernel/loops.hpp"
#include "memkernel/qubit.hpp"

namespace memkernel {

// Reads MEMKERNEL_LOG (error, warn, info, debug); defaults to warn.
void init_logging();

struct ObservableResult {
  Observable observable = Observable::SigmaX;
  double A_uO = 0.0;
  double A_PhiO = 0.0;
  bool closed_uO = false;
  bool closed_PhiO = false;
  double fprime0 = 0.0;
  double A_uO_pred = 0.0;
  double nonadiabatic_integral = 0.0;
  std::optional<CyclicFunctional> cyclic;
  std::string cyclic_error;
};

struct ScenarioResult {
  Trajectory trajectory;
  double A_uPhi = 0.0;
  bool closed_uPhi = false;
  std::optional<double> A_uPhi_analytic;  // sinusoidal commands only
  std::vector<ObservableResult> observables;
  double eps_ad_max = 0.0;
  bool adiabatic = false;
  bool steady = false;
};

PropagateOptions propagate_options(const ScenarioConfig& cfg);
ScenarioResult run_scenario(const ScenarioConfig& cfg);

std::string summary_json(const ScenarioConfig& cfg, const ScenarioResult& res);
std::string bounds_json(const ScenarioResult& res);
void write_scenario_outputs(const ScenarioResult& res, const ScenarioConfig& cfg, const std::string& out_dir);

struct SweepRow {
  double omega = 0.0;
  double u0 = 0.0;
  double A_uPhi_sim = 0.0;
  double A_uPhi_analytic = 0.0;
  double A_uO_sim = 0.0;
  double A_uO_pred = 0.0;
  double A_PhiO_sim = 0.0;
  double eps_ad_max = 0.0;
  bool adiabatic = false;
  bool steady = false;
  std::string error;
};

// Grid order: omega outer, u0 inner. threads = 0 uses the hardware concurrency.
std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, unsigned threads = 0);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

std::string ladder_json(const LadderSpec& spec);
std::string metrics_json(const StepMetrics& m);
void write_kubo_outputs(const KuboConfig& kc, const std::string& out_dir);

}  // namespace memkernel
