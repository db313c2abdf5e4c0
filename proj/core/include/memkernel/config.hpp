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

// config.hpp: JSON scenario, ladder and channel configurations

#pragma once

#include <string>
#include <vector>

#include "memkernel/filter.hpp"
#include "memkernel/kernels.hpp"
#include "memkernel/kubo.hpp"
#include "memkernel/ladder.hpp"
#include "memkernel/qubit.hpp"

namespace memkernel {

inline constexpr int kSchemaVersion = 1;

struct NumericsConfig {
  int steps_per_period = 1024;
  int cycles = 1;
  int max_cycles = 200;
  FilterInit filter_init = FilterInit::Zero;
  double steady_tol = 1e-8;
  double closure_tol = 1e-6;
  double cyclic_tol = 1e-6;
  double max_phase_step = 0.05;  // Bloch rotation per step in rad; 0 keeps steps_per_period
};

struct SweepConfig {
  std::vector<double> omega;
  std::vector<double> u0;
};

struct ScenarioConfig {
  KernelSpec kernel = ExponentialModes{};
  Waveform waveform = Sine{0.0, 1.0};
  TransverseModel model;
  Initialization init = Initialization::PlusState;
  NumericsConfig numerics;
  std::vector<Observable> observables{Observable::SigmaX};
  SweepConfig sweep;
  double adiabatic_threshold = 0.1;
};

ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);

KernelSpec parse_kernel(const std::string& text);
std::string kernel_to_json(const KernelSpec& k);

LadderSpec parse_ladder(const std::string& text);

struct KuboGrid {
  double tau_max = 50.0;
  int tau_points = 501;
  double omega_min = -5.0;
  double omega_max = 5.0;
  int omega_points = 1001;
  double eta = 0.05;
};

struct KuboConfig {
  ChannelSpec channel;
  KuboGrid grid;
};

KuboConfig parse_kubo(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

const char* observable_name(Observable o);
Waveform with_drive(const Waveform& w, double u0, double omega);

}  // namespace memkernel
