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

// filter.hpp: exponential-mode realization of Phi = K * u and periodic commands

#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "memkernel/kernels.hpp"

namespace memkernel {

struct Sine {
  double u0;
  double omega;
};

// Zero-mean triangle starting at u = 0 on a rising edge; corners at T/4 and 3T/4.
struct Triangle {
  double u0;
  double period;
};

// One period of a command, linearly interpolated and wrapped periodically.
struct Samples {
  double dt;
  std::vector<double> values;
};

using Waveform = std::variant<Sine, Triangle, Samples>;

void validate(const Waveform& w);
double period(const Waveform& w);
double waveform_value(const Waveform& w, double t);
// Right derivative at corners of piecewise-linear commands.
double waveform_derivative(const Waveform& w, double t);

struct FilterState {
  std::vector<double> phi;  // one amplitude per exponential mode
  double t = 0.0;
};

FilterState zero_state(const KernelSpec& k);

// Exact update for u linear on [t, t + dt].
FilterState step_filter(const FilterState& s, const KernelSpec& k, double u_begin, double u_end, double dt);

// Exact update for the command w itself: closed-form sinusoid integral for Sine,
// piecewise-linear integration split at corners for Triangle and Samples.
FilterState step_filter(const FilterState& s, const KernelSpec& k, const Waveform& w, double dt);

// Fixed point of the one-period map: the state on the steady cycle at t = 0.
FilterState periodic_state(const KernelSpec& k, const Waveform& w);

using HistoryAccessor = std::function<std::optional<double>(double t)>;

double realized_field(const FilterState& s, const KernelSpec& k, double u_now,
                      const HistoryAccessor& history = {});

struct HarmonicResponse {
  double amplitude;
  double delta;  // Phi = A sin(omega t - delta)
};

HarmonicResponse harmonic_steady_state(const KernelSpec& k, double u0, double omega);

}  // namespace memkernel
