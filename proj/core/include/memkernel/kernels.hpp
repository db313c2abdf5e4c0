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

// kernels.hpp: causal control-channel kernels and their transfer functions

#pragma once

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

namespace memkernel {

struct Mode {
  double c;   // weight, 1/time
  double nu;  // rate, 1/time
};

// K(tau) = g_inf delta(tau) + sum_k c_k exp(-nu_k tau), tau >= 0
struct ExponentialModes {
  std::vector<Mode> modes;
  double g_inf = 0.0;
};

struct Delta {
  double g;
};

struct Lag {
  double t_lag;
};

// Semi-infinite RC line read out at depth l.
struct Diffusive {
  double l;
  double D;
};

using KernelSpec = std::variant<ExponentialModes, Delta, Lag, Diffusive>;

// Normalized single pole: c = nu = 1/tau_c.
ExponentialModes single_pole(double tau_c);

// Throws InvalidKernel when a rate, length or diffusivity is not positive
// or a lag is negative.
void validate(const KernelSpec& k);

bool is_exponential(const KernelSpec& k) noexcept;
std::size_t mode_count(const KernelSpec& k) noexcept;

double eval_kernel(const KernelSpec& k, double tau);
double l1_norm(const KernelSpec& k);
std::complex<double> transfer_function(const KernelSpec& k, double omega);

}  // namespace memkernel
