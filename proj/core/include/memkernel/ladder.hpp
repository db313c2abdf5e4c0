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

// ladder.hpp: RC ladder state space, modal kernels and rise-time conversions

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "memkernel/kernels.hpp"

namespace memkernel {

struct LadderSpec {
  std::vector<double> R;
  std::vector<double> C;
};

struct StateSpace {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::size_t readout = 0;  // zero-based output node
};

struct ModalDecomposition {
  std::vector<double> rates;    // nu_k, ascending
  std::vector<double> weights;  // alpha_k

  double dc_gain() const;
  double impulse_response(double t) const;
  ExponentialModes kernel() const;
};

StateSpace build_state_space(const LadderSpec& spec);
ModalDecomposition modal_decompose(const StateSpace& ss);
std::complex<double> ladder_transfer(const StateSpace& ss, std::complex<double> s);

struct StepMetrics {
  double tau_c = 0.0;
  double f_3db = 0.0;
  double omega_3db = 0.0;
  double t_10 = 0.0;
  double t_90 = 0.0;
  double t_rise = 0.0;
  double t_rise_approx = 0.0;  // 0.35 / B_W with B_W = f_3db
};

StepMetrics single_pole_metrics(double tau_c);
double tau_c_from_f3db(double f_3db);
// Numerical 10-90 rise time and -3 dB point of a modal kernel.
StepMetrics modal_metrics(const ModalDecomposition& md);

// Time for the diffusive step response erfc(l / (2 sqrt(D t))) to reach eta.
double diffusive_fraction_time(double l, double D, double eta);
double diffusive_step_response(double l, double D, double t);
double diffusive_group_delay(double l, double D, double omega);

}  // namespace memkernel
