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

// kubo.hpp: thermal Lehmann kernel and eta-regularized susceptibility of a closed channel

#pragma once

#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace memkernel {

struct ChannelSpec {
  Eigen::MatrixXcd H;  // channel Hamiltonian
  Eigen::MatrixXcd L;  // output port
  Eigen::MatrixXcd F;  // input port
  double beta = std::numeric_limits<double>::infinity();
};

void validate(const ChannelSpec& spec);

struct ThermalWeights {
  Eigen::VectorXd energies;  // ascending
  Eigen::VectorXd p;
  Eigen::MatrixXcd vectors;
};

ThermalWeights thermal_weights(const Eigen::MatrixXcd& H, double beta);

// Bohr-frequency decomposition K(tau) = i sum_nm w_nm exp(i omega_nm tau).
class LehmannKernel {
 public:
  explicit LehmannKernel(const ChannelSpec& spec);

  std::complex<double> complex_value(double tau) const;
  double operator()(double tau) const;
  std::complex<double> susceptibility(double omega, double eta) const;

  const ThermalWeights& weights() const { return tw_; }
  // (p_n - p_m) L_nm F_mn and E_n - E_m, row-major over (n, m)
  const Eigen::MatrixXcd& amplitudes() const { return amp_; }
  const Eigen::MatrixXd& bohr() const { return bohr_; }
  double port_offset() const { return offset_; }

 private:
  ThermalWeights tw_;
  Eigen::MatrixXcd Le_;
  Eigen::MatrixXcd Fe_;
  Eigen::MatrixXcd amp_;
  Eigen::MatrixXd bohr_;
  double offset_ = 0.0;
};

double lehmann_kernel(const ChannelSpec& spec, double tau);
double evolution_oracle(const ChannelSpec& spec, double tau);
std::complex<double> eta_susceptibility(const ChannelSpec& spec, double omega, double eta);

// max over pairs of |(p_n - p_m) + (e^{-beta E_m}/Z)(1 - e^{-beta omega_nm})|; finite beta only.
double detailed_balance_residual(const ChannelSpec& spec);

struct Stick {
  double omega;
  std::complex<double> weight;
};

// Correlation sticks p_n L_nm F_mn and commutator sticks (p_n - p_m) L_nm F_mn at
// omega_nm, merged within tol.
std::vector<Stick> correlation_sticks(const ChannelSpec& spec, double tol = 1e-9);
std::vector<Stick> commutator_sticks(const ChannelSpec& spec, double tol = 1e-9);
// max |commutator stick - (1 - e^{beta omega}) correlation stick|; finite beta only.
double fdt_residual(const ChannelSpec& spec);

// Tr(rho_B L)
double port_offset(const ChannelSpec& spec);

}  // namespace memkernel
