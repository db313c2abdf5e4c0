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

// adiabatic.hpp: adiabatic response f(Phi) and its linear slope f'(0)

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "memkernel/qubit.hpp"

namespace memkernel {

double f_qubit(double phi, double omega_z, Observable o);

struct SpectralProblem {
  Eigen::MatrixXcd H0;    // drift at Phi = 0
  Eigen::MatrixXcd M;     // control generator
  Eigen::MatrixXcd O;     // observable
  std::vector<double> p;  // level weights, ascending energy order
  double band_tol = 1e-10;  // relative to the spectral range
  double gap_tol = 1e-8;    // relative to the spectral range
};

void validate(const SpectralProblem& sp);

struct Band {
  double energy;
  std::vector<int> levels;
  double weight;
};

std::vector<Band> spectral_bands(const SpectralProblem& sp);

double fprime0_general(const SpectralProblem& sp);

// Tr(rho_ad(Phi) O) with the Phi = 0 band weights carried along the spectral path.
double f_general(const SpectralProblem& sp, double phi);

// H0 = omega_z sigma_z, M = sigma_x (transverse) or sigma_z (longitudinal).
// Weights are those of the Bloch state r in the eigenbasis of the field at phi.
SpectralProblem qubit_problem(const TransverseModel& m, Observable o, const Vec3& r, double phi);

Eigen::Matrix2cd pauli(Observable o);

// Integral of Phi'^2 / Delta^3 over the final recorded cycle.
double nonadiabatic_integral(const Trajectory& traj, double omega_z);

}  // namespace memkernel
