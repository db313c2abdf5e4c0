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

// qubit.hpp: driven qubit: Bloch propagation, spectral data, adiabaticity

#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "memkernel/filter.hpp"
#include "memkernel/kernels.hpp"

namespace memkernel {

using Vec3 = Eigen::Vector3d;

enum class Drive { Transverse, Longitudinal };
enum class Observable { SigmaX, SigmaY, SigmaZ };

struct TransverseModel {
  double omega_z = 1.0;
  double gyro = 2.0;  // 1 or 2
  Drive drive = Drive::Transverse;
};

// Field vector h of H = h . sigma (before the gyro factor).
Vec3 field_vector(double phi, const TransverseModel& m);
Vec3 bloch_derivative(const Vec3& r, double phi, const TransverseModel& m);

enum class Initialization { PlusState, GroundState, Floquet, Explicit };
enum class FilterInit { Zero, Periodic };

struct PropagateOptions {
  int steps_per_period = 1024;
  int cycles = 1;
  int max_cycles = 200;  // cap on transient cycles
  double steady_tol = 1e-8;
  FilterInit filter_init = FilterInit::Zero;
  Initialization init = Initialization::PlusState;
  Vec3 r0 = Vec3(1.0, 0.0, 0.0);  // used with Initialization::Explicit
};

struct Trajectory {
  double dt = 0.0;
  int steps_per_period = 0;
  std::vector<double> t;  // time since the start of recording
  std::vector<double> u;
  std::vector<double> du;
  std::vector<double> phi;
  std::vector<double> dphi;
  std::vector<Vec3> r;
  std::vector<double> eps_ad;
  std::vector<std::size_t> cycle_starts;  // sample index of each recorded cycle
  int transient_cycles = 0;
  bool steady = false;          // control channel settled within the cap
  double filter_defect = 0.0;   // sup |Phi| change between consecutive cycles
  double state_defect = 0.0;    // sup |r(T) - r(0)| over the final cycle
  double eps_ad_max = 0.0;

  std::size_t size() const { return t.size(); }
  // First sample of the final recorded cycle; the cycle spans steps_per_period + 1 samples.
  std::size_t final_cycle_start() const { return cycle_starts.back(); }
  std::vector<double> component(Observable o) const;
};

Trajectory propagate(const TransverseModel& model, const KernelSpec& k, const Waveform& w,
                     const PropagateOptions& opts);
Trajectory propagate(const TransverseModel& model, const KernelSpec& k, const Waveform& w, int steps_per_period,
                     int cycles, const Vec3& r0);

// Rotation-angle accumulator for the longitudinal model driven through a unit-gain
// single pole on its steady cycle.
double longitudinal_theta(double u0, double omega, double alpha, double omega_z, double t);

double instantaneous_gap(double phi, double omega_z);
Vec3 ground_bloch(double phi, double omega_z);
double adiabaticity_parameter(double phi, double dphi, double omega_z);

// Columns t,u,phi,dphi,rx,ry,rz,eps_ad; 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace memkernel
