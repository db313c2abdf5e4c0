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

// bounds.hpp: cyclic functional I = oint O du, commutator identity and kernel bound

#pragma once

#include "memkernel/kernels.hpp"
#include "memkernel/qubit.hpp"

namespace memkernel {

struct CyclicFunctional {
  double I_direct = 0.0;
  double I_commutator = 0.0;
  double I_bias = 0.0;
  double I_memory = 0.0;
  double u_l2 = 0.0;
  double a_l2 = 0.0;
  double b_sup = 0.0;
  double k_l1 = 0.0;
  double bound = 0.0;
  double state_mismatch = 0.0;
};

// Weights a = i<[O, H_drift]>, b = i<[O, H_control]> (real) for the Bloch vector r,
// with H = (gyro/2) (H_drift + Phi H_control).
void commutator_weights(const Vec3& r, const TransverseModel& m, Observable o, double& a, double& b);

// Evaluated on the final recorded cycle of traj.
CyclicFunctional cyclic_integrals(const Trajectory& traj, const TransverseModel& m, const KernelSpec& k,
                                  Observable o, double cyclic_tol = 1e-6);

}  // namespace memkernel
