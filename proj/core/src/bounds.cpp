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

#include "memkernel/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "memkernel/errors.hpp"

namespace memkernel {

namespace {

int axis(Observable o) { return o == Observable::SigmaX ? 0 : (o == Observable::SigmaY ? 1 : 2); }

// i <[sigma_j, sigma_k]> = -2 eps_{jkl} r_l
double i_commutator(int j, int k, const Vec3& r) {
  if (j == k) return 0.0;
  const int l = 3 - j - k;
  const int eps = ((k - j + 3) % 3 == 1) ? 1 : -1;
  return -2.0 * eps * r(l);
}

}  // namespace

void commutator_weights(const Vec3& r, const TransverseModel& m, Observable o, double& a, double& b) {
  const int j = axis(o);
  const double scale = 0.5 * m.gyro;
  a = scale * m.omega_z * i_commutator(j, 2, r);
  b = scale * i_commutator(j, m.drive == Drive::Transverse ? 0 : 2, r);
}

CyclicFunctional cyclic_integrals(const Trajectory& traj, const TransverseModel& m, const KernelSpec& k,
                                  Observable o, double cyclic_tol) {
  const std::size_t s0 = traj.final_cycle_start();
  const std::size_t s1 = traj.size() - 1;
  CyclicFunctional cf;
  cf.state_mismatch = (traj.r[s1] - traj.r[s0]).cwiseAbs().maxCoeff();
  if (cf.state_mismatch > cyclic_tol)
    throw Error(ErrorCode::NotCyclic, "state at the period boundary differs by more than the cyclic tolerance");

  const int j = axis(o);
  const double dt = traj.dt;
  double a2 = 0.0;
  // Periodic trapezoid: the closing sample s1 duplicates s0.
  for (std::size_t i = s0; i < s1; ++i) {
    double a = 0.0;
    double b = 0.0;
    commutator_weights(traj.r[i], m, o, a, b);
    cf.I_direct += traj.r[i](j) * traj.du[i] * dt;
    cf.I_bias += traj.u[i] * a * dt;
    cf.I_memory += traj.u[i] * traj.phi[i] * b * dt;
    cf.u_l2 += traj.u[i] * traj.u[i] * dt;
    a2 += a * a * dt;
    cf.b_sup = std::max(cf.b_sup, std::abs(b));
  }
  cf.I_commutator = cf.I_bias + cf.I_memory;
  cf.u_l2 = std::sqrt(cf.u_l2);
  cf.a_l2 = std::sqrt(a2);
  cf.k_l1 = l1_norm(k);
  cf.bound = cf.u_l2 * cf.a_l2 + cf.b_sup * cf.k_l1 * cf.u_l2 * cf.u_l2;
  return cf;
}

}  // namespace memkernel
