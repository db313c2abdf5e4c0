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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "memkernel/adiabatic.hpp"
#include "memkernel/bounds.hpp"
#include "memkernel/errors.hpp"
#include "memkernel/loops.hpp"

namespace mk = memkernel;
using cd = std::complex<double>;

namespace {

mk::PropagateOptions floquet(int spp) {
  mk::PropagateOptions o;
  o.steps_per_period = spp;
  o.filter_init = mk::FilterInit::Periodic;
  o.init = mk::Initialization::Floquet;
  return o;
}

// i <[O, G]> for the Bloch state r by explicit 2x2 matrix arithmetic.
double i_commutator(const mk::Vec3& r, const Eigen::Matrix2cd& O, const Eigen::Matrix2cd& G) {
  const Eigen::Matrix2cd rho = 0.5 * (Eigen::Matrix2cd::Identity() + r.x() * mk::pauli(mk::Observable::SigmaX) +
                                      r.y() * mk::pauli(mk::Observable::SigmaY) +
                                      r.z() * mk::pauli(mk::Observable::SigmaZ));
  const cd v = cd(0.0, 1.0) * (rho * (O * G - G * O)).trace();
  EXPECT_LT(std::abs(v.imag()), 1e-12);
  return v.real();
}

}  // namespace

TEST(Bounds, CommutatorWeightsMatchMatrixAlgebra) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const mk::Vec3 r = mk::Vec3(n(rng), n(rng), n(rng)).normalized() * 0.9;
    for (double gyro : {1.0, 2.0}) {
      for (auto drive : {mk::Drive::Transverse, mk::Drive::Longitudinal}) {
        const mk::TransverseModel m{0.7 + trial * 0.01, gyro, drive};
        for (auto o : {mk::Observable::SigmaX, mk::Observable::SigmaY, mk::Observable::SigmaZ}) {
          double a = 0.0, b = 0.0;
          mk::commutator_weights(r, m, o, a, b);
          const Eigen::Matrix2cd Hz = 0.5 * gyro * m.omega_z * mk::pauli(mk::Observable::SigmaZ);
          const Eigen::Matrix2cd Mc = 0.5 * gyro *
                                      mk::pauli(drive == mk::Drive::Transverse ? mk::Observable::SigmaX
                                                                               : mk::Observable::SigmaZ);
          EXPECT_NEAR(a, i_commutator(r, mk::pauli(o), Hz), 1e-14);
          EXPECT_NEAR(b, i_commutator(r, mk::pauli(o), Mc), 1e-14);
        }
      }
    }
  }
}

TEST(Bounds, ZeroDriveVanishes) {
  const mk::TransverseModel m{1.0, 2.0, mk::Drive::Transverse};
  const mk::KernelSpec k = mk::ExponentialModes{{{1.0, 1.0}}};
  const auto tr = mk::propagate(m, k, mk::Sine{0.0, 1.0}, floquet(256));
  for (auto o : {mk::Observable::SigmaX, mk::Observable::SigmaY, mk::Observable::SigmaZ}) {
    const auto cf = mk::cyclic_integrals(tr, m, k, o);
    EXPECT_EQ(cf.I_direct, 0.0);
    EXPECT_EQ(cf.I_commutator, 0.0);
    EXPECT_EQ(cf.I_bias, 0.0);
    EXPECT_EQ(cf.I_memory, 0.0);
    EXPECT_EQ(cf.u_l2, 0.0);
    EXPECT_EQ(cf.bound, 0.0);
  }
}

TEST(Bounds, CommutingLongitudinalModel) {
  const mk::TransverseModel m{1.0, 2.0, mk::Drive::Longitudinal};
  const mk::KernelSpec k = mk::ExponentialModes{{{1.0, 1.0}}};
  const auto tr = mk::propagate(m, k, mk::Sine{0.8, 1.3}, floquet(512));
  const auto cf = mk::cyclic_integrals(tr, m, k, mk::Observable::SigmaZ);
  EXPECT_NEAR(cf.I_direct, 0.0, 1e-14);
  EXPECT_EQ(cf.I_commutator, 0.0);
}

TEST(Bounds, NotCyclic) {
  const mk::TransverseModel m{1.0, 2.0, mk::Drive::Transverse};
  const mk::KernelSpec k = mk::ExponentialModes{{{1.0, 1.0}}};
  auto o = floquet(256);
  o.init = mk::Initialization::PlusState;
  const auto tr = mk::propagate(m, k, mk::Sine{1.0, 1.0}, o);
  try {
    mk::cyclic_integrals(tr, m, k, mk::Observable::SigmaX);
    ADD_FAILURE();
  } catch (const mk::Error& e) {
    EXPECT_EQ(e.code(), mk::ErrorCode::NotCyclic);
  }
}

TEST(Bounds, IdentityAndBoundOnRandomConfigs) {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const mk::TransverseModel m{0.5 + 1.5 * U(rng), U(rng) < 0.5 ? 1.0 : 2.0, mk::Drive::Transverse};
    mk::ExponentialModes k;
    const int nm = 1 + static_cast<int>(3 * U(rng));
    for (int j = 0; j < nm; ++j) k.modes.push_back({0.2 + 2.0 * U(rng), 0.2 + 4.0 * U(rng)});
    const mk::Waveform w = mk::Sine{0.1 + 0.9 * U(rng), 0.2 + 2.8 * U(rng)};
    const auto o = static_cast<mk::Observable>(static_cast<int>(3 * U(rng)));
    const auto tr = mk::propagate(m, k, w, floquet(2048));
    const auto cf = mk::cyclic_integrals(tr, m, k, o);
    const double I = cf.I_direct;
    EXPECT_LT(std::abs(I - cf.I_commutator), 1e-6 * std::max(std::abs(I), 1e-3)) << trial;
    EXPECT_NEAR(cf.I_bias + cf.I_memory, cf.I_commutator, 1e-14 * std::max(1.0, std::abs(cf.I_commutator)));
    EXPECT_LE(std::abs(I), cf.bound * (1.0 + 1e-3)) << trial;
    EXPECT_NEAR(cf.k_l1, mk::l1_norm(k), 1e-15);
    // The cyclic functional is the oriented (u, O) loop area.
    const std::size_t s0 = tr.final_cycle_start();
    std::vector<double> x(tr.u.begin() + s0, tr.u.end());
    std::vector<double> y;
    for (std::size_t i = s0; i < tr.size(); ++i) y.push_back(tr.component(o)[i]);
    EXPECT_NEAR(mk::loop_area(mk::make_cycle(x, y)), I, 1e-4 * std::max(std::abs(I), 1e-3)) << trial;
  }
}
