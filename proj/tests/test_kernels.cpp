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

#include <cmath>
#include <complex>
#include <numbers>

#include "memkernel/errors.hpp"
#include "memkernel/kernels.hpp"
#include "oracles.hpp"

namespace mk = memkernel;
using cd = std::complex<double>;

namespace {

mk::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const mk::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return mk::ErrorCode::IoError;
}

double diffusive_closed(double l, double D, double t) {
  return l / (2.0 * std::sqrt(std::numbers::pi * D)) * std::pow(t, -1.5) * std::exp(-l * l / (4.0 * D * t));
}

}  // namespace

TEST(Kernels, SinglePoleAtOrigin) {
  EXPECT_DOUBLE_EQ(mk::eval_kernel(mk::ExponentialModes{{{1.0, 1.0}}}, 0.0), 1.0);
  const auto sp = mk::single_pole(2.0);
  ASSERT_EQ(sp.modes.size(), 1u);
  EXPECT_DOUBLE_EQ(sp.modes[0].c, 0.5);
  EXPECT_DOUBLE_EQ(sp.modes[0].nu, 0.5);
  EXPECT_NEAR(mk::eval_kernel(sp, 2.0), 0.5 * std::exp(-1.0), 1e-16);
}

TEST(Kernels, Causality) {
  const mk::KernelSpec ks[] = {mk::ExponentialModes{{{1.0, 1.0}, {-2.0, 3.0}}, 0.3}, mk::Diffusive{1.0, 2.0}};
  for (const auto& k : ks) {
    for (double tau = -5.0; tau < 0.0; tau += 0.01) EXPECT_EQ(mk::eval_kernel(k, tau), 0.0);
    EXPECT_EQ(mk::eval_kernel(k, -0.5), 0.0);
  }
}

TEST(Kernels, DistributionsAreNotPointwise) {
  EXPECT_EQ(code_of([] { mk::eval_kernel(mk::Delta{1.0}, 0.1); }), mk::ErrorCode::NotPointwiseEvaluable);
  EXPECT_EQ(code_of([] { mk::eval_kernel(mk::Lag{0.5}, 0.1); }), mk::ErrorCode::NotPointwiseEvaluable);
}

TEST(Kernels, InvalidParameters) {
  EXPECT_EQ(code_of([] { mk::eval_kernel(mk::ExponentialModes{{{1.0, 0.0}}}, 0.1); }), mk::ErrorCode::InvalidKernel);
  EXPECT_EQ(code_of([] { mk::l1_norm(mk::ExponentialModes{{{1.0, -1.0}}}); }), mk::ErrorCode::InvalidKernel);
  EXPECT_EQ(code_of([] { mk::validate(mk::Diffusive{0.0, 1.0}); }), mk::ErrorCode::InvalidKernel);
  EXPECT_EQ(code_of([] { mk::validate(mk::Diffusive{1.0, -1.0}); }), mk::ErrorCode::InvalidKernel);
  EXPECT_EQ(code_of([] { mk::validate(mk::Lag{-0.1}); }), mk::ErrorCode::InvalidKernel);
  EXPECT_EQ(code_of([] { mk::transfer_function(mk::ExponentialModes{{{1.0, -2.0}}}, 1.0); }),
            mk::ErrorCode::InvalidKernel);
}

TEST(Kernels, DiffusiveValue) {
  EXPECT_NEAR(mk::eval_kernel(mk::Diffusive{1.0, 1.0}, 0.25), 0.830215, 1e-6);
  EXPECT_NEAR(mk::eval_kernel(mk::Diffusive{1.0, 1.0}, 0.25), diffusive_closed(1.0, 1.0, 0.25), 1e-14);
  EXPECT_EQ(mk::eval_kernel(mk::Diffusive{1.0, 1.0}, 0.0), 0.0);
}

TEST(Kernels, DiffusiveMatchesTalbotInversion) {
  for (const auto& [l, D] : {std::pair{1.0, 1.0}, std::pair{0.7, 2.5}, std::pair{2.0, 0.5}}) {
    const auto F = [l, D](cd s) { return std::exp(-l * std::sqrt(s / D)); };
    for (double t : {0.05, 0.25, 0.5, 1.0, 3.0, 10.0}) {
      const double ref = oracle::talbot(F, t);
      EXPECT_NEAR(mk::eval_kernel(mk::Diffusive{l, D}, t), ref, 1e-8 * std::max(1.0, std::abs(ref)))
          << "l=" << l << " D=" << D << " t=" << t;
    }
  }
}

TEST(Kernels, L1Examples) {
  EXPECT_DOUBLE_EQ(mk::l1_norm(mk::ExponentialModes{{{1.0, 1.0}}}), 1.0);
  EXPECT_DOUBLE_EQ(mk::l1_norm(mk::Delta{0.5}), 0.5);
  EXPECT_DOUBLE_EQ(mk::l1_norm(mk::Delta{-0.5}), 0.5);
  EXPECT_DOUBLE_EQ(mk::l1_norm(mk::Lag{2.0}), 1.0);
  EXPECT_DOUBLE_EQ(mk::l1_norm(mk::Diffusive{1.0, 3.0}), 1.0);
  EXPECT_DOUBLE_EQ(mk::l1_norm(mk::ExponentialModes{{{1.0, 2.0}, {3.0, 4.0}}, -0.25}), 0.5 + 0.75 + 0.25);
}

TEST(Kernels, L1MixedSignsAgainstQuadrature) {
  const mk::ExponentialModes k{{{2.0, 4.0}, {-1.0, 2.0}}};
  const auto f = [](double t) { return std::abs(2.0 * std::exp(-4.0 * t) - std::exp(-2.0 * t)); };
  const double root = std::log(2.0) / 2.0;
  const double ref = oracle::integrate(f, 0.0, root) + oracle::integrate(f, root, 40.0);
  EXPECT_NEAR(mk::l1_norm(k), ref, 1e-10);
  EXPECT_LT(mk::l1_norm(k), 2.0 / 4.0 + 1.0 / 2.0);
}

TEST(Kernels, L1MixedSignsTwoRoots) {
  const mk::ExponentialModes k{{{1.0, 0.5}, {-3.0, 1.0}, {2.5, 2.0}}};
  const auto f = [](double t) {
    return std::abs(std::exp(-0.5 * t) - 3.0 * std::exp(-t) + 2.5 * std::exp(-2.0 * t));
  };
  double ref = 0.0;
  const double step = 0.05;
  for (double a = 0.0; a < 120.0; a += step) ref += oracle::integrate(f, a, a + step, 1e-15);
  EXPECT_NEAR(mk::l1_norm(k), ref, 1e-9);
}

TEST(Kernels, L1ClosedFormMatchesQuadrature) {
  const mk::ExponentialModes k{{{1.0, 0.3}, {2.0, 1.5}, {0.5, 7.0}}};
  const auto f = [&](double t) { return mk::eval_kernel(k, t); };
  double ref = 0.0;
  for (double a = 0.0; a < 200.0; a += 1.0) ref += oracle::integrate(f, a, a + 1.0, 1e-15);
  EXPECT_NEAR(mk::l1_norm(k), ref, 1e-10);
}

TEST(Kernels, TransferExamples) {
  const mk::ExponentialModes sp{{{1.0, 1.0}}};
  const cd g0 = mk::transfer_function(sp, 0.0);
  EXPECT_DOUBLE_EQ(g0.real(), 1.0);
  EXPECT_DOUBLE_EQ(g0.imag(), 0.0);
  const cd g1 = mk::transfer_function(sp, 1.0);
  EXPECT_NEAR(g1.real(), 0.5, 1e-15);
  EXPECT_NEAR(g1.imag(), -0.5, 1e-15);
  EXPECT_NEAR(std::abs(g1), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::arg(g1), -std::numbers::pi / 4.0, 1e-15);
  const cd gl = mk::transfer_function(mk::Lag{std::numbers::pi}, 1.0);
  EXPECT_NEAR(gl.real(), -1.0, 1e-15);
  EXPECT_NEAR(gl.imag(), 0.0, 1e-15);
  const cd gd = mk::transfer_function(mk::Delta{0.7}, 3.0);
  EXPECT_DOUBLE_EQ(gd.real(), 0.7);
  EXPECT_DOUBLE_EQ(gd.imag(), 0.0);
  const cd gf = mk::transfer_function(mk::ExponentialModes{{{1.0, 1.0}}, 0.5}, 1.0);
  EXPECT_NEAR(gf.real(), 1.0, 1e-15);
}

TEST(Kernels, LagTransferMatchesDelayedSinusoid) {
  // A lagged sinusoid sin(w(t - L)) equals Re/Im parts of G(iw) e^{iwt}.
  const double L = 0.37;
  const double w = 2.3;
  const cd g = mk::transfer_function(mk::Lag{L}, w);
  for (double t = 0.0; t < 5.0; t += 0.1) {
    const double delayed = std::sin(w * (t - L));
    EXPECT_NEAR((g * std::exp(cd(0.0, w * t))).imag(), delayed, 1e-14);
  }
}

TEST(Kernels, TransferMatchesFourierQuadrature) {
  const mk::ExponentialModes k{{{1.0, 0.8}, {-0.4, 2.0}}};
  for (double w : {0.1, 1.0, 4.0}) {
    double re = 0.0, im = 0.0;
    for (double a = 0.0; a < 60.0; a += 0.5) {
      re += oracle::integrate([&](double t) { return mk::eval_kernel(k, t) * std::cos(w * t); }, a, a + 0.5, 1e-15);
      im -= oracle::integrate([&](double t) { return mk::eval_kernel(k, t) * std::sin(w * t); }, a, a + 0.5, 1e-15);
    }
    const cd g = mk::transfer_function(k, w);
    EXPECT_NEAR(g.real(), re, 1e-10);
    EXPECT_NEAR(g.imag(), im, 1e-10);
  }
}

TEST(Kernels, DiffusiveTransferPrincipalBranch) {
  for (double w : {0.01, 0.5, 2.0, 40.0}) {
    const cd g = mk::transfer_function(mk::Diffusive{1.0, 1.0}, w);
    const double q = std::sqrt(w / 2.0);
    EXPECT_NEAR(std::abs(g), std::exp(-q), 1e-13);
    EXPECT_LT(std::abs(g), 1.0);
    const cd gm = mk::transfer_function(mk::Diffusive{1.0, 1.0}, -w);
    EXPECT_NEAR(std::abs(gm - std::conj(g)), 0.0, 1e-14);
  }
  EXPECT_NEAR(std::abs(mk::transfer_function(mk::Diffusive{1.0, 1.0}, 0.0) - 1.0), 0.0, 1e-15);
}

TEST(Kernels, RealitySymmetry) {
  const mk::ExponentialModes k{{{1.0, 0.5}, {-2.0, 3.0}, {0.7, 9.0}}, 0.1};
  for (double w = 0.05; w < 30.0; w *= 1.3) {
    EXPECT_NEAR(std::abs(mk::transfer_function(k, -w) - std::conj(mk::transfer_function(k, w))), 0.0, 1e-15);
  }
}

TEST(Kernels, Classification) {
  EXPECT_TRUE(mk::is_exponential(mk::ExponentialModes{{{1.0, 1.0}}}));
  EXPECT_FALSE(mk::is_exponential(mk::Delta{1.0}));
  EXPECT_EQ(mk::mode_count(mk::ExponentialModes{{{1.0, 1.0}, {1.0, 2.0}}}), 2u);
  EXPECT_EQ(mk::mode_count(mk::Lag{1.0}), 0u);
}
