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

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "memkernel/kubo.hpp"
#include "memkernel/ladder.hpp"
#include "memkernel/loops.hpp"
#include "memkernel/qubit.hpp"

namespace mk = memkernel;

static void BM_Propagate(benchmark::State& state) {
  const mk::TransverseModel m{1.0, 2.0, mk::Drive::Transverse};
  const mk::KernelSpec k = mk::ExponentialModes{{{1.0, 1.0}, {0.5, 3.0}}};
  mk::PropagateOptions o;
  o.steps_per_period = static_cast<int>(state.range(0));
  o.filter_init = mk::FilterInit::Periodic;
  for (auto _ : state) benchmark::DoNotOptimize(mk::propagate(m, k, mk::Sine{0.5, 1.0}, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Propagate)->Arg(1024)->Arg(4096)->Arg(16384);

static void BM_LoopArea(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    x[i] = std::sin(t);
    y[i] = 0.7 * std::sin(t - 0.4);
  }
  const auto c = mk::make_cycle(x, y, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(mk::loop_area(c, true));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LoopArea)->Arg(1024)->Arg(65536);

static mk::ChannelSpec random_channel(int d) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  auto herm = [&] {
    Eigen::MatrixXcd a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = {n(rng), n(rng)};
    return Eigen::MatrixXcd(0.5 * (a + a.adjoint()));
  };
  return {herm(), herm(), herm(), 1.0};
}

static void BM_LehmannKernel(benchmark::State& state) {
  const mk::LehmannKernel lk(random_channel(static_cast<int>(state.range(0))));
  double tau = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lk(tau));
    tau += 1e-3;
  }
}
BENCHMARK(BM_LehmannKernel)->Arg(2)->Arg(6)->Arg(16);

static void BM_EvolutionOracle(benchmark::State& state) {
  const auto spec = random_channel(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mk::evolution_oracle(spec, 1.3));
}
BENCHMARK(BM_EvolutionOracle)->Arg(2)->Arg(6);

static void BM_ModalDecompose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto ss = mk::build_state_space({std::vector<double>(n, 1.0), std::vector<double>(n, 1.0)});
  for (auto _ : state) benchmark::DoNotOptimize(mk::modal_decompose(ss));
}
BENCHMARK(BM_ModalDecompose)->Arg(8)->Arg(64)->Arg(256);
BENCHMARK_MAIN();
