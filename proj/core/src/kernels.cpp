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

#include "memkernel/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "memkernel/errors.hpp"

namespace memkernel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double modes_value(const std::vector<Mode>& modes, double tau) {
  double s = 0.0;
  for (const auto& m : modes) s += m.c * std::exp(-m.nu * tau);
  return s;
}

// integral of sum_k c_k exp(-nu_k tau) over [a, b]; b may be +inf
double modes_integral(const std::vector<Mode>& modes, double a, double b) {
  double s = 0.0;
  for (const auto& m : modes) {
    const double ea = std::exp(-m.nu * a);
    const double eb = std::isinf(b) ? 0.0 : std::exp(-m.nu * b);
    s += m.c / m.nu * (ea - eb);
  }
  return s;
}

double mixed_sign_l1(const std::vector<Mode>& modes) {
  double nu_min = modes.front().nu;
  for (const auto& m : modes) nu_min = std::min(nu_min, m.nu);
  const double t_end = 20.0 / nu_min;
  // Quadratically graded bracketing grid, dense near the origin.
  const int n_grid = 20000;
  std::vector<double> grid(n_grid + 1);
  for (int i = 0; i <= n_grid; ++i) {
    const double x = static_cast<double>(i) / n_grid;
    grid[i] = t_end * x * x;
  }

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double a = grid[i];
    double b = grid[i + 1];
    double fa = modes_value(modes, a);
    const double fb = modes_value(modes, b);
    if (fa == 0.0 && i > 0) {
      roots.push_back(a);
      continue;
    }
    if ((fa < 0.0) == (fb < 0.0) || fb == 0.0) continue;
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
      const double mid = 0.5 * (a + b);
      const double fm = modes_value(modes, mid);
      if ((fm < 0.0) == (fa < 0.0)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    roots.push_back(0.5 * (a + b));
  }

  double total = 0.0;
  double left = 0.0;
  for (double r : roots) {
    total += std::abs(modes_integral(modes, left, r));
    left = r;
  }
  total += std::abs(modes_integral(modes, left, t_end));
  total += std::abs(modes_integral(modes, t_end, std::numeric_limits<double>::infinity()));
  return total;
}

}  // namespace

ExponentialModes single_pole(double tau_c) {
  if (!(tau_c > 0.0)) throw Error(ErrorCode::InvalidKernel, "tau_c must be positive");
  return ExponentialModes{{{1.0 / tau_c, 1.0 / tau_c}}, 0.0};
}

void validate(const KernelSpec& k) {
  std::visit(overloaded{
                 [](const ExponentialModes& e) {
                   for (const auto& m : e.modes) {
                     if (!(m.nu > 0.0) || !std::isfinite(m.nu))
                       throw Error(ErrorCode::InvalidKernel, "mode rates must be positive");
                     if (!std::isfinite(m.c)) throw Error(ErrorCode::InvalidKernel, "mode weight not finite");
                   }
                   if (!std::isfinite(e.g_inf)) throw Error(ErrorCode::InvalidKernel, "g_inf not finite");
                 },
                 [](const Delta& d) {
                   if (!std::isfinite(d.g)) throw Error(ErrorCode::InvalidKernel, "delta gain not finite");
                 },
                 [](const Lag& l) {
                   if (!(l.t_lag >= 0.0) || !std::isfinite(l.t_lag))
                     throw Error(ErrorCode::InvalidKernel, "t_lag must be nonnegative");
                 },
                 [](const Diffusive& d) {
                   if (!(d.l > 0.0) || !(d.D > 0.0) || !std::isfinite(d.l) || !std::isfinite(d.D))
                     throw Error(ErrorCode::InvalidKernel, "diffusive l and D must be positive");
                 },
             },
             k);
}

bool is_exponential(const KernelSpec& k) noexcept { return std::holds_alternative<ExponentialModes>(k); }

std::size_t mode_count(const KernelSpec& k) noexcept {
  if (const auto* e = std::get_if<ExponentialModes>(&k)) return e->modes.size();
  return 0;
}

double eval_kernel(const KernelSpec& k, double tau) {
  validate(k);
  return std::visit(
      overloaded{
          [tau](const ExponentialModes& e) -> double {
            if (tau < 0.0) return 0.0;
            return modes_value(e.modes, tau);
          },
          [](const Delta&) -> double {
            throw Error(ErrorCode::NotPointwiseEvaluable, "delta kernel is a distribution");
          },
          [](const Lag&) -> double {
            throw Error(ErrorCode::NotPointwiseEvaluable, "lag kernel is a distribution");
          },
          [tau](const Diffusive& d) -> double {
            if (tau <= 0.0) return 0.0;
            return d.l / (2.0 * std::sqrt(std::numbers::pi * d.D)) * std::pow(tau, -1.5) *
                   std::exp(-d.l * d.l / (4.0 * d.D * tau));
          },
      },
      k);
}

double l1_norm(const KernelSpec& k) {
  validate(k);
  return std::visit(overloaded{
                        [](const ExponentialModes& e) -> double {
                          if (e.modes.empty()) return std::abs(e.g_inf);
                          const bool all_pos = std::all_of(e.modes.begin(), e.modes.end(),
                                                           [](const Mode& m) { return m.c >= 0.0; });
                          const bool all_neg = std::all_of(e.modes.begin(), e.modes.end(),
                                                           [](const Mode& m) { return m.c <= 0.0; });
                          if (all_pos || all_neg) {
                            double s = 0.0;
                            for (const auto& m : e.modes) s += std::abs(m.c) / m.nu;
                            return s + std::abs(e.g_inf);
                          }
                          return mixed_sign_l1(e.modes) + std::abs(e.g_inf);
                        },
                        [](const Delta& d) -> double { return std::abs(d.g); },
                        [](const Lag&) -> double { return 1.0; },
                        [](const Diffusive&) -> double { return 1.0; },
                    },
                    k);
}

std::complex<double> transfer_function(const KernelSpec& k, double omega) {
  validate(k);
  using cd = std::complex<double>;
  return std::visit(overloaded{
                        [omega](const ExponentialModes& e) -> cd {
                          cd g{e.g_inf, 0.0};
                          for (const auto& m : e.modes) g += m.c / cd(m.nu, omega);
                          return g;
                        },
                        [](const Delta& d) -> cd { return {d.g, 0.0}; },
                        [omega](const Lag& l) -> cd { return std::polar(1.0, -omega * l.t_lag); },
                        [omega](const Diffusive& d) -> cd {
                          // std::sqrt uses the principal branch, Re >= 0.
                          return std::exp(-d.l * std::sqrt(cd(0.0, omega / d.D)));
                        },
                    },
                    k);
}

}  // namespace memkernel
