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

#include "memkernel/loops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "memkernel/errors.hpp"

namespace memkernel {

namespace {

double range_of(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

// Segments of the closed polygon: (x_i, y_i) -> (x_{i+1}, y_{i+1}), last one closes.
template <class F>
void for_each_segment(const Cycle& c, F&& f) {
  const std::size_t n = c.x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    f(c.x[i], c.y[i], c.x[j], c.y[j]);
  }
}

}  // namespace

Cycle make_cycle(std::vector<double> x, std::vector<double> y, double closure_tol) {
  if (x.size() != y.size()) throw Error(ErrorCode::OpenCycle, "x and y lengths differ");
  if (x.size() < 8) throw Error(ErrorCode::OpenCycle, "a cycle needs at least 8 samples");
  Cycle c;
  const double dx = std::abs(x.back() - x.front());
  const double dy = std::abs(y.back() - y.front());
  const double rx = range_of(x);
  const double ry = range_of(y);
  c.defect = dx + dy;
  c.closed = dx <= closure_tol * rx && dy <= closure_tol * ry;
  c.x = std::move(x);
  c.y = std::move(y);
  return c;
}

double loop_area(const Cycle& c, bool allow_open) {
  if (!c.closed && !allow_open) throw Error(ErrorCode::OpenCycle, "closure defect exceeds closure_tol");
  double a = 0.0;
  for_each_segment(c, [&](double x0, double y0, double x1, double y1) { a += 0.5 * (y1 + y0) * (x1 - x0); });
  return a;
}

double analytic_area(const KernelSpec& k, double u0, double omega) {
  return std::numbers::pi * u0 * u0 * transfer_function(k, omega).imag();
}

double predicted_observable_area(const KernelSpec& k, double u0, double omega, double fprime0) {
  return fprime0 * analytic_area(k, u0, omega);
}

BranchDecomposition branch_decomposition(const Cycle& c) {
  // Work on distinct samples; a closed cycle repeats its first sample at the end.
  std::size_t n = c.x.size();
  if (n > 1 && c.x.back() == c.x.front() && c.y.back() == c.y.front()) --n;
  std::vector<int> signs;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = c.x[(i + 1) % n] - c.x[i];
    if (d != 0.0) signs.push_back(d > 0.0 ? 1 : -1);
  }
  int changes = 0;
  for (std::size_t k = 0; k < signs.size(); ++k)
    if (signs[k] != signs[(k + 1) % signs.size()]) ++changes;
  if (changes > 2) throw Error(ErrorCode::MultipleTurningPoints, "x has more than one maximum or minimum");

  const auto imin = static_cast<std::size_t>(std::min_element(c.x.begin(), c.x.begin() + n) - c.x.begin());
  const auto imax = static_cast<std::size_t>(std::max_element(c.x.begin(), c.x.begin() + n) - c.x.begin());

  BranchDecomposition b;
  std::vector<double> dx;
  std::vector<double> dy;
  // up branch: imin -> imax in sample order
  for (std::size_t i = imin;; i = (i + 1) % n) {
    if (b.grid.empty() || c.x[i] > b.grid.back()) {
      b.grid.push_back(c.x[i]);
      b.up.push_back(c.y[i]);
    }
    if (i == imax) break;
  }
  // down branch: imax -> imin, stored with increasing x
  for (std::size_t i = imax;; i = (i + 1) % n) {
    dx.push_back(c.x[i]);
    dy.push_back(c.y[i]);
    if (i == imin) break;
  }
  std::reverse(dx.begin(), dx.end());
  std::reverse(dy.begin(), dy.end());

  b.down.resize(b.grid.size());
  std::size_t j = 0;
  for (std::size_t g = 0; g < b.grid.size(); ++g) {
    const double x = b.grid[g];
    while (j + 1 < dx.size() && dx[j + 1] < x) ++j;
    if (j + 1 >= dx.size()) {
      b.down[g] = dy.back();
      continue;
    }
    const double span = dx[j + 1] - dx[j];
    const double t = span > 0.0 ? std::clamp((x - dx[j]) / span, 0.0, 1.0) : 0.0;
    b.down[g] = dy[j] + t * (dy[j + 1] - dy[j]);
  }
  for (std::size_t g = 0; g + 1 < b.grid.size(); ++g) {
    const double gap0 = b.up[g] - b.down[g];
    const double gap1 = b.up[g + 1] - b.down[g + 1];
    b.area += 0.5 * (gap0 + gap1) * (b.grid[g + 1] - b.grid[g]);
  }
  return b;
}

AreaBounds area_bounds(const Cycle& c) {
  const auto [ylo, yhi] = std::minmax_element(c.y.begin(), c.y.end());
  const double delta_o = *yhi - *ylo;
  const double o_sup = std::max(std::abs(*ylo), std::abs(*yhi));
  const double ds = 1.0 / static_cast<double>(c.x.size());
  double variation = 0.0;
  double o_l2 = 0.0;
  double dphi_l2 = 0.0;
  for_each_segment(c, [&](double x0, double y0, double x1, double y1) {
    const double ym = 0.5 * (y0 + y1);
    variation += std::abs(x1 - x0);
    o_l2 += ym * ym * ds;
    dphi_l2 += (x1 - x0) * (x1 - x0) / ds;
  });
  AreaBounds b;
  b.variation_bound = 0.5 * delta_o * variation;
  b.sup_bound = o_sup * variation;
  b.cauchy_schwarz_bound = std::sqrt(o_l2) * std::sqrt(dphi_l2);
  return b;
}

}  // namespace memkernel
