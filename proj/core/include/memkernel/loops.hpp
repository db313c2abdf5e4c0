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

// loops.hpp: oriented loop areas, branch decomposition and area bounds

#pragma once

#include <vector>

#include "memkernel/kernels.hpp"

namespace memkernel {

struct Cycle {
  std::vector<double> x;
  std::vector<double> y;
  bool closed = false;
  double defect = 0.0;  // |x_N - x_1| + |y_N - y_1|
};

// closure_tol is relative to each axis range.
Cycle make_cycle(std::vector<double> x, std::vector<double> y, double closure_tol = 1e-6);

struct LoopAreas {
  double A_uPhi = 0.0;
  double A_uO = 0.0;
  double A_PhiO = 0.0;
};

// Trapezoid sum of y dx in sample order plus the closing segment back to the first
// sample. Open cycles throw OpenCycle unless allow_open is set.
double loop_area(const Cycle& c, bool allow_open = false);

// pi u0^2 Im G(i omega) for a sinusoidal command.
double analytic_area(const KernelSpec& k, double u0, double omega);
double predicted_observable_area(const KernelSpec& k, double u0, double omega, double fprime0);

struct BranchDecomposition {
  std::vector<double> grid;
  std::vector<double> up;
  std::vector<double> down;
  double area = 0.0;
};

BranchDecomposition branch_decomposition(const Cycle& c);

struct AreaBounds {
  double variation_bound = 0.0;
  double sup_bound = 0.0;
  double cauchy_schwarz_bound = 0.0;
};

// Discrete bounds with a uniform curve parameter on [0, 1].
AreaBounds area_bounds(const Cycle& c);

}  // namespace memkernel
