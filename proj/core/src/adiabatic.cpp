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

#include "memkernel/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "memkernel/errors.hpp"

namespace memkernel {

namespace {

using Mat = Eigen::MatrixXcd;

bool hermitian(const Mat& A) {
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  return (A - A.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

struct Spectrum {
  Eigen::VectorXd energies;
  Mat vectors;
  std::vector<Band> bands;
};

Spectrum analyze(const SpectralProblem& sp) {
  validate(sp);
  Eigen::SelfAdjointEigenSolver<Mat> es(sp.H0);
  Spectrum s{es.eigenvalues(), es.eigenvectors(), {}};
  const Eigen::Index d = s.energies.size();
  const double range = s.energies(d - 1) - s.energies(0);
  const double band_tol = sp.band_tol * range;
  const double gap_tol = sp.gap_tol * range;
  Band cur{0.0, {0}, 0.0};
  for (Eigen::Index i = 1; i <= d; ++i) {
    if (i < d && s.energies(i) - s.energies(i - 1) <= band_tol) {
      cur.levels.push_back(static_cast<int>(i));
      continue;
    }
    s.bands.push_back(cur);
    if (i < d) {
      if (s.energies(i) - s.energies(i - 1) < gap_tol)
        throw Error(ErrorCode::GapTooSmall, "bands separated by less than gap_tol");
      cur = Band{0.0, {static_cast<int>(i)}, 0.0};
    }
  }
  for (auto& b : s.bands) {
    double e = 0.0;
    double w = 0.0;
    for (int i : b.levels) {
      e += s.energies(i);
      w += sp.p[i];
    }
    b.energy = e / static_cast<double>(b.levels.size());
    b.weight = w;
  }
  return s;
}

}  // namespace

Eigen::Matrix2cd pauli(Observable o) {
  using cd = std::complex<double>;
  Eigen::Matrix2cd m;
  switch (o) {
    case Observable::SigmaX:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case Observable::SigmaY:
      m << 0.0, cd(0.0, -1.0), cd(0.0, 1.0), 0.0;
      break;
    case Observable::SigmaZ:
      m << 1.0, 0.0, 0.0, -1.0;
      break;
  }
  return m;
}

double f_qubit(double phi, double omega_z, Observable o) {
  const double n = std::hypot(omega_z, phi);
  switch (o) {
    case Observable::SigmaX:
      return -phi / n;
    case Observable::SigmaY:
      return 0.0;
    case Observable::SigmaZ:
      return -omega_z / n;
  }
  return 0.0;
}

void validate(const SpectralProblem& sp) {
  const Eigen::Index d = sp.H0.rows();
  if (d == 0 || sp.H0.cols() != d || sp.M.rows() != d || sp.M.cols() != d || sp.O.rows() != d || sp.O.cols() != d ||
      static_cast<Eigen::Index>(sp.p.size()) != d)
    throw Error(ErrorCode::InvalidProblem, "matrix and weight dimensions disagree");
  if (!hermitian(sp.H0) || !hermitian(sp.M) || !hermitian(sp.O))
    throw Error(ErrorCode::InvalidProblem, "H0, M and O must be Hermitian");
  double total = 0.0;
  for (double x : sp.p) {
    if (x < 0.0) throw Error(ErrorCode::InvalidProblem, "weights must be nonnegative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::InvalidProblem, "weights must sum to 1");
}

std::vector<Band> spectral_bands(const SpectralProblem& sp) { return analyze(sp).bands; }

double fprime0_general(const SpectralProblem& sp) {
  const Spectrum s = analyze(sp);
  const Mat Oe = s.vectors.adjoint() * sp.O * s.vectors;
  const Mat Me = s.vectors.adjoint() * sp.M * s.vectors;
  double total = 0.0;
  for (const auto& bi : s.bands) {
    if (bi.weight == 0.0) continue;
    double inner = 0.0;
    for (const auto& bj : s.bands) {
      if (&bi == &bj) continue;
      // Re Tr(Pi_i O Pi_j M Pi_i)
      double tr = 0.0;
      for (int i : bi.levels)
        for (int j : bj.levels) tr += (Oe(i, j) * Me(j, i)).real();
      inner += tr / (bi.energy - bj.energy);
    }
    total += bi.weight / static_cast<double>(bi.levels.size()) * inner;
  }
  return 2.0 * total;
}

double f_general(const SpectralProblem& sp, double phi) {
  const Spectrum s0 = analyze(sp);
  Eigen::SelfAdjointEigenSolver<Mat> es(sp.H0 + phi * sp.M);
  const Mat& V = es.eigenvectors();
  const Eigen::Index d = V.cols();

  // overlap[v][b] = <v| Pi_b(0) |v>
  std::vector<std::tuple<double, int, int>> pairs;
  for (Eigen::Index v = 0; v < d; ++v) {
    for (std::size_t b = 0; b < s0.bands.size(); ++b) {
      double ov = 0.0;
      for (int i : s0.bands[b].levels) ov += std::norm(s0.vectors.col(i).dot(V.col(v)));
      pairs.emplace_back(ov, static_cast<int>(v), static_cast<int>(b));
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
  std::vector<int> owner(d, -1);
  std::vector<std::size_t> filled(s0.bands.size(), 0);
  for (const auto& [ov, v, b] : pairs) {
    if (owner[v] >= 0 || filled[b] >= s0.bands[b].levels.size()) continue;
    owner[v] = b;
    ++filled[b];
  }
  double f = 0.0;
  for (Eigen::Index v = 0; v < d; ++v) {
    const auto& band = s0.bands[owner[v]];
    const double w = band.weight / static_cast<double>(band.levels.size());
    if (w == 0.0) continue;
    f += w * V.col(v).dot(sp.O * V.col(v)).real();
  }
  return f;
}

SpectralProblem qubit_problem(const TransverseModel& m, Observable o, const Vec3& r, double phi) {
  SpectralProblem sp;
  sp.H0 = m.omega_z * pauli(Observable::SigmaZ);
  sp.M = m.drive == Drive::Transverse ? pauli(Observable::SigmaX) : pauli(Observable::SigmaZ);
  sp.O = pauli(o);
  const Vec3 h = field_vector(phi, m);
  const double hn = h.norm();
  const double pg = hn > 0.0 ? std::clamp(0.5 * (1.0 - r.dot(h) / hn), 0.0, 1.0) : 0.5;
  sp.p = {pg, 1.0 - pg};
  return sp;
}

double nonadiabatic_integral(const Trajectory& traj, double omega_z) {
  const std::size_t s0 = traj.final_cycle_start();
  double acc = 0.0;
  for (std::size_t i = s0; i + 1 < traj.size(); ++i) {
    auto g = [&](std::size_t j) {
      const double gap = instantaneous_gap(traj.phi[j], omega_z);
      return traj.dphi[j] * traj.dphi[j] / (gap * gap * gap);
    };
    acc += 0.5 * (g(i) + g(i + 1)) * traj.dt;
  }
  return acc;
}

}  // namespace memkernel
