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

#include "memkernel/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/erf.hpp>

#include "memkernel/errors.hpp"

namespace memkernel {

namespace {

double inf_norm(const Eigen::MatrixXd& A) { return A.cwiseAbs().rowwise().sum().maxCoeff(); }

bool is_tridiagonal(const Eigen::MatrixXd& A) {
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      if (std::abs(i - j) > 1 && A(i, j) != 0.0) return false;
  return true;
}

// Solves (s I - A) x = b for tridiagonal A; returns false on a vanishing pivot.
bool thomas(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, std::complex<double> s,
            Eigen::VectorXcd& x, double tol) {
  const Eigen::Index n = A.rows();
  Eigen::VectorXcd diag(n);
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    diag(i) = s - A(i, i);
    rhs(i) = b(i);
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    if (std::abs(diag(i - 1)) <= tol) return false;
    const std::complex<double> m = -A(i, i - 1) / diag(i - 1);
    diag(i) -= m * (-A(i - 1, i));
    rhs(i) -= m * rhs(i - 1);
  }
  if (std::abs(diag(n - 1)) <= tol) return false;
  x.resize(n);
  x(n - 1) = rhs(n - 1) / diag(n - 1);
  for (Eigen::Index i = n - 2; i >= 0; --i) x(i) = (rhs(i) + A(i, i + 1) * x(i + 1)) / diag(i);
  return true;
}

void check_spectrum(std::vector<std::pair<double, Eigen::Index>>& order, const Eigen::VectorXd& lambda,
                    double norm) {
  for (Eigen::Index k = 0; k < lambda.size(); ++k) order.emplace_back(-lambda(k), k);
  std::sort(order.begin(), order.end());
  for (const auto& [nu, k] : order) {
    if (!(nu > 0.0)) throw Error(ErrorCode::InvalidLadder, "state matrix is not stable");
  }
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (order[k].first - order[k - 1].first < 1e-10 * norm)
      throw Error(ErrorCode::DegenerateSpectrum, "two poles coincide within 1e-10 |A|");
  }
}

}  // namespace

double ModalDecomposition::dc_gain() const {
  double g = 0.0;
  for (std::size_t k = 0; k < rates.size(); ++k) g += weights[k] / rates[k];
  return g;
}

double ModalDecomposition::impulse_response(double t) const {
  if (t < 0.0) return 0.0;
  double y = 0.0;
  for (std::size_t k = 0; k < rates.size(); ++k) y += weights[k] * std::exp(-rates[k] * t);
  return y;
}

ExponentialModes ModalDecomposition::kernel() const {
  ExponentialModes e;
  for (std::size_t k = 0; k < rates.size(); ++k) e.modes.push_back({weights[k], rates[k]});
  return e;
}

StateSpace build_state_space(const LadderSpec& spec) {
  const std::size_t n = spec.R.size();
  if (n == 0 || spec.C.size() != n) throw Error(ErrorCode::InvalidLadder, "R and C must have equal nonzero length");
  for (std::size_t j = 0; j < n; ++j) {
    if (!(spec.R[j] > 0.0) || !(spec.C[j] > 0.0) || !std::isfinite(spec.R[j]) || !std::isfinite(spec.C[j]))
      throw Error(ErrorCode::InvalidLadder, "components must be positive");
  }
  const auto N = static_cast<Eigen::Index>(n);
  StateSpace ss;
  ss.A = Eigen::MatrixXd::Zero(N, N);
  ss.b = Eigen::VectorXd::Zero(N);
  ss.readout = n - 1;
  for (Eigen::Index j = 0; j < N; ++j) {
    const double Rj = spec.R[j];
    const double Cj = spec.C[j];
    ss.A(j, j) = -1.0 / (Rj * Cj);
    if (j + 1 < N) {
      const double Rn = spec.R[j + 1];
      ss.A(j, j) -= 1.0 / (Rn * Cj);
      ss.A(j, j + 1) = 1.0 / (Rn * Cj);
    }
    if (j > 0) ss.A(j, j - 1) = 1.0 / (Rj * Cj);
  }
  ss.b(0) = 1.0 / (spec.R[0] * spec.C[0]);
  return ss;
}

ModalDecomposition modal_decompose(const StateSpace& ss) {
  const Eigen::Index n = ss.A.rows();
  if (n == 0 || ss.A.cols() != n || ss.b.size() != n || static_cast<Eigen::Index>(ss.readout) >= n)
    throw Error(ErrorCode::InvalidLadder, "inconsistent state-space dimensions");
  const double norm = inf_norm(ss.A);
  const auto r = static_cast<Eigen::Index>(ss.readout);

  bool symmetrizable = is_tridiagonal(ss.A);
  for (Eigen::Index j = 0; symmetrizable && j + 1 < n; ++j)
    symmetrizable = ss.A(j, j + 1) * ss.A(j + 1, j) > 0.0;

  ModalDecomposition md;
  std::vector<std::pair<double, Eigen::Index>> order;

  if (symmetrizable) {
    // T A T^{-1} symmetric with T = diag(t), t_{j+1}/t_j = sqrt(A_{j,j+1}/A_{j+1,j}).
    Eigen::VectorXd t(n);
    t(0) = 1.0;
    for (Eigen::Index j = 0; j + 1 < n; ++j) t(j + 1) = t(j) * std::sqrt(ss.A(j, j + 1) / ss.A(j + 1, j));
    Eigen::MatrixXd S = t.asDiagonal() * ss.A * t.cwiseInverse().asDiagonal();
    S = 0.5 * (S + S.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::ComplexPole, "eigensolver failed");
    check_spectrum(order, es.eigenvalues(), norm);
    const Eigen::MatrixXd& W = es.eigenvectors();
    const Eigen::VectorXd tb = t.cwiseProduct(ss.b);
    for (const auto& [nu, k] : order) {
      md.rates.push_back(nu);
      md.weights.push_back(W(r, k) / t(r) * W.col(k).dot(tb));
    }
    return md;
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(ss.A);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::ComplexPole, "eigensolver failed");
  const Eigen::VectorXcd lam = es.eigenvalues();
  for (Eigen::Index k = 0; k < n; ++k)
    if (std::abs(lam(k).imag()) > 1e-8 * norm)
      throw Error(ErrorCode::ComplexPole, "pole off the real axis violates RC realizability");
  check_spectrum(order, lam.real(), norm);
  const Eigen::MatrixXd V = es.eigenvectors().real();
  const Eigen::MatrixXd Vinv = V.inverse();  // rows are left eigenvectors, Vinv V = I
  for (const auto& [nu, k] : order) {
    md.rates.push_back(nu);
    md.weights.push_back(V(r, k) * Vinv.row(k).dot(ss.b));
  }
  return md;
}

std::complex<double> ladder_transfer(const StateSpace& ss, std::complex<double> s) {
  const Eigen::Index n = ss.A.rows();
  const double tol = 1e-14 * (std::abs(s) + inf_norm(ss.A));
  Eigen::VectorXcd x;
  if (is_tridiagonal(ss.A) && thomas(ss.A, ss.b, s, x, tol)) return x(static_cast<Eigen::Index>(ss.readout));
  Eigen::MatrixXcd M = s * Eigen::MatrixXcd::Identity(n, n) - ss.A.cast<std::complex<double>>();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(M);
  lu.setThreshold(1e-14);
  if (lu.rank() < n) throw Error(ErrorCode::SingularResolvent, "s is a pole of the ladder");
  x = lu.solve(ss.b.cast<std::complex<double>>());
  return x(static_cast<Eigen::Index>(ss.readout));
}

StepMetrics single_pole_metrics(double tau_c) {
  if (!(tau_c > 0.0)) throw Error(ErrorCode::InvalidKernel, "tau_c must be positive");
  StepMetrics m;
  m.tau_c = tau_c;
  m.omega_3db = 1.0 / tau_c;
  m.f_3db = 1.0 / (2.0 * std::numbers::pi * tau_c);
  m.t_10 = tau_c * std::log(10.0 / 9.0);
  m.t_90 = tau_c * std::log(10.0);
  m.t_rise = tau_c * std::log(9.0);
  m.t_rise_approx = 0.35 / m.f_3db;
  return m;
}

double tau_c_from_f3db(double f_3db) {
  if (!(f_3db > 0.0)) throw Error(ErrorCode::InvalidKernel, "f_3dB must be positive");
  return 1.0 / (2.0 * std::numbers::pi * f_3db);
}

StepMetrics modal_metrics(const ModalDecomposition& md) {
  if (md.rates.empty()) throw Error(ErrorCode::InvalidKernel, "empty modal decomposition");
  const double g0 = md.dc_gain();
  auto step = [&](double t) {
    double y = 0.0;
    for (std::size_t k = 0; k < md.rates.size(); ++k)
      y += md.weights[k] / md.rates[k] * -std::expm1(-md.rates[k] * t);
    return y / g0;
  };
  auto mag = [&](double w) {
    std::complex<double> g = 0.0;
    for (std::size_t k = 0; k < md.rates.size(); ++k) g += md.weights[k] / std::complex<double>(md.rates[k], w);
    return std::abs(g) / std::abs(g0);
  };
  const double nu_min = *std::min_element(md.rates.begin(), md.rates.end());
  const double nu_max = *std::max_element(md.rates.begin(), md.rates.end());
  auto first_crossing = [](auto&& f, double level, double lo, double hi) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (f(mid) < level) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  StepMetrics m;
  const double t_hi = 60.0 / nu_min;
  m.t_10 = first_crossing(step, 0.1, 0.0, t_hi);
  m.t_90 = first_crossing(step, 0.9, 0.0, t_hi);
  m.t_rise = m.t_90 - m.t_10;
  m.tau_c = m.t_rise / std::log(9.0);
  auto attenuation = [&](double w) { return -mag(w); };
  m.omega_3db = first_crossing(attenuation, -1.0 / std::sqrt(2.0), 0.0, 1e3 * nu_max);
  m.f_3db = m.omega_3db / (2.0 * std::numbers::pi);
  m.t_rise_approx = 0.35 / m.f_3db;
  return m;
}

double diffusive_fraction_time(double l, double D, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw Error(ErrorCode::InvalidFraction, "eta must lie in (0, 1)");
  if (!(l > 0.0) || !(D > 0.0)) throw Error(ErrorCode::InvalidKernel, "l and D must be positive");
  const double x = boost::math::erfc_inv(eta);
  return l * l / (4.0 * D * x * x);
}

double diffusive_step_response(double l, double D, double t) {
  if (t <= 0.0) return 0.0;
  return std::erfc(l / (2.0 * std::sqrt(D * t)));
}

double diffusive_group_delay(double l, double D, double omega) {
  if (!(omega > 0.0)) throw Error(ErrorCode::InvalidKernel, "omega must be positive");
  return l / (2.0 * std::sqrt(2.0 * D * omega));
}

}  // namespace memkernel
