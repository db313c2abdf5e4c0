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

#include "memkernel/kubo.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "memkernel/errors.hpp"

namespace memkernel {

namespace {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

bool hermitian(const Mat& A) {
  const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  return (A - A.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

std::vector<Stick> merge(std::vector<Stick> s, double tol) {
  std::sort(s.begin(), s.end(), [](const Stick& a, const Stick& b) { return a.omega < b.omega; });
  std::vector<Stick> out;
  for (const auto& st : s) {
    if (!out.empty() && st.omega - out.back().omega <= tol) out.back().weight += st.weight;
    else out.push_back(st);
  }
  return out;
}

}  // namespace

void validate(const ChannelSpec& spec) {
  const Eigen::Index d = spec.H.rows();
  if (d == 0 || spec.H.cols() != d || spec.L.rows() != d || spec.L.cols() != d || spec.F.rows() != d ||
      spec.F.cols() != d)
    throw Error(ErrorCode::NonHermitianPorts, "matrix dimensions disagree");
  if (!hermitian(spec.H) || !hermitian(spec.L) || !hermitian(spec.F))
    throw Error(ErrorCode::NonHermitianPorts, "H, L and F must be Hermitian");
  if (!(spec.beta >= 0.0)) throw Error(ErrorCode::NonHermitianPorts, "beta must be nonnegative");
}

ThermalWeights thermal_weights(const Mat& H, double beta) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  ThermalWeights tw{es.eigenvalues(), Eigen::VectorXd::Zero(H.rows()), es.eigenvectors()};
  const Eigen::Index d = tw.energies.size();
  const double e0 = tw.energies(0);
  if (beta == 0.0) {
    tw.p.setConstant(1.0 / static_cast<double>(d));
  } else if (std::isinf(beta)) {
    const double range = tw.energies(d - 1) - e0;
    const double tol = 1e-10 * std::max(1.0, range);
    Eigen::Index g = 0;
    while (g < d && tw.energies(g) - e0 <= tol) ++g;
    for (Eigen::Index i = 0; i < g; ++i) tw.p(i) = 1.0 / static_cast<double>(g);
  } else {
    for (Eigen::Index i = 0; i < d; ++i) tw.p(i) = std::exp(-beta * (tw.energies(i) - e0));
    tw.p /= tw.p.sum();
  }
  return tw;
}

LehmannKernel::LehmannKernel(const ChannelSpec& spec) {
  validate(spec);
  tw_ = thermal_weights(spec.H, spec.beta);
  const Mat& V = tw_.vectors;
  Le_ = V.adjoint() * spec.L * V;
  Fe_ = V.adjoint() * spec.F * V;
  const Eigen::Index d = Le_.rows();
  amp_.resize(d, d);
  bohr_.resize(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = 0; m < d; ++m) {
      amp_(n, m) = (tw_.p(n) - tw_.p(m)) * Le_(n, m) * Fe_(m, n);
      bohr_(n, m) = tw_.energies(n) - tw_.energies(m);
    }
  }
  offset_ = 0.0;
  for (Eigen::Index n = 0; n < d; ++n) offset_ += tw_.p(n) * Le_(n, n).real();
}

cd LehmannKernel::complex_value(double tau) const {
  if (tau < 0.0) return 0.0;
  cd s = 0.0;
  for (Eigen::Index n = 0; n < amp_.rows(); ++n)
    for (Eigen::Index m = 0; m < amp_.cols(); ++m) s += amp_(n, m) * std::polar(1.0, bohr_(n, m) * tau);
  return cd(0.0, 1.0) * s;
}

double LehmannKernel::operator()(double tau) const { return complex_value(tau).real(); }

cd LehmannKernel::susceptibility(double omega, double eta) const {
  if (!(eta > 0.0)) throw Error(ErrorCode::NonpositiveEta, "eta must be positive");
  // Laplace transform of complex_value: integral_0^inf K(tau) exp(i omega tau - eta tau) dtau
  cd s = 0.0;
  for (Eigen::Index n = 0; n < amp_.rows(); ++n)
    for (Eigen::Index m = 0; m < amp_.cols(); ++m) s -= amp_(n, m) / cd(omega + bohr_(n, m), eta);
  return s;
}

double lehmann_kernel(const ChannelSpec& spec, double tau) { return LehmannKernel(spec)(tau); }

double evolution_oracle(const ChannelSpec& spec, double tau) {
  validate(spec);
  if (tau < 0.0) return 0.0;
  const Eigen::Index d = spec.H.rows();
  Mat rho;
  if (spec.beta == 0.0) {
    rho = Mat::Identity(d, d) / static_cast<double>(d);
  } else if (std::isinf(spec.beta)) {
    const ThermalWeights tw = thermal_weights(spec.H, spec.beta);
    rho = tw.vectors * tw.p.cast<cd>().asDiagonal() * tw.vectors.adjoint();
  } else {
    // Gershgorin lower bound keeps the exponent nonpositive.
    double lower = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < d; ++i) {
      double radius = 0.0;
      for (Eigen::Index j = 0; j < d; ++j)
        if (j != i) radius += std::abs(spec.H(i, j));
      lower = std::min(lower, spec.H(i, i).real() - radius);
    }
    const Mat shifted = spec.H - lower * Mat::Identity(d, d);
    rho = (-spec.beta * shifted).exp();
    rho /= rho.trace();
  }
  const Mat U = (cd(0.0, tau) * spec.H).exp();
  const Mat Lt = U * spec.L * U.adjoint();
  const cd k = cd(0.0, 1.0) * (rho * (Lt * spec.F - spec.F * Lt)).trace();
  return k.real();
}

cd eta_susceptibility(const ChannelSpec& spec, double omega, double eta) {
  return LehmannKernel(spec).susceptibility(omega, eta);
}

double detailed_balance_residual(const ChannelSpec& spec) {
  validate(spec);
  const ThermalWeights tw = thermal_weights(spec.H, spec.beta);
  double worst = 0.0;
  for (Eigen::Index n = 0; n < tw.p.size(); ++n) {
    for (Eigen::Index m = 0; m < tw.p.size(); ++m) {
      const double w_nm = tw.energies(n) - tw.energies(m);
      const double rhs = -tw.p(m) * -std::expm1(-spec.beta * w_nm);
      worst = std::max(worst, std::abs((tw.p(n) - tw.p(m)) - rhs));
    }
  }
  return worst;
}

std::vector<Stick> correlation_sticks(const ChannelSpec& spec, double tol) {
  const LehmannKernel lk(spec);
  const auto& tw = lk.weights();
  const Mat Le = tw.vectors.adjoint() * spec.L * tw.vectors;
  const Mat Fe = tw.vectors.adjoint() * spec.F * tw.vectors;
  std::vector<Stick> s;
  for (Eigen::Index n = 0; n < Le.rows(); ++n)
    for (Eigen::Index m = 0; m < Le.cols(); ++m) s.push_back({lk.bohr()(n, m), tw.p(n) * Le(n, m) * Fe(m, n)});
  return merge(std::move(s), tol);
}

std::vector<Stick> commutator_sticks(const ChannelSpec& spec, double tol) {
  const LehmannKernel lk(spec);
  std::vector<Stick> s;
  for (Eigen::Index n = 0; n < lk.amplitudes().rows(); ++n)
    for (Eigen::Index m = 0; m < lk.amplitudes().cols(); ++m) s.push_back({lk.bohr()(n, m), lk.amplitudes()(n, m)});
  return merge(std::move(s), tol);
}

double fdt_residual(const ChannelSpec& spec) {
  const auto corr = correlation_sticks(spec);
  const auto comm = commutator_sticks(spec);
  double worst = 0.0;
  for (std::size_t i = 0; i < corr.size() && i < comm.size(); ++i) {
    const cd predicted = -std::expm1(spec.beta * corr[i].omega) * corr[i].weight;
    worst = std::max(worst, std::abs(comm[i].weight - predicted));
  }
  if (corr.size() != comm.size()) worst = std::numeric_limits<double>::infinity();
  return worst;
}

double port_offset(const ChannelSpec& spec) { return LehmannKernel(spec).port_offset(); }

}  // namespace memkernel
