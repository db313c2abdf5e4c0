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

#include "memkernel/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>

#include "memkernel/errors.hpp"

namespace memkernel {

namespace {

// Realized field and its rate for a periodic command, given the filter state at
// local time t_loc (t_abs counts from the start of the simulation).
struct Channel {
  const KernelSpec& k;
  const Waveform& w;
  bool zero_history;

  double phi(const FilterState& f, double t_loc, double t_abs) const {
    const double u = waveform_value(w, t_loc);
    if (const auto* lag = std::get_if<Lag>(&k)) {
      if (zero_history && t_abs - lag->t_lag < 0.0) return 0.0;
      return waveform_value(w, t_loc - lag->t_lag);
    }
    return realized_field(f, k, u);
  }

  double dphi(const FilterState& f, double t_loc, double t_abs) const {
    const double u = waveform_value(w, t_loc);
    const double du = waveform_derivative(w, t_loc);
    if (const auto* e = std::get_if<ExponentialModes>(&k)) {
      double d = e->g_inf * du;
      for (std::size_t j = 0; j < f.phi.size(); ++j) d += -e->modes[j].nu * f.phi[j] + e->modes[j].c * u;
      return d;
    }
    if (const auto* dl = std::get_if<Delta>(&k)) return dl->g * du;
    const auto& lag = std::get<Lag>(k);
    if (zero_history && t_abs - lag.t_lag < 0.0) return 0.0;
    return waveform_derivative(w, t_loc - lag.t_lag);
  }
};

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Vec3 floquet_axis(const Eigen::Matrix3d& R, const Vec3& reference) {
  if ((R - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-10) return reference;
  Eigen::EigenSolver<Eigen::Matrix3d> es(R);
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const double dist = std::abs(es.eigenvalues()(i) - std::complex<double>(1.0, 0.0));
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  Vec3 axis = es.eigenvectors().col(best).real();
  if (axis.norm() == 0.0) return reference;
  axis.normalize();
  if (axis.dot(reference) < 0.0) axis = -axis;
  return axis;
}

}  // namespace

Vec3 field_vector(double phi, const TransverseModel& m) {
  if (m.drive == Drive::Longitudinal) return Vec3(0.0, 0.0, m.omega_z + phi);
  return Vec3(phi, 0.0, m.omega_z);
}

Vec3 bloch_derivative(const Vec3& r, double phi, const TransverseModel& m) {
  return m.gyro * field_vector(phi, m).cross(r);
}

std::vector<double> Trajectory::component(Observable o) const {
  const int idx = o == Observable::SigmaX ? 0 : (o == Observable::SigmaY ? 1 : 2);
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i](idx);
  return out;
}

Trajectory propagate(const TransverseModel& model, const KernelSpec& k, const Waveform& w,
                     const PropagateOptions& opts) {
  validate(k);
  validate(w);
  if (std::holds_alternative<Diffusive>(k))
    throw Error(ErrorCode::InvalidKernel, "diffusive kernels cannot drive the time-domain simulation");
  if (opts.steps_per_period < 16 || opts.steps_per_period % 4 != 0)
    throw Error(ErrorCode::InvalidStep, "steps_per_period must be >= 16 and a multiple of 4");
  if (opts.cycles < 1) throw Error(ErrorCode::InvalidStep, "cycles must be >= 1");
  if (opts.max_cycles < 1) throw Error(ErrorCode::InvalidStep, "max_cycles must be >= 1");
  if (model.gyro != 1.0 && model.gyro != 2.0) throw Error(ErrorCode::InvalidStep, "gyro_factor must be 1 or 2");
  if (!std::isfinite(model.omega_z)) throw Error(ErrorCode::InvalidStep, "omega_z not finite");

  const int spp = opts.steps_per_period;
  const double T = period(w);
  const double dt = T / spp;
  const bool zero_init = opts.filter_init == FilterInit::Zero;
  const Channel ch{k, w, zero_init};

  Trajectory tr;
  tr.dt = dt;
  tr.steps_per_period = spp;
  tr.steady = true;

  FilterState f = zero_init ? zero_state(k) : periodic_state(k, w);

  if (zero_init && !f.phi.empty()) {
    std::vector<double> prev;
    std::vector<double> cur(spp);
    bool settled = false;
    for (int c = 0; c < opts.max_cycles; ++c) {
      for (int n = 0; n < spp; ++n) {
        f.t = n * dt;
        cur[n] = ch.phi(f, f.t, (c * spp + n) * dt);
        f = step_filter(f, k, w, dt);
      }
      ++tr.transient_cycles;
      if (!prev.empty()) {
        double diff = 0.0;
        for (int n = 0; n < spp; ++n) diff = std::max(diff, std::abs(cur[n] - prev[n]));
        tr.filter_defect = diff;
        if (diff <= opts.steady_tol * std::max(sup_abs(cur), std::numeric_limits<double>::min())) {
          settled = true;
          break;
        }
      }
      prev = cur;
    }
    tr.steady = settled;
  } else if (zero_init) {
    if (const auto* lag = std::get_if<Lag>(&k)) tr.transient_cycles = static_cast<int>(std::ceil(lag->t_lag / T));
  }

  const double t_abs0 = tr.transient_cycles * T;
  f.t = 0.0;

  auto rk4_step = [&](const std::vector<Vec3>& rs, const FilterState& f0, int n, double t_abs,
                      std::vector<Vec3>& out, FilterState& f1) {
    FilterState fs = f0;
    fs.t = n * dt;
    const FilterState fh = step_filter(fs, k, w, 0.5 * dt);
    f1 = step_filter(fs, k, w, dt);
    const double p0 = ch.phi(fs, fs.t, t_abs);
    const double ph = ch.phi(fh, fs.t + 0.5 * dt, t_abs + 0.5 * dt);
    const double p1 = ch.phi(f1, fs.t + dt, t_abs + dt);
    out.resize(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const Vec3& r = rs[i];
      const Vec3 k1 = bloch_derivative(r, p0, model);
      const Vec3 k2 = bloch_derivative(r + 0.5 * dt * k1, ph, model);
      const Vec3 k3 = bloch_derivative(r + 0.5 * dt * k2, ph, model);
      const Vec3 k4 = bloch_derivative(r + dt * k3, p1, model);
      out[i] = r + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  };

  const double phi0 = ch.phi(f, 0.0, t_abs0);
  Vec3 r0;
  switch (opts.init) {
    case Initialization::PlusState:
      r0 = Vec3(1.0, 0.0, 0.0);
      break;
    case Initialization::Explicit:
      r0 = opts.r0;
      break;
    case Initialization::GroundState:
    case Initialization::Floquet: {
      const Vec3 h = field_vector(phi0, model);
      if (h.norm() == 0.0) throw Error(ErrorCode::ZeroField, "field vanishes at the initial time");
      r0 = -h / h.norm();
      if (opts.init == Initialization::Floquet) {
        std::vector<Vec3> cols{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
        std::vector<Vec3> next;
        FilterState fm = f;
        FilterState fn;
        for (int n = 0; n < spp; ++n) {
          rk4_step(cols, fm, n, t_abs0 + n * dt, next, fn);
          cols.swap(next);
          fm = fn;
        }
        Eigen::Matrix3d R;
        R << cols[0], cols[1], cols[2];
        r0 = floquet_axis(R, r0);
      }
      break;
    }
  }

  const std::size_t total = static_cast<std::size_t>(opts.cycles) * spp;
  tr.t.reserve(total + 1);
  tr.u.reserve(total + 1);
  tr.du.reserve(total + 1);
  tr.phi.reserve(total + 1);
  tr.dphi.reserve(total + 1);
  tr.r.reserve(total + 1);
  tr.eps_ad.reserve(total + 1);

  std::vector<Vec3> state{r0};
  std::vector<Vec3> next;
  FilterState fn;
  auto record = [&](const FilterState& fs, double t_loc, double t_rel) {
    const double t_abs = t_abs0 + t_rel;
    const double p = ch.phi(fs, t_loc, t_abs);
    const double dp = ch.dphi(fs, t_loc, t_abs);
    tr.t.push_back(t_rel);
    tr.u.push_back(waveform_value(w, t_loc));
    tr.du.push_back(waveform_derivative(w, t_loc));
    tr.phi.push_back(p);
    tr.dphi.push_back(dp);
    tr.r.push_back(state[0]);
    const double eps = model.drive == Drive::Transverse ? adiabaticity_parameter(p, dp, model.omega_z) : 0.0;
    tr.eps_ad.push_back(eps);
    tr.eps_ad_max = std::max(tr.eps_ad_max, eps);
  };

  for (int c = 0; c < opts.cycles; ++c) {
    tr.cycle_starts.push_back(tr.t.size());
    for (int n = 0; n < spp; ++n) {
      const double t_rel = (static_cast<double>(c) * spp + n) * dt;
      f.t = n * dt;
      record(f, f.t, t_rel);
      rk4_step(state, f, n, t_abs0 + t_rel, next, fn);
      state.swap(next);
      f = fn;
    }
  }
  f.t = 0.0;
  record(f, 0.0, static_cast<double>(total) * dt);

  const std::size_t s0 = tr.final_cycle_start();
  const std::size_t s1 = tr.t.size() - 1;
  tr.state_defect = (tr.r[s1] - tr.r[s0]).cwiseAbs().maxCoeff();
  if (!zero_init || f.phi.empty()) {
    tr.filter_defect = std::abs(tr.phi[s1] - tr.phi[s0]);
    tr.steady = tr.filter_defect <= opts.steady_tol * std::max(sup_abs(tr.phi), std::numeric_limits<double>::min());
  }
  return tr;
}

Trajectory propagate(const TransverseModel& model, const KernelSpec& k, const Waveform& w, int steps_per_period,
                     int cycles, const Vec3& r0) {
  PropagateOptions o;
  o.steps_per_period = steps_per_period;
  o.cycles = cycles;
  o.init = Initialization::Explicit;
  o.r0 = r0;
  return propagate(model, k, w, o);
}

double longitudinal_theta(double u0, double omega, double alpha, double omega_z, double t) {
  const double delta = std::atan(omega / alpha);
  const double amp = u0 * alpha / (omega * std::sqrt(alpha * alpha + omega * omega));
  return omega_z * t - amp * (std::cos(omega * t - delta) - std::cos(delta));
}

double instantaneous_gap(double phi, double omega_z) { return 2.0 * std::hypot(omega_z, phi); }

Vec3 ground_bloch(double phi, double omega_z) {
  const double n = std::hypot(omega_z, phi);
  if (n == 0.0) throw Error(ErrorCode::ZeroField, "gap closes at omega_z = phi = 0");
  return Vec3(-phi / n, 0.0, -omega_z / n);
}

double adiabaticity_parameter(double phi, double dphi, double omega_z) {
  const double s = omega_z * omega_z + phi * phi;
  return std::abs(dphi) * std::abs(omega_z) / (4.0 * s * std::sqrt(s));
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,u,phi,dphi,rx,ry,rz,eps_ad\n";
  char buf[512];
  for (std::size_t i = 0; i < tr.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", tr.t[i], tr.u[i], tr.phi[i],
                  tr.dphi[i], tr.r[i](0), tr.r[i](1), tr.r[i](2), tr.eps_ad[i]);
    os << buf;
  }
}

}  // namespace memkernel
