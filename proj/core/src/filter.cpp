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

#include "memkernel/filter.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "memkernel/errors.hpp"

namespace memkernel {

namespace {

double wrap(double t, double T) {
  double r = std::fmod(t, T);
  if (r < 0.0) r += T;
  return r;
}

// phi1(x) = (1 - e^{-x})/x, phi2(x) = (x - 1 + e^{-x})/x^2
void phi_functions(double x, double& p1, double& p2) {
  if (x < 1e-2) {
    double term1 = 1.0;  // x^n / (n+1)!
    double term2 = 0.5;  // x^n / (n+2)!
    p1 = 0.0;
    p2 = 0.0;
    double sign = 1.0;
    for (int n = 0; n < 10; ++n) {
      p1 += sign * term1;
      p2 += sign * term2;
      term1 *= x / (n + 2);
      term2 *= x / (n + 3);
      sign = -sign;
    }
    return;
  }
  const double em1 = -std::expm1(-x);
  p1 = em1 / x;
  p2 = (x - em1) / (x * x);
}

const ExponentialModes* exp_modes(const KernelSpec& k) {
  validate(k);
  if (std::holds_alternative<Diffusive>(k))
    throw Error(ErrorCode::InvalidKernel, "diffusive kernels have no finite mode realization");
  return std::get_if<ExponentialModes>(&k);
}

void check_state(const FilterState& s, const ExponentialModes* e) {
  const std::size_t n = e ? e->modes.size() : 0;
  if (s.phi.size() != n) throw Error(ErrorCode::InvalidKernel, "filter state does not match kernel modes");
}

void linear_update(std::vector<double>& phi, const ExponentialModes& e, double ua, double ub, double h) {
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const double nu = e.modes[k].nu;
    const double x = nu * h;
    double p1 = 0.0;
    double p2 = 0.0;
    phi_functions(x, p1, p2);
    phi[k] = phi[k] * std::exp(-x) + e.modes[k].c * h * (ua * p1 + (ub - ua) * p2);
  }
}

// corner grid {offset + j*spacing} of a piecewise-linear command
bool corner_grid(const Waveform& w, double& offset, double& spacing) {
  if (const auto* tr = std::get_if<Triangle>(&w)) {
    offset = 0.25 * tr->period;
    spacing = 0.5 * tr->period;
    return true;
  }
  if (const auto* sm = std::get_if<Samples>(&w)) {
    offset = 0.0;
    spacing = sm->dt;
    return true;
  }
  return false;
}

}  // namespace

void validate(const Waveform& w) {
  if (const auto* s = std::get_if<Sine>(&w)) {
    if (!(s->u0 >= 0.0) || !std::isfinite(s->u0)) throw Error(ErrorCode::InvalidWaveform, "u0 must be >= 0");
    if (!(s->omega > 0.0) || !std::isfinite(s->omega))
      throw Error(ErrorCode::InvalidWaveform, "omega must be positive");
  } else if (const auto* t = std::get_if<Triangle>(&w)) {
    if (!(t->u0 >= 0.0) || !std::isfinite(t->u0)) throw Error(ErrorCode::InvalidWaveform, "u0 must be >= 0");
    if (!(t->period > 0.0) || !std::isfinite(t->period))
      throw Error(ErrorCode::InvalidWaveform, "period must be positive");
  } else {
    const auto& sm = std::get<Samples>(w);
    if (!(sm.dt > 0.0) || !std::isfinite(sm.dt)) throw Error(ErrorCode::InvalidWaveform, "dt must be positive");
    if (sm.values.size() < 2) throw Error(ErrorCode::InvalidWaveform, "need at least two samples");
    for (double v : sm.values)
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidWaveform, "sample not finite");
  }
}

double period(const Waveform& w) {
  if (const auto* s = std::get_if<Sine>(&w)) return 2.0 * std::numbers::pi / s->omega;
  if (const auto* t = std::get_if<Triangle>(&w)) return t->period;
  const auto& sm = std::get<Samples>(w);
  return sm.dt * static_cast<double>(sm.values.size());
}

double waveform_value(const Waveform& w, double t) {
  if (const auto* s = std::get_if<Sine>(&w)) {
    return s->u0 * std::sin(s->omega * wrap(t, period(w)));
  }
  if (const auto* tr = std::get_if<Triangle>(&w)) {
    const double x = wrap(t, tr->period) / tr->period;
    if (x < 0.25) return 4.0 * tr->u0 * x;
    if (x < 0.75) return tr->u0 * (2.0 - 4.0 * x);
    return tr->u0 * (4.0 * x - 4.0);
  }
  const auto& sm = std::get<Samples>(w);
  const std::size_t n = sm.values.size();
  const double pos = wrap(t, period(w)) / sm.dt;
  std::size_t i = std::min(static_cast<std::size_t>(pos), n - 1);
  const double frac = pos - static_cast<double>(i);
  return sm.values[i] + (sm.values[(i + 1) % n] - sm.values[i]) * frac;
}

double waveform_derivative(const Waveform& w, double t) {
  if (const auto* s = std::get_if<Sine>(&w)) {
    return s->u0 * s->omega * std::cos(s->omega * wrap(t, period(w)));
  }
  if (const auto* tr = std::get_if<Triangle>(&w)) {
    const double x = wrap(t, tr->period) / tr->period;
    const double slope = 4.0 * tr->u0 / tr->period;
    return (x < 0.25 || x >= 0.75) ? slope : -slope;
  }
  const auto& sm = std::get<Samples>(w);
  const std::size_t n = sm.values.size();
  const double pos = wrap(t, period(w)) / sm.dt;
  std::size_t i = std::min(static_cast<std::size_t>(pos), n - 1);
  return (sm.values[(i + 1) % n] - sm.values[i]) / sm.dt;
}

FilterState zero_state(const KernelSpec& k) {
  const auto* e = exp_modes(k);
  return FilterState{std::vector<double>(e ? e->modes.size() : 0, 0.0), 0.0};
}

FilterState step_filter(const FilterState& s, const KernelSpec& k, double u_begin, double u_end, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidStep, "dt must be positive");
  const auto* e = exp_modes(k);
  check_state(s, e);
  FilterState out = s;
  if (e) linear_update(out.phi, *e, u_begin, u_end, dt);
  out.t = s.t + dt;
  return out;
}

FilterState step_filter(const FilterState& s, const KernelSpec& k, const Waveform& w, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidStep, "dt must be positive");
  validate(w);
  const auto* e = exp_modes(k);
  check_state(s, e);
  FilterState out = s;
  out.t = s.t + dt;
  if (!e) return out;

  if (const auto* sn = std::get_if<Sine>(&w)) {
    using cd = std::complex<double>;
    const double T = period(w);
    const cd z0 = std::polar(1.0, sn->omega * wrap(s.t, T));
    const cd z1 = std::polar(1.0, sn->omega * wrap(s.t + dt, T));
    for (std::size_t j = 0; j < out.phi.size(); ++j) {
      const auto& m = e->modes[j];
      const double decay = std::exp(-m.nu * dt);
      const cd drive = (z1 - decay * z0) / cd(m.nu, sn->omega);
      out.phi[j] = out.phi[j] * decay + m.c * sn->u0 * drive.imag();
    }
    return out;
  }

  double offset = 0.0;
  double spacing = 1.0;
  corner_grid(w, offset, spacing);
  const double t_end = s.t + dt;
  double a = s.t;
  while (a < t_end) {
    double next = offset + (std::floor((a - offset) / spacing) + 1.0) * spacing;
    if (next - a <= 1e-12 * spacing) next += spacing;
    double b = std::min(next, t_end);
    if (t_end - b <= 1e-12 * spacing) b = t_end;
    linear_update(out.phi, *e, waveform_value(w, a), waveform_value(w, b), b - a);
    a = b;
  }
  return out;
}

FilterState periodic_state(const KernelSpec& k, const Waveform& w) {
  const double T = period(w);
  FilterState beta = step_filter(zero_state(k), k, w, T);
  const auto* e = exp_modes(k);
  FilterState out{beta.phi, 0.0};
  for (std::size_t j = 0; j < out.phi.size(); ++j) {
    out.phi[j] = beta.phi[j] / (-std::expm1(-e->modes[j].nu * T));
  }
  return out;
}

double realized_field(const FilterState& s, const KernelSpec& k, double u_now, const HistoryAccessor& history) {
  validate(k);
  if (const auto* e = std::get_if<ExponentialModes>(&k)) {
    check_state(s, e);
    double phi = e->g_inf * u_now;
    for (double p : s.phi) phi += p;
    return phi;
  }
  if (const auto* d = std::get_if<Delta>(&k)) return d->g * u_now;
  if (const auto* l = std::get_if<Lag>(&k)) {
    if (l->t_lag == 0.0) return u_now;
    if (!history) throw Error(ErrorCode::HistoryUnavailable, "lag kernel needs a history accessor");
    const auto v = history(s.t - l->t_lag);
    if (!v) throw Error(ErrorCode::HistoryUnavailable, "command history does not reach t - t_lag");
    return *v;
  }
  throw Error(ErrorCode::InvalidKernel, "diffusive kernels have no finite mode realization");
}

HarmonicResponse harmonic_steady_state(const KernelSpec& k, double u0, double omega) {
  const auto g = transfer_function(k, omega);
  return {u0 * std::abs(g), -std::arg(g)};
}

}  // namespace memkernel
