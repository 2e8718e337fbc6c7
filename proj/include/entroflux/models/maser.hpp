// Copyright 2026 The entroflux Authors
//
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

#pragma once

// Three-level maser relaxing with the field off. Levels (0,1) see bath 1,
// levels (0,2) see bath 2; the 1-2 coherence only dephases.
//
// State vector: (p1, p2, Re c, Im c); p0 = 1 - p1 - p2 is derived, so the
// trace is conserved identically.

#include <cmath>
#include <complex>
#include <string_view>
#include <vector>

#include "entroflux/density.hpp"
#include "entroflux/dynamics.hpp"
#include "entroflux/maxent.hpp"
#include "entroflux/potential.hpp"

namespace entroflux {

struct MaserParams {
  double gap1 = 1.0;  // E1 - E0
  double gap2 = 2.0;  // E2 - E0
  double beta1 = 1.0;
  double beta2 = 2.0;
  double rate1 = 1.0;
  double rate2 = 1.0;
  double dephasing = 1.2;
  double p1_0 = 0.3;
  double p2_0 = 0.3;
  Complex c0{0.1, 0.0};
};

/// How the bound is evaluated along an ODE trajectory.
enum class BoundMode {
  incremental,  // alpha and the bound advanced by flux increments
  resolve,      // alpha re-solved exactly at each step, closed-form bound
};

inline std::string_view to_string(BoundMode m) {
  return m == BoundMode::incremental ? "incremental" : "resolve";
}

inline CMatrix maser_matrix(double p1, double p2, Complex c) {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = 1.0 - p1 - p2;
  m(1, 1) = p1;
  m(2, 2) = p2;
  m(1, 2) = c;
  m(2, 1) = std::conj(c);
  return m;
}

inline CMatrix maser_matrix(const State& y) { return maser_matrix(y[0], y[1], {y[2], y[3]}); }

inline DensityMatrix maser_state(const State& y) { return DensityMatrix::validate(maser_matrix(y)); }

inline State maser_initial_state(const MaserParams& m) {
  return {m.p1_0, m.p2_0, m.c0.real(), m.c0.imag()};
}

inline void validate(const MaserParams& m) {
  if (!(m.beta1 > 0.0) || !(m.beta2 > 0.0) || !(m.gap1 > 0.0) || !(m.gap2 > 0.0)) {
    throw Error(ErrorCode::ValidationError, "maser: gaps and inverse temperatures must be positive");
  }
  if (!(m.rate1 > 0.0) || !(m.rate2 > 0.0) || !(m.dephasing >= 0.0)) {
    throw Error(ErrorCode::ValidationError, "maser: rates must be positive, dephasing non-negative");
  }
  if (!(m.p1_0 >= 0.0) || !(m.p2_0 >= 0.0) || m.p1_0 + m.p2_0 > 1.0) {
    throw Error(ErrorCode::ValidationError, "maser: need p1(0), p2(0) >= 0 and p1(0) + p2(0) <= 1",
                m.p1_0 + m.p2_0);
  }
  if (std::norm(m.c0) > m.p1_0 * m.p2_0) {
    throw Error(ErrorCode::ValidationError, "maser: |c(0)|^2 exceeds p1(0) p2(0)", std::norm(m.c0));
  }
}

/// p1' = -l1 (1 + e1) p1 + l1 e1 (1 - p2)
/// p2' = -l2 (1 + e2) p2 + l2 e2 (1 - p1)
/// c'  = i (Delta1 - Delta2) c - Gamma_d c
/// with e_k = exp(-beta_k Delta_k).
inline OdeSystem maser_rhs(const MaserParams& m) {
  const double e1 = std::exp(-m.beta1 * m.gap1);
  const double e2 = std::exp(-m.beta2 * m.gap2);
  const double detuning = m.gap1 - m.gap2;
  return OdeSystem{4, [=](double, const State& y) {
                     const double p1 = y[0];
                     const double p2 = y[1];
                     const Complex c(y[2], y[3]);
                     const Complex dc = Complex(-m.dephasing, detuning) * c;
                     return State{-m.rate1 * (1.0 + e1) * p1 + m.rate1 * e1 * (1.0 - p2),
                                  -m.rate2 * (1.0 + e2) * p2 + m.rate2 * e2 * (1.0 - p1),
                                  dc.real(), dc.imag()};
                   }};
}

/// rho* = C [ |0><0| + e^{-beta1 Delta1} |1><1| + e^{-beta2 Delta2} |2><2| ].
inline ReferencePotential maser_reference_state(const MaserParams& m) {
  return ReferencePotential::from_weights(
      {1.0, std::exp(-m.beta1 * m.gap1), std::exp(-m.beta2 * m.gap2)});
}

/// States (p1, p2, Re c, Im c) on `time_grid(t_max, dt)`, exactly as seen by run_maser.
inline std::vector<State> maser_states(const MaserParams& m, double t_max, double dt) {
  std::vector<State> states;
  integrate(maser_rhs(m), maser_initial_state(m), t_max, dt,
            [&](double, const State& y) { states.push_back(y); });
  return states;
}

/// Integrates the populations and coherence with RK4 and tracks the bound at
/// integrator resolution. Flux increments are dPhi = tr{(rho(t+dt) - rho(t)) ln rho*}.
inline TrajectoryRecord run_maser(const MaserParams& m, double t_max, double dt,
                                  BoundMode mode = BoundMode::incremental,
                                  std::size_t sample_every = 1) {
  validate(m);
  const ReferencePotential pot = maser_reference_state(m);
  const OdeSystem sys = maser_rhs(m);
  const DensityMatrix rho0 = maser_state(maser_initial_state(m));
  const double s0 = von_neumann_entropy(rho0);
  const double initial_potential = expectation_log_potential(rho0, pot);
  const AdiabaticProduction adiabatic = adiabatic_entropy_production(rho0, pot);
  const auto& lp = pot.log_eigenvalues();

  TrajectoryRecord rec;
  rec.sigma_a = adiabatic.sigma_a;
  BoundTracker tracker = BoundTracker::start(adiabatic);
  double previous_potential = initial_potential;
  std::size_t step = 0;
  const SampleFilter filter{sample_every, time_grid(t_max, dt).size() - 1};

  integrate(sys, maser_initial_state(m), t_max, dt, [&](double t, const State& y) {
    const DensityMatrix rho = maser_state(y);
    const double potential = expectation_log_potential(rho, pot);
    if (step > 0) {
      tracker = bound_incremental_step(tracker, pot, potential - previous_potential,
                                       t - tracker.t);
    }
    previous_potential = potential;
    if (!filter.keep(step++)) return;

    Sample s;
    s.t = t;
    s.entropy = von_neumann_entropy(rho);
    s.flux = tracker.flux;
    const State dy = sys(t, y);
    s.flux_rate = -(dy[0] + dy[1]) * lp[0] + dy[0] * lp[1] + dy[1] * lp[2];
    s.sigma = s.entropy - s0 + s.flux;
    if (mode == BoundMode::incremental) {
      s.alpha = tracker.alpha;
      s.sigma_bound = tracker.bound;
    } else {
      const BoundValue b = bound_closed_form(rho0, pot, tracker.flux);
      s.alpha = b.alpha;
      s.sigma_bound = b.bound;
    }
    s.residual = std::abs(constraint_f(pot, s.alpha) - potential);
    rec.push(s);
  });
  return rec;
}

}  // namespace entroflux
