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

// Qubit with gap Delta weakly coupled to one thermal bath at inverse
// temperature beta. Populations relax exponentially and coherence decays at
// gamma/2 while rotating at Delta; everything here is analytic.

#include <cmath>
#include <complex>

#include "entroflux/density.hpp"
#include "entroflux/dynamics.hpp"
#include "entroflux/maxent.hpp"
#include "entroflux/potential.hpp"

namespace entroflux {

struct QubitParams {
  double gap = 1.0;    // Delta
  double beta = 1.0;   // inverse bath temperature
  double gamma = 1.0;  // damping rate
  double p0 = 0.3;     // initial excited population
  Complex c0{0.1, 0.0};
};

inline CMatrix qubit_matrix(double p, Complex c) {
  CMatrix m(2, 2);
  m << 1.0 - p, c, std::conj(c), p;
  return m;
}

inline void validate(const QubitParams& q) {
  if (!(q.gap > 0.0) || !(q.beta > 0.0) || !(q.gamma > 0.0)) {
    throw Error(ErrorCode::ValidationError, "qubit: gap, beta and gamma must be positive");
  }
  if (!(q.p0 > 0.0 && q.p0 < 1.0)) {
    throw Error(ErrorCode::ValidationError, "qubit: p0 must lie in (0, 1)", q.p0);
  }
  if (std::norm(q.c0) > q.p0 * (1.0 - q.p0)) {
    throw Error(ErrorCode::ValidationError, "qubit: |c0|^2 exceeds p0 (1 - p0)", std::norm(q.c0));
  }
  DensityMatrix::validate(qubit_matrix(q.p0, q.c0));
}

/// Thermal excited population e^{-beta Delta} / (1 + e^{-beta Delta}).
inline double qubit_p_inf(const QubitParams& q) {
  return 1.0 / (1.0 + std::exp(q.beta * q.gap));
}

inline double qubit_population(const QubitParams& q, double t) {
  const double p_inf = qubit_p_inf(q);
  return (q.p0 - p_inf) * std::exp(-q.gamma * t) + p_inf;
}

inline Complex qubit_coherence(const QubitParams& q, double t) {
  return q.c0 * std::exp(Complex(-0.5 * q.gamma * t, -q.gap * t));
}

inline DensityMatrix qubit_state(const QubitParams& q, double t) {
  return DensityMatrix::validate(qubit_matrix(qubit_population(q, t), qubit_coherence(q, t)));
}

/// rho* = C [ |0><0| + e^{-beta Delta} |1><1| ].
inline ReferencePotential qubit_reference_state(const QubitParams& q) {
  const double c = 1.0 / (1.0 + std::exp(-q.beta * q.gap));
  return ReferencePotential::diagonal({c, c * std::exp(-q.beta * q.gap)});
}

/// Closed-form dynamic temperature from tanh(alpha beta Delta / 2) = 1 - 2 p(t).
inline double qubit_alpha(const QubitParams& q, double t) {
  const double p = qubit_population(q, t);
  return 2.0 / (q.beta * q.gap) * std::atanh(1.0 - 2.0 * p);
}

/// Coherence cost h(p0) - S(lambda_+-) with lambda_+- = 1/2 +- sqrt((p0-1/2)^2 + |c0|^2).
inline double qubit_sigma_a(const QubitParams& q) {
  const double radius = std::sqrt((q.p0 - 0.5) * (q.p0 - 0.5) + std::norm(q.c0));
  auto xlogx = [](double x) { return x > tolerance::eigen_floor ? x * std::log(x) : 0.0; };
  return -xlogx(q.p0) - xlogx(1.0 - q.p0) + xlogx(0.5 + radius) + xlogx(0.5 - radius);
}

/// Trajectory with the analytic entropy production and the bound
///   Sigma~ = Sigma_a + gamma beta Delta (p0 - p_inf) int_0^t (1 - alpha) e^{-gamma s} ds
/// integrated by the trapezoid rule at resolution dt.
inline TrajectoryRecord run_qubit(const QubitParams& q, double t_max, double dt,
                                  std::size_t sample_every = 1) {
  validate(q);
  qubit_reference_state(q);  // throws DegenerateSpectrum
  const auto grid = time_grid(t_max, dt);
  const DensityMatrix rho0 = qubit_state(q, 0.0);
  const double s0 = von_neumann_entropy(rho0);
  const double bd = q.beta * q.gap;
  const double p_inf = qubit_p_inf(q);
  const double prefactor = q.gamma * bd * (q.p0 - p_inf);
  auto integrand = [&](double t) { return (1.0 - qubit_alpha(q, t)) * std::exp(-q.gamma * t); };

  TrajectoryRecord rec;
  rec.sigma_a = qubit_sigma_a(q);
  const SampleFilter filter{sample_every, grid.size() - 1};
  double integral = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    if (i > 0) integral += 0.5 * (grid[i] - grid[i - 1]) * (integrand(grid[i - 1]) + integrand(t));
    if (!filter.keep(i)) continue;

    const DensityMatrix rho = qubit_state(q, t);
    const double p = qubit_population(q, t);
    Sample s;
    s.t = t;
    s.entropy = von_neumann_entropy(rho);
    s.flux = -bd * (p - q.p0);
    s.flux_rate = prefactor * std::exp(-q.gamma * t);
    s.alpha = qubit_alpha(q, t);
    s.sigma = s.entropy - s0 + s.flux;
    s.sigma_bound = rec.sigma_a + prefactor * integral;
    s.residual = std::abs(std::tanh(0.5 * s.alpha * bd) - (1.0 - 2.0 * p));
    rec.push(s);
  }
  return rec;
}

}  // namespace entroflux
