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

// Bosonic mode H = omega (a^dag a + 1/2) coupled to a broadband squeezed bath
// with squeeze parameter r e^{i theta} centred at omega_s. The dynamics closes
// on the moments <a>, <a^dag a>, <a a>:
//
//   d<a>/dt     = -(gamma/2 + i omega) <a>
//   d<a^dag a>/dt = -gamma (<a^dag a> - N)
//   d<a a>/dt   = -(gamma + 2 i omega) <a a> + M(t)
//
// with N + 1/2 = (nbar + 1/2) cosh 2r and
// M(t) = -(nbar + 1/2) exp(i (theta - 2 omega_s t)) sinh 2r.
//
// The flux is measured through the rotating squeezed mode b_z, and the bound
// uses the rate form since phi = gamma omega beta (<b_z^dag b_z> - nbar) is the
// constrained observable.

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "entroflux/dynamics.hpp"
#include "entroflux/maxent.hpp"
#include "entroflux/models/gaussian.hpp"

namespace entroflux {

struct SqueezedParams {
  double omega = 2.0;
  double omega_s = 1.0;
  double temperature = 1.0;
  double gamma = 1.0;
  double r = 1.0;
  double theta = 1.0;
  Complex a0{0.0, 0.0};
  double n0 = 0.0;
  Complex m0{0.0, 0.0};
};

/// Moments of S(epsilon)|0> for real epsilon: <a^dag a> = sinh^2 eps,
/// <a a> = -sinh eps cosh eps.
inline GaussianState squeezed_vacuum(double epsilon) {
  const double s = std::sinh(epsilon);
  return GaussianState{{0.0, 0.0}, s * s, {-s * std::cosh(epsilon), 0.0}};
}

inline void set_initial(SqueezedParams& p, const GaussianState& g) {
  p.a0 = g.mean;
  p.n0 = g.occupation;
  p.m0 = g.anomalous;
}

inline GaussianState initial_moments(const SqueezedParams& p) { return {p.a0, p.n0, p.m0}; }

/// nbar = 1 / (e^{omega / T} - 1).
inline double thermal_occupation(const SqueezedParams& p) {
  return 1.0 / std::expm1(p.omega / p.temperature);
}

/// N with N + 1/2 = (nbar + 1/2) cosh 2r.
inline double squeezed_occupation(const SqueezedParams& p) {
  return (thermal_occupation(p) + 0.5) * std::cosh(2.0 * p.r) - 0.5;
}

/// M(t) = -(nbar + 1/2) exp(i (theta - 2 omega_s t)) sinh 2r.
inline Complex squeeze_drive(const SqueezedParams& p, double t) {
  return -(thermal_occupation(p) + 0.5) * std::sinh(2.0 * p.r) *
         std::exp(Complex(0.0, p.theta - 2.0 * p.omega_s * t));
}

inline void validate(const SqueezedParams& p) {
  if (!(p.omega > 0.0) || !(p.temperature > 0.0) || !(p.gamma > 0.0)) {
    throw Error(ErrorCode::ValidationError, "squeezed: omega, temperature and gamma must be positive");
  }
  if (!(p.r >= 0.0) || !std::isfinite(p.theta) || !std::isfinite(p.omega_s)) {
    throw Error(ErrorCode::ValidationError, "squeezed: need r >= 0 and finite theta, omega_s");
  }
  if (std::abs(p.a0) != 0.0) {
    throw Error(ErrorCode::ValidationError, "squeezed: displaced initial states are not supported");
  }
  if (!(p.n0 >= 0.0)) throw Error(ErrorCode::ValidationError, "squeezed: <a^dag a>_0 must be >= 0");
  if (!initial_moments(p).physical()) {
    throw Error(ErrorCode::ValidationError, "squeezed: initial moments violate n (n + 1) >= |m|^2",
                initial_moments(p).physicality_margin());
  }
}

/// State vector (Re <a>, Im <a>, <a^dag a>, Re <a a>, Im <a a>).
inline State squeezed_initial_state(const SqueezedParams& p) {
  return {p.a0.real(), p.a0.imag(), p.n0, p.m0.real(), p.m0.imag()};
}

inline GaussianState gaussian_from_state(const State& y) {
  return GaussianState{{y[0], y[1]}, y[2], {y[3], y[4]}};
}

inline OdeSystem squeezed_rhs(const SqueezedParams& p) {
  const double big_n = squeezed_occupation(p);
  const Complex m0 = squeeze_drive(p, 0.0);
  return OdeSystem{5, [=](double t, const State& y) {
                     const Complex a(y[0], y[1]);
                     const Complex m(y[3], y[4]);
                     const Complex da = -Complex(0.5 * p.gamma, p.omega) * a;
                     const double dn = -p.gamma * (y[2] - big_n);
                     const Complex dm = -Complex(p.gamma, 2.0 * p.omega) * m +
                                        m0 * std::exp(Complex(0.0, -2.0 * p.omega_s * t));
                     return State{da.real(), da.imag(), dn, dm.real(), dm.imag()};
                   }};
}

/// <b_z^dag b_z>_t = <a^dag a> cosh 2r + sinh^2 r - Re[M(t)^* <a a> / (nbar + 1/2)].
inline double bz_occupation(const GaussianState& g, const SqueezedParams& p, double t) {
  const double sr = std::sinh(p.r);
  return g.occupation * std::cosh(2.0 * p.r) + sr * sr -
         (std::conj(squeeze_drive(p, t)) * g.anomalous).real() / (thermal_occupation(p) + 0.5);
}

/// Dynamic temperature alpha = -ln((1 + nb) / nb) / (beta omega gamma); always negative.
inline double squeezed_alpha(double nb, const SqueezedParams& p) {
  if (!(nb > 0.0)) {
    throw Error(ErrorCode::NonPositiveOccupation, "squeezed_alpha: occupation must be positive", nb);
  }
  const double beta_omega_gamma = p.omega / p.temperature * p.gamma;
  return -std::log1p(1.0 / nb) / beta_omega_gamma;
}

/// Sigma_a for a pure initial state: the thermal entropy at occupation nb0.
inline double squeezed_sigma_a(double nb0) {
  if (nb0 < 0.0) throw Error(ErrorCode::NonPositiveOccupation, "squeezed_sigma_a: nb0 < 0", nb0);
  return bosonic_entropy(nb0);
}

/// Runs the moment equations and evaluates
///   Phi = beta omega gamma int (nb - nbar) dt         (trapezoid)
///   Sigma~ = Sigma_a + int (phi - alpha dphi/dt) dt    (rate form)
///   Sigma = S(rho(t)) + Phi,   S from the Bogoliubov occupation u.
/// Requires a pure, undisplaced Gaussian initial state.
inline TrajectoryRecord run_squeezed(const SqueezedParams& p, double t_max, double dt,
                                     std::size_t sample_every = 1) {
  constexpr double kOccupationFloor = 1e-12;
  constexpr double kPurityTolerance = 1e-9;
  validate(p);
  const GaussianState g0 = initial_moments(p);
  const double u0 = gaussian_occupation_u(g0.occupation, std::norm(g0.anomalous));
  if (u0 > kPurityTolerance) {
    throw Error(ErrorCode::ValidationError, "squeezed: initial state must be pure", u0);
  }

  const double nbar = thermal_occupation(p);
  const double rate_scale = p.gamma * p.omega / p.temperature;
  const OdeSystem sys = squeezed_rhs(p);

  std::vector<double> times;
  std::vector<double> phi;
  std::vector<double> alpha;
  std::vector<double> entropy;
  std::vector<double> occupation;
  std::size_t clamped = 0;
  integrate(sys, squeezed_initial_state(p), t_max, dt, [&](double t, const State& y) {
    const GaussianState g = gaussian_from_state(y);
    double nb = bz_occupation(g, p, t);
    if (nb < kOccupationFloor) {
      nb = kOccupationFloor;
      ++clamped;
    }
    times.push_back(t);
    occupation.push_back(nb);
    phi.push_back(rate_scale * (nb - nbar));
    alpha.push_back(squeezed_alpha(nb, p));
    entropy.push_back(gaussian_entropy(gaussian_occupation_u(g.occupation, std::norm(g.anomalous))));
  });

  TrajectoryRecord rec;
  double nb0 = bz_occupation(g0, p, 0.0);
  if (nb0 < kOccupationFloor) nb0 = kOccupationFloor;
  rec.sigma_a = squeezed_sigma_a(nb0);
  if (clamped > 0) {
    std::ostringstream os;
    os << "<b_z^dag b_z> fell below " << kOccupationFloor << " at " << clamped
       << " step(s); clamped before computing alpha";
    rec.warn(os.str());
  }

  const auto bound = bound_rate_form_series(rec.sigma_a, times, phi, alpha);
  const SampleFilter filter{sample_every, times.size() - 1};
  double flux = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0) flux += 0.5 * (times[i] - times[i - 1]) * (phi[i] + phi[i - 1]);
    if (!filter.keep(i)) continue;
    Sample s;
    s.t = times[i];
    s.entropy = entropy[i];
    s.flux = flux;
    s.flux_rate = phi[i];
    s.alpha = alpha[i];
    s.sigma = entropy[i] - entropy[0] + flux;
    s.sigma_bound = bound[i];
    s.residual = std::abs(alpha[i] * rate_scale + std::log1p(1.0 / occupation[i]));
    rec.push(s);
  }
  return rec;
}

}  // namespace entroflux
