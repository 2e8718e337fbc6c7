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

// Maximum-entropy upper bound on entropy production.
//
// For a reference state rho* with nondegenerate spectrum {p_i}, the comparison
// family sigma(alpha) = (rho*)^alpha / Z(alpha) is indexed by a single real
// "dynamic temperature" alpha. The constraint
//
//     f(alpha) = d ln Z / d alpha = tr{rho(t) ln rho*}
//
// pins alpha(t) uniquely because f' = g is a variance of ln p_i and hence
// strictly positive. The bound then follows in three equivalent forms:
// closed form in the accumulated flux, the incremental update used for
// ODE-driven models, and the rate form integrating phi - alpha * dphi/dt.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "entroflux/density.hpp"
#include "entroflux/potential.hpp"

namespace entroflux {

namespace detail {

struct TiltedMoments {
  double log_z;
  double mean;      // f(alpha)
  double variance;  // g(alpha)
};

// Max-shifted sums over p_i^alpha so that large |alpha| does not overflow.
inline TiltedMoments tilted_moments(const ReferencePotential& pot, double alpha) {
  const auto& lp = pot.log_eigenvalues();
  double shift = -std::numeric_limits<double>::infinity();
  for (double l : lp) shift = std::max(shift, alpha * l);
  double z = 0.0;
  double first = 0.0;
  for (double l : lp) {
    const double w = std::exp(alpha * l - shift);
    z += w;
    first += w * l;
  }
  const double mean = first / z;
  double var = 0.0;
  for (double l : lp) {
    const double w = std::exp(alpha * l - shift);
    var += w * (l - mean) * (l - mean);
  }
  return {shift + std::log(z), mean, var / z};
}

}  // namespace detail

/// ln Z(alpha) = ln sum_i p_i^alpha.
inline double log_partition(const ReferencePotential& pot, double alpha) {
  return detail::tilted_moments(pot, alpha).log_z;
}

/// f(alpha) = sum_i p~_i ln p_i with p~_i = p_i^alpha / Z(alpha).
inline double constraint_f(const ReferencePotential& pot, double alpha) {
  return detail::tilted_moments(pot, alpha).mean;
}

/// g(alpha) = f'(alpha), the variance of ln p_i under p~.
inline double constraint_f_prime(const ReferencePotential& pot, double alpha) {
  return detail::tilted_moments(pot, alpha).variance;
}

/// Unique alpha with f(alpha) = target.
///
/// Brackets by doubling outward from [-1, 1] (|alpha| <= 1e6), bisects to a
/// width of 1e-8, then polishes with safeguarded Newton steps.
inline double solve_alpha(const ReferencePotential& pot, double target) {
  constexpr double kBracketCap = 1e6;
  constexpr double kBisectWidth = 1e-8;
  constexpr double kPolishResidual = 1e-12;
  constexpr double kStepTolerance = 1e-15;
  constexpr double kAcceptResidual = 1e-10;
  constexpr int kMaxIterations = 200;

  if (!(target > pot.log_min() && target < pot.log_max())) {
    std::ostringstream os;
    os << "target " << target << " outside (" << pot.log_min() << ", " << pot.log_max() << ")";
    throw Error(ErrorCode::TargetOutOfRange, os.str(), target);
  }

  int iterations = 0;
  double lo = -1.0;
  double hi = 1.0;
  while (constraint_f(pot, lo) > target) {
    hi = lo;
    lo *= 2.0;
    if (-lo > kBracketCap || ++iterations > kMaxIterations) {
      throw Error(ErrorCode::ConvergenceFailure, "could not bracket alpha from below", target);
    }
  }
  while (constraint_f(pot, hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > kBracketCap || ++iterations > kMaxIterations) {
      throw Error(ErrorCode::ConvergenceFailure, "could not bracket alpha from above", target);
    }
  }

  while (hi - lo > kBisectWidth) {
    if (++iterations > kMaxIterations) {
      throw Error(ErrorCode::ConvergenceFailure, "bisection iteration cap reached", hi - lo);
    }
    const double mid = 0.5 * (lo + hi);
    if (constraint_f(pot, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  double alpha = 0.5 * (lo + hi);
  auto m = detail::tilted_moments(pot, alpha);
  double best_alpha = alpha;
  double best_residual = std::abs(m.mean - target);
  // Polish until the residual is below 1e-12 and the Newton step has shrunk
  // to rounding level. A flat f (small g) can meet the residual target while
  // alpha is still off by most of the bisection width, hence the second test.
  while (iterations++ < kMaxIterations && m.variance > 0.0) {
    const double step = -(m.mean - target) / m.variance;
    // Clamped to the bracket: the root may sit exactly on an endpoint and a
    // rounding-level overshoot must not throw the iterate away.
    const double next = std::clamp(alpha + step, lo, hi);
    if (next == alpha) break;
    alpha = next;
    m = detail::tilted_moments(pot, alpha);
    const double residual = std::abs(m.mean - target);
    if (m.mean < target) {
      lo = alpha;
    } else {
      hi = alpha;
    }
    if (residual <= best_residual) {
      best_residual = residual;
      best_alpha = alpha;
    }
    const bool step_converged = std::abs(step) <= kStepTolerance * std::max(1.0, std::abs(alpha));
    if (best_residual <= kPolishResidual && step_converged) break;
  }
  if (best_residual > kAcceptResidual) {
    throw Error(ErrorCode::ConvergenceFailure, "alpha residual above 1e-10", best_residual);
  }
  return best_alpha;
}

/// Tilted weights p~_i = p_i^alpha / Z(alpha), in the order of pot's spectrum.
inline std::vector<double> tilted_weights(const ReferencePotential& pot, double alpha) {
  const double log_z = log_partition(pot, alpha);
  std::vector<double> w;
  w.reserve(pot.log_eigenvalues().size());
  for (double l : pot.log_eigenvalues()) w.push_back(std::exp(alpha * l - log_z));
  return w;
}

/// Maximal state sigma(alpha) = sum_i p~_i |p_i><p_i|.
inline DensityMatrix sigma_state(const ReferencePotential& pot, double alpha) {
  const auto w = tilted_weights(pot, alpha);
  RVector d = Eigen::Map<const RVector>(w.data(), pot.dim());
  CMatrix m = pot.basis() * d.cast<Complex>().asDiagonal() * pot.basis().adjoint();
  return DensityMatrix::validate(m);
}

/// S(sigma(alpha)) without forming the matrix.
inline double sigma_entropy(const ReferencePotential& pot, double alpha) {
  double s = 0.0;
  for (double w : tilted_weights(pot, alpha)) {
    if (w > tolerance::eigen_floor) s -= w * std::log(w);
  }
  return s;
}

struct AdiabaticProduction {
  double sigma_a;
  double alpha0;
};

/// Sigma_a = S(sigma(alpha0)) - S(rho0), alpha0 solving f = tr{rho0 ln rho*}.
inline AdiabaticProduction adiabatic_entropy_production(const DensityMatrix& rho0,
                                                        const ReferencePotential& pot) {
  const double alpha0 = solve_alpha(pot, expectation_log_potential(rho0, pot));
  return {sigma_entropy(pot, alpha0) - von_neumann_entropy(rho0), alpha0};
}

/// Phi(t) = tr{(rho_t - rho_0) ln rho*}.
inline double flux_from_potential(const DensityMatrix& rho_t, const DensityMatrix& rho0,
                                  const ReferencePotential& pot) {
  if (rho_t.dim() != pot.dim() || rho0.dim() != pot.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "flux_from_potential: dimensions differ");
  }
  return ((rho_t.matrix() - rho0.matrix()) * pot.log_matrix()).trace().real();
}

struct BoundValue {
  double bound;
  double alpha;
};

/// Closed-form bound for accumulated flux Phi:
///   Sigma~ = Phi - alpha Phi - alpha tr(rho0 ln rho*) + ln Z(alpha) - S(rho0)
/// with alpha solving f(alpha) = tr(rho0 ln rho*) + Phi.
inline BoundValue bound_closed_form(const DensityMatrix& rho0, const ReferencePotential& pot,
                                    double flux) {
  const double initial = expectation_log_potential(rho0, pot);
  const double alpha = solve_alpha(pot, initial + flux);
  const double bound = flux - alpha * flux - alpha * initial + log_partition(pot, alpha) -
                       von_neumann_entropy(rho0);
  return {bound, alpha};
}

/// Running state of the incremental bound update.
struct BoundTracker {
  double t = 0.0;
  double alpha = 0.0;
  double flux = 0.0;
  double bound = 0.0;
  double sigma_a = 0.0;

  /// Tracker at t = 0: alpha = alpha0 and bound = Sigma_a.
  static BoundTracker start(const AdiabaticProduction& a) {
    return BoundTracker{0.0, a.alpha0, 0.0, a.sigma_a, a.sigma_a};
  }
};

/// One step of the incremental update, all right-hand sides at the old alpha:
///   alpha += dPhi / g(alpha),  bound += (1 - alpha) dPhi,  flux += dPhi.
inline BoundTracker bound_incremental_step(const BoundTracker& tracker,
                                           const ReferencePotential& pot, double delta_flux,
                                           double dt = 0.0) {
  BoundTracker next = tracker;
  next.t += dt;
  if (delta_flux == 0.0) return next;
  const double g = constraint_f_prime(pot, tracker.alpha);
  if (g < 1e-15) {
    throw Error(ErrorCode::DegenerateVariance, "g(alpha) below 1e-15", g);
  }
  next.alpha = tracker.alpha + delta_flux / g;
  next.bound = tracker.bound + (1.0 - tracker.alpha) * delta_flux;
  next.flux = tracker.flux + delta_flux;
  return next;
}

namespace detail {

inline void check_series(std::span<const double> times, std::span<const double> phi,
                         std::span<const double> alpha) {
  if (times.size() != phi.size() || times.size() != alpha.size()) {
    throw Error(ErrorCode::DimensionMismatch, "rate-form series lengths differ");
  }
  if (times.size() < 2) {
    throw Error(ErrorCode::SeriesTooShort, "rate-form bound needs at least two samples");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw Error(ErrorCode::NonMonotoneTime, "sample times must be strictly increasing",
                  times[i] - times[i - 1]);
    }
  }
}

}  // namespace detail

/// Centered differences, one-sided at both ends. Works on non-uniform grids.
inline std::vector<double> finite_difference(std::span<const double> times,
                                             std::span<const double> values) {
  const std::size_t n = times.size();
  std::vector<double> d(n);
  d[0] = (values[1] - values[0]) / (times[1] - times[0]);
  d[n - 1] = (values[n - 1] - values[n - 2]) / (times[n - 1] - times[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d[i] = (values[i + 1] - values[i - 1]) / (times[i + 1] - times[i - 1]);
  }
  return d;
}

/// Rate-form bound Sigma_a + int (phi - alpha dphi/dt) dt at every sample,
/// trapezoidal on the sampling grid.
inline std::vector<double> bound_rate_form_series(double sigma_a, std::span<const double> times,
                                                  std::span<const double> phi,
                                                  std::span<const double> alpha) {
  detail::check_series(times, phi, alpha);
  const auto dphi = finite_difference(times, phi);
  std::vector<double> out(times.size());
  out[0] = sigma_a;
  double acc = sigma_a;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double h = times[i] - times[i - 1];
    const double left = phi[i - 1] - alpha[i - 1] * dphi[i - 1];
    const double right = phi[i] - alpha[i] * dphi[i];
    acc += 0.5 * h * (left + right);
    out[i] = acc;
  }
  return out;
}

/// Rate-form bound at the final sample.
inline double bound_rate_form(double sigma_a, std::span<const double> times,
                              std::span<const double> phi, std::span<const double> alpha) {
  return bound_rate_form_series(sigma_a, times, phi, alpha).back();
}

}  // namespace entroflux
