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

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "entroflux/error.hpp"

namespace entroflux {

using State = std::vector<double>;

/// Autonomous or driven real ODE system y' = rhs(t, y). Complex variables are
/// packed as (re, im) pairs by the models.
struct OdeSystem {
  std::size_t state_dim = 0;
  std::function<State(double, const State&)> rhs;

  State operator()(double t, const State& y) const {
    State d = rhs(t, y);
    if (d.size() != state_dim) {
      throw Error(ErrorCode::DimensionMismatch, "rhs returned a vector of the wrong length");
    }
    return d;
  }
};

/// Uniform grid 0, dt, 2dt, ... with the last point landing exactly on t_max.
inline std::vector<double> time_grid(double t_max, double dt) {
  if (!(dt > 0.0) || !(t_max > 0.0) || dt > t_max) {
    throw Error(ErrorCode::InvalidArgument, "need 0 < dt <= t_max");
  }
  const double ratio = t_max / dt;
  auto steps = static_cast<std::size_t>(std::floor(ratio));
  // Absorb rounding so t_max = 10 * dt gives exactly 10 steps.
  if (ratio - static_cast<double>(steps) > 1e-9) ++steps;
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i < steps; ++i) grid[i] = static_cast<double>(i) * dt;
  grid[steps] = t_max;
  return grid;
}

namespace detail {

inline void axpy(State& out, const State& y, double h, const State& k) {
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
}

}  // namespace detail

/// Classical fourth-order Runge-Kutta step.
inline State rk4_step(const OdeSystem& sys, double t, const State& state, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "rk4_step: dt must be positive", dt);
  if (state.size() != sys.state_dim) {
    throw Error(ErrorCode::DimensionMismatch, "rk4_step: state has the wrong length");
  }
  State tmp(state.size());
  const State k1 = sys(t, state);
  detail::axpy(tmp, state, 0.5 * dt, k1);
  const State k2 = sys(t + 0.5 * dt, tmp);
  detail::axpy(tmp, state, 0.5 * dt, k2);
  const State k3 = sys(t + 0.5 * dt, tmp);
  detail::axpy(tmp, state, dt, k3);
  const State k4 = sys(t + dt, tmp);

  State next(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    next[i] = state[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!std::isfinite(next[i])) {
      throw Error(ErrorCode::NonFiniteState, "non-finite state component after RK4 step", t + dt);
    }
  }
  return next;
}

using Observer = std::function<void(double, const State&)>;

/// Integrates from t = 0 to t_max on `time_grid(t_max, dt)`, calling the
/// observer once for the initial state and once after every step.
inline State integrate(const OdeSystem& sys, State state0, double t_max, double dt,
                       const Observer& observer) {
  const auto grid = time_grid(t_max, dt);
  State y = std::move(state0);
  if (observer) observer(grid[0], y);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    y = rk4_step(sys, grid[i - 1], y, grid[i] - grid[i - 1]);
    if (observer) observer(grid[i], y);
  }
  return y;
}

/// One row of a trajectory. `residual` is the constraint residual at this
/// sample and is reported but not written to CSV.
struct Sample {
  double t = 0.0;
  double entropy = 0.0;
  double flux = 0.0;
  double flux_rate = 0.0;
  double alpha = 0.0;
  double sigma = 0.0;
  double sigma_bound = 0.0;
  double gap = 0.0;
  double residual = 0.0;
};

class TrajectoryRecord {
 public:
  /// Appends a sample; `gap` is recomputed as sigma_bound - sigma.
  void push(Sample s) {
    if (!samples_.empty() && !(s.t > samples_.back().t)) {
      throw Error(ErrorCode::NonMonotoneTime, "trajectory times must strictly increase", s.t);
    }
    s.gap = s.sigma_bound - s.sigma;
    samples_.push_back(s);
  }

  void warn(std::string message) { warnings_.push_back(std::move(message)); }

  const std::vector<Sample>& samples() const& { return samples_; }
  /// Moves the samples out of a temporary so `for (auto& s : run(...).samples())` is safe.
  std::vector<Sample> samples() && { return std::move(samples_); }
  const std::vector<std::string>& warnings() const { return warnings_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const Sample& front() const { return samples_.front(); }
  const Sample& back() const { return samples_.back(); }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }

  /// Sigma_a of the run (the bound at t = 0).
  double sigma_a = 0.0;

 private:
  std::vector<Sample> samples_;
  std::vector<std::string> warnings_;
};

/// Output thinning: keep every k-th integrator step plus the final one.
struct SampleFilter {
  std::size_t every = 1;
  std::size_t last = 0;

  bool keep(std::size_t step) const { return step % every == 0 || step == last; }
};

}  // namespace entroflux
