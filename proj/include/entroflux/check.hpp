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

// Self-contained invariant suite run by `entroflux check`. Each group returns
// a PASS/FAIL line; failures are reported, never thrown.

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "entroflux/density.hpp"
#include "entroflux/dynamics.hpp"
#include "entroflux/maxent.hpp"
#include "entroflux/models/gaussian.hpp"
#include "entroflux/models/maser.hpp"
#include "entroflux/models/qubit.hpp"
#include "entroflux/models/squeezed.hpp"
#include "entroflux/random.hpp"

namespace entroflux {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct CheckOptions {
  std::uint64_t seed = 20260101;
  int cases = 1000;
  /// Bogoliubov occupation under test; replaceable so a corrupted variant can
  /// be shown to fail.
  std::function<double(double, double)> occupation_u = gaussian_occupation_u;
};

namespace detail {

template <class Body>
CheckResult timed_check(std::string name, Body&& body) {
  CheckResult r;
  r.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    std::ostringstream detail;
    r.passed = body(detail);
    r.detail = detail.str();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace detail

inline CheckResult check_density_invariants(const CheckOptions& opt) {
  return detail::timed_check("density: spectrum, entropy and relative entropy", [&](std::ostream& os) {
    random::Engine rng(opt.seed);
    double worst_rebuild = 0.0;
    double worst_entropy = 0.0;
    double worst_relative = 0.0;
    double worst_projection = 0.0;
    for (int k = 0; k < opt.cases; ++k) {
      const auto dim = random::dimension(rng, 2, 6);
      const DensityMatrix rho = random::density(rng, dim);
      const DensityMatrix sigma = random::density(rng, dim);
      const Spectrum s = eigendecompose(rho);
      worst_rebuild = std::max(worst_rebuild, (s.reconstruct() - rho.matrix()).norm());
      const double entropy = von_neumann_entropy(rho);
      worst_entropy = std::max({worst_entropy, -entropy, entropy - std::log(double(dim))});
      worst_relative = std::max({worst_relative, -relative_entropy(rho, sigma),
                                 std::abs(relative_entropy(rho, rho))});
      const ReferencePotential pot = random::potential(rng, dim);
      double projected = 0.0;
      for (Eigen::Index i = 0; i < dim; ++i) {
        const auto v = pot.basis().col(i);
        projected += (v.adjoint() * rho.matrix() * v)(0, 0).real() * std::log(pot.eigenvalues()[i]);
      }
      worst_projection =
          std::max(worst_projection, std::abs(projected - expectation_log_potential(rho, pot)));
    }
    os << "rebuild " << worst_rebuild << ", entropy range " << worst_entropy << ", D " << worst_relative
       << ", tr(rho ln rho*) " << worst_projection;
    return worst_rebuild <= 1e-9 && worst_entropy <= 1e-9 && worst_relative <= 1e-10 &&
           worst_projection <= 1e-10;
  });
}

inline CheckResult check_monotonicity(const CheckOptions& opt) {
  return detail::timed_check("maxent: f increasing, g > 0", [&](std::ostream& os) {
    random::Engine rng(opt.seed + 1);
    // Far out in alpha the tilted distribution collapses onto one level and f
    // saturates to ln p_min or ln p_max in double precision. Strict ordering is
    // asserted on |alpha| <= 5 and weak ordering on the wider range.
    std::uniform_real_distribution<double> wide(-20.0, 20.0);
    std::uniform_real_distribution<double> narrow(-5.0, 5.0);
    int violations = 0;
    for (int k = 0; k < opt.cases; ++k) {
      const ReferencePotential pot = random::potential(rng, random::dimension(rng, 2, 6), false);
      for (const bool strict : {true, false}) {
        double a1 = strict ? narrow(rng) : wide(rng);
        double a2 = strict ? narrow(rng) : wide(rng);
        if (a1 > a2) std::swap(a1, a2);
        if (a1 == a2) continue;
        const double f1 = constraint_f(pot, a1);
        const double f2 = constraint_f(pot, a2);
        const double g = constraint_f_prime(pot, a1);
        if (strict) {
          violations += !(f1 < f2) + !(g > 0.0) + !(f1 > pot.log_min() && f1 < pot.log_max());
        } else {
          violations += !(f1 <= f2) + !(g >= 0.0) + !(f1 >= pot.log_min() && f1 <= pot.log_max());
        }
      }
    }
    os << violations << " violations";
    return violations == 0;
  });
}

inline CheckResult check_solver_residual(const CheckOptions& opt) {
  return detail::timed_check("maxent: solve_alpha residual <= 1e-10", [&](std::ostream& os) {
    random::Engine rng(opt.seed + 2);
    std::uniform_real_distribution<double> u(1e-3, 1.0 - 1e-3);
    double worst = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < opt.cases; ++k) {
      const ReferencePotential pot = random::potential(rng, random::dimension(rng, 2, 6), false);
      const double target = pot.log_min() + u(rng) * (pot.log_max() - pot.log_min());
      worst = std::max(worst, std::abs(constraint_f(pot, solve_alpha(pot, target)) - target));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    os << "max residual " << worst << " over " << opt.cases << " solves in " << secs << " s";
    return worst <= 1e-10 && secs < 1.0;
  });
}

inline CheckResult check_sigma_a(const CheckOptions& opt) {
  return detail::timed_check("maxent: Sigma_a >= 0", [&](std::ostream& os) {
    random::Engine rng(opt.seed + 3);
    double lowest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < opt.cases; ++k) {
      const auto dim = random::dimension(rng, 2, 6);
      const ReferencePotential pot = random::potential(rng, dim);
      lowest = std::min(lowest, adiabatic_entropy_production(random::density(rng, dim), pot).sigma_a);
    }
    os << "min Sigma_a " << lowest;
    return lowest >= -1e-10;
  });
}

inline CheckResult check_gap_identity(const CheckOptions&) {
  return detail::timed_check("models: bound - production = D(rho || sigma)", [&](std::ostream& os) {
    double worst = 0.0;

    QubitParams q;
    const ReferencePotential qpot = qubit_reference_state(q);
    const DensityMatrix q0 = qubit_state(q, 0.0);
    const double qs0 = von_neumann_entropy(q0);
    for (double t = 0.0; t <= 8.0; t += 0.05) {
      const DensityMatrix rho = qubit_state(q, t);
      const double flux = flux_from_potential(rho, q0, qpot);
      const BoundValue b = bound_closed_form(q0, qpot, flux);
      const double sigma = von_neumann_entropy(rho) - qs0 + flux;
      worst = std::max(worst, std::abs(b.bound - sigma - relative_entropy(rho, sigma_state(qpot, b.alpha))));
    }

    MaserParams m;
    const ReferencePotential mpot = maser_reference_state(m);
    const auto states = maser_states(m, 10.0, 1e-2);
    const TrajectoryRecord rec = run_maser(m, 10.0, 1e-2, BoundMode::resolve);
    for (std::size_t i = 0; i < rec.size(); ++i) {
      const DensityMatrix rho = maser_state(states[i]);
      const double d = relative_entropy(rho, sigma_state(mpot, rec[i].alpha));
      worst = std::max(worst, std::abs(rec[i].gap - d));
      if (rec[i].gap < -1e-8) worst = std::max(worst, -rec[i].gap);
    }
    os << "max |gap - D| " << worst;
    return worst <= 1e-8;
  });
}

inline CheckResult check_rk4_order(const CheckOptions&) {
  return detail::timed_check("dynamics: RK4 global order", [&](std::ostream& os) {
    const OdeSystem decay{1, [](double, const State& y) { return State{-y[0]}; }};
    auto error = [&](double dt) {
      return std::abs(integrate(decay, {1.0}, 1.0, dt, nullptr)[0] - std::exp(-1.0));
    };
    const double order = std::log2(error(0.1) / error(0.05));
    os << "measured order " << order;
    return order >= 3.8 && order <= 4.2;
  });
}

inline CheckResult check_gaussian(const CheckOptions& opt) {
  return detail::timed_check("gaussian: Bogoliubov occupation", [&](std::ostream& os) {
    double pure = 0.0;
    for (double r = 0.0; r <= 2.0; r += 0.25) {
      const GaussianState g = squeezed_vacuum(-r);
      pure = std::max(pure, std::abs(opt.occupation_u(g.occupation, std::norm(g.anomalous))));
    }
    double thermal = 0.0;
    for (double n = 0.0; n <= 5.0; n += 0.5) thermal = std::max(thermal, std::abs(opt.occupation_u(n, 0.0) - n));
    // Moments of a squeezed thermal state with Bogoliubov occupation u and
    // |c|^2 - |d|^2 = 1: n = |d|^2 + (1 + 2|d|^2) u, |m|^2 = |d|^2 |c|^2 (1 + 2u)^2.
    random::Engine rng(opt.seed + 4);
    std::uniform_real_distribution<double> uu(0.0, 3.0);
    std::uniform_real_distribution<double> dd(0.0, 2.0);
    double inverse = 0.0;
    for (int k = 0; k < 200; ++k) {
      const double u = uu(rng);
      const double d2 = dd(rng);
      const double n = d2 + (1.0 + 2.0 * d2) * u;
      const double m2 = d2 * (1.0 + d2) * (1.0 + 2.0 * u) * (1.0 + 2.0 * u);
      inverse = std::max(inverse, std::abs(opt.occupation_u(n, m2) - u));
    }
    os << "pure-squeezed u " << pure << ", thermal " << thermal << ", inverse map " << inverse;
    return pure <= 1e-12 && thermal <= 1e-12 && inverse <= 1e-9;
  });
}

inline CheckResult check_fixed_points(const CheckOptions&) {
  return detail::timed_check("models: equilibrium starts stay inert", [&](std::ostream& os) {
    MaserParams m;
    const ReferencePotential pot = maser_reference_state(m);
    m.p1_0 = pot.eigenvalues()[1];
    m.p2_0 = pot.eigenvalues()[2];
    m.c0 = 0.0;
    double maser = 0.0;
    for (const Sample& s : run_maser(m, 10.0, 1e-2).samples()) {
      maser = std::max({maser, std::abs(s.sigma), std::abs(s.sigma_bound), std::abs(s.flux)});
    }
    QubitParams q;
    q.p0 = qubit_p_inf(q);
    q.c0 = 0.0;
    double qubit = 0.0;
    for (const Sample& s : run_qubit(q, 8.0, 1e-2).samples()) {
      qubit = std::max({qubit, std::abs(s.sigma), std::abs(s.sigma_bound)});
    }
    os << "maser max |Sigma|,|bound|,|Phi| " << maser << ", qubit " << qubit;
    return maser <= 1e-9 && qubit <= 1e-9;
  });
}

inline std::vector<CheckResult> run_checks(const CheckOptions& opt = {}) {
  return {check_density_invariants(opt), check_monotonicity(opt), check_solver_residual(opt),
          check_sigma_a(opt),            check_gap_identity(opt), check_rk4_order(opt),
          check_gaussian(opt),           check_fixed_points(opt)};
}

}  // namespace entroflux
