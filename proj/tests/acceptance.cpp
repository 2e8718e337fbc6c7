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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "entroflux.hpp"
#include "support/fock_oracle.hpp"
#include "support/oracles.hpp"

namespace ef = entroflux;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

template <class Body>
void criterion(int number, const char* title, Body&& body) {
  Outcome out{false, ""};
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  if (!out.passed) ++failures;
  std::printf("[%s] criterion %2d: %-44s %s\n", out.passed ? "PASS" : "FAIL", number, title,
              out.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(std::initializer_list<std::pair<const char*, double>> items) {
  std::ostringstream os;
  os.precision(3);
  bool first = true;
  for (const auto& [k, v] : items) {
    os << (first ? "" : ", ") << k << " " << v;
    first = false;
  }
  return os.str();
}

ef::SqueezedParams reference_squeezed() {
  ef::SqueezedParams p;  // omega 2, omega_s 1, T 1, gamma 1, r 1, theta 1
  ef::set_initial(p, ef::squeezed_vacuum(-p.r));
  return p;
}

}  // namespace

int main() {
  const auto started = Clock::now();
  const ef::MaserParams maser;

  criterion(1, "maser gap equals D(rho || sigma)", [&]() -> Outcome {
    const auto t0 = Clock::now();
    const auto rec = ef::run_maser(maser, 10.0, 1e-3, ef::BoundMode::resolve, 1);
    const double runtime = seconds_since(t0);
    const auto pot = ef::maser_reference_state(maser);
    const auto states = ef::maser_states(maser, 10.0, 1e-3);
    if (states.size() != rec.size()) return {false, "state and record lengths differ"};
    double worst = 0.0;
    double lowest = 0.0;
    for (std::size_t i = 0; i < rec.size(); ++i) {
      const double d = ef::relative_entropy(ef::maser_state(states[i]), ef::sigma_state(pot, rec[i].alpha));
      worst = std::max(worst, std::abs(rec[i].gap - d));
      lowest = std::min(lowest, rec[i].gap);
    }
    return {worst <= 1e-8 && lowest >= -1e-8 && runtime < 1.0,
            fmt({{"max |gap - D|", worst}, {"min gap", lowest}, {"run s", runtime}})};
  });

  criterion(2, "maser gap starts at Sigma_a and decays", [&]() -> Outcome {
    const auto rec = ef::run_maser(maser, 10.0, 1e-3, ef::BoundMode::resolve, 1);
    const double sigma_a =
        ef::adiabatic_entropy_production(ef::maser_state(ef::maser_initial_state(maser)),
                                         ef::maser_reference_state(maser))
            .sigma_a;
    const double start = std::abs(rec.front().gap - sigma_a);
    double rise = 0.0;
    for (std::size_t i = 1; i < rec.size(); ++i) {
      if (rec[i - 1].t >= 1.0) rise = std::max(rise, rec[i].gap - rec[i - 1].gap);
    }
    const double end = rec.back().gap;
    const double end_incremental =
        ef::run_maser(maser, 10.0, 1e-3, ef::BoundMode::incremental, 100).back().gap;
    return {start <= 1e-10 && rise <= 0.0 && end < 1e-3 && end_incremental < 1e-3,
            fmt({{"|gap(0) - Sigma_a|", start},
                 {"max rise t>=1", rise},
                 {"gap(10)", end},
                 {"incremental gap(10)", end_incremental}})};
  });

  criterion(3, "squeezed bath gap stays finite", [&]() -> Outcome {
    const auto p = reference_squeezed();
    const auto t0 = Clock::now();
    const auto rec = ef::run_squeezed(p, 6.0, 1e-3, 1);
    const double runtime = seconds_since(t0);
    const double sigma_a = ef::squeezed_sigma_a(ef::bz_occupation(ef::initial_moments(p), p, 0.0));
    double half = 0.0;
    for (const auto& s : rec.samples()) {
      if (std::abs(s.t - 3.0) < 1e-9) half = s.gap;
    }
    const double start = rec.front().gap;
    const double end = rec.back().gap;
    return {std::abs(start - sigma_a) <= 1e-10 && start > 0.0 && end > 0.5 * half && runtime < 1.0,
            fmt({{"gap(0)", start}, {"Sigma_a", sigma_a}, {"gap(3)", half}, {"gap(6)", end},
                 {"run s", runtime}})};
  });

  criterion(4, "solve_alpha residual and anchors", [&]() -> Outcome {
    ef::random::Engine rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    double anchor = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const auto dim = ef::random::dimension(rng, 2, 6);
      const auto pot = ef::random::potential(rng, dim);
      double frac = u(rng);
      while (frac == 0.0) frac = u(rng);
      const double target = pot.log_min() + frac * (pot.log_max() - pot.log_min());
      if (!(target > pot.log_min() && target < pot.log_max())) continue;
      worst = std::max(worst, std::abs(ef::constraint_f(pot, ef::solve_alpha(pot, target)) - target));
      double neg_entropy = 0.0;
      double mean_log = 0.0;
      for (double p : pot.eigenvalues()) {
        neg_entropy += p * std::log(p);
        mean_log += std::log(p) / static_cast<double>(dim);
      }
      anchor = std::max(anchor, std::abs(ef::solve_alpha(pot, neg_entropy) - 1.0));
      anchor = std::max(anchor, std::abs(ef::solve_alpha(pot, mean_log)));
    }
    return {worst <= 1e-10 && anchor <= 1e-10, fmt({{"max residual", worst}, {"max anchor error", anchor}})};
  });

  criterion(5, "qubit closed form vs generic pipeline", [&]() -> Outcome {
    ef::QubitParams q;  // beta Delta 1, gamma 1, p0 0.3, c0 0.1
    const auto rec = ef::run_qubit(q, 8.0, 1e-3, 1);
    const auto pot = ef::qubit_reference_state(q);
    const auto rho0 = ef::qubit_state(q, 0.0);
    double bound = 0.0;
    double alpha = 0.0;
    for (const auto& s : rec.samples()) {
      const double flux = ef::flux_from_potential(ef::qubit_state(q, s.t), rho0, pot);
      const auto b = ef::bound_closed_form(rho0, pot, flux);
      bound = std::max(bound, std::abs(s.sigma_bound - b.bound));
      alpha = std::max(alpha, std::abs(s.alpha - b.alpha));
    }
    return {bound <= 1e-9 && alpha <= 1e-9, fmt({{"max |bound diff|", bound}, {"max |alpha diff|", alpha}})};
  });

  criterion(6, "incremental bound converges at first order", [&]() -> Outcome {
    std::vector<double> err;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
      const auto inc = ef::run_maser(maser, 10.0, dt, ef::BoundMode::incremental, 1000000);
      const auto res = ef::run_maser(maser, 10.0, dt, ef::BoundMode::resolve, 1000000);
      err.push_back(std::abs(inc.back().sigma_bound - res.back().sigma_bound));
    }
    const double r1 = err[0] / err[1];
    const double r2 = err[1] / err[2];
    auto ok = [](double r) { return r >= 1.8 && r <= 2.2; };
    return {ok(r1) && ok(r2), fmt({{"err(4e-3)", err[0]}, {"err(2e-3)", err[1]}, {"err(1e-3)", err[2]},
                                   {"ratios", r1}, {"", r2}})};
  });

  criterion(7, "Gaussian entropy vs truncated Fock state", [&]() -> Outcome {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uu(0.0, 1.5);
    std::uniform_real_distribution<double> rr(0.0, 0.7);
    std::uniform_real_distribution<double> ph(-M_PI, M_PI);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      const auto fock = oracle::squeezed_thermal(uu(rng), std::polar(rr(rng), ph(rng)));
      const double u = ef::gaussian_occupation_u(fock.occupation, std::norm(fock.anomalous));
      worst = std::max(worst, std::abs(ef::gaussian_entropy(u) - fock.entropy));
    }
    double pure = 0.0;
    for (double eps = -2.0; eps <= 2.0; eps += 0.125) {
      const auto g = ef::squeezed_vacuum(eps);
      pure = std::max(pure, ef::gaussian_occupation_u(g.occupation, std::norm(g.anomalous)));
    }
    return {worst <= 1e-5 && pure <= 1e-12, fmt({{"max |S - S_fock|", worst}, {"max pure u", pure}})};
  });

  criterion(8, "maser started at rho* stays inert", [&]() -> Outcome {
    ef::MaserParams m = maser;
    const auto pot = ef::maser_reference_state(m);
    m.p1_0 = pot.eigenvalues()[1];
    m.p2_0 = pot.eigenvalues()[2];
    m.c0 = 0.0;
    double worst = 0.0;
    for (const auto mode : {ef::BoundMode::incremental, ef::BoundMode::resolve}) {
      for (const auto& s : ef::run_maser(m, 10.0, 1e-3, mode, 1).samples()) {
        worst = std::max({worst, std::abs(s.sigma), std::abs(s.sigma_bound), std::abs(s.flux)});
      }
    }
    return {worst <= 1e-9, fmt({{"max |Sigma|, |bound|, |Phi|", worst}})};
  });

  criterion(9, "RK4 global order", [&]() -> Outcome {
    const ef::OdeSystem decay{1, [](double, const ef::State& y) { return ef::State{-y[0]}; }};
    auto err = [&](double dt) { return std::abs(ef::integrate(decay, {1.0}, 1.0, dt, nullptr)[0] - std::exp(-1.0)); };
    const double order = std::log2(err(0.1) / err(0.05));
    return {order >= 3.8 && order <= 4.2, fmt({{"order", order}})};
  });

  criterion(10, "Sigma_a >= 0 and qubit brute force", [&]() -> Outcome {
    ef::random::Engine rng(10);
    double lowest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 1000; ++k) {
      const auto dim = ef::random::dimension(rng, 2, 6);
      const auto pot = ef::random::potential(rng, dim);
      lowest = std::min(lowest, ef::adiabatic_entropy_production(ef::random::density(rng, dim), pot).sigma_a);
    }
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const auto pot = ef::random::potential(rng, 2);
      const auto rho0 = ef::random::density(rng, 2);
      const auto v = pot.basis().col(1);
      const double w = (v.adjoint() * rho0.matrix() * v)(0, 0).real();
      const double brute = oracle::max_entropy_at_weight(w) - ef::von_neumann_entropy(rho0);
      worst = std::max(worst, std::abs(ef::adiabatic_entropy_production(rho0, pot).sigma_a - brute));
    }
    return {lowest >= -1e-10 && worst <= 1e-6, fmt({{"min Sigma_a", lowest}, {"max |brute diff|", worst}})};
  });

  std::printf("%d failure(s), %.2f s total\n", failures, seconds_since(started));
  return failures == 0 ? 0 : 1;
}
