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

// Small independent oracles for the test suites. They deliberately avoid the
// library's own eigensolver, root finder and integrators.

#include <cmath>
#include <complex>
#include <functional>
#include <utility>

namespace oracle {

/// Eigenvalues (larger first) of the Hermitian matrix [[a, b], [conj(b), d]].
inline std::pair<double, double> eig2(double a, std::complex<double> b, double d) {
  const double mid = 0.5 * (a + d);
  const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  return {mid + radius, mid - radius};
}

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

/// Entropy of a qubit state [[1 - p, c], [conj(c), p]] from its closed-form spectrum.
inline double qubit_entropy(double p, std::complex<double> c) {
  const auto [hi, lo] = eig2(1.0 - p, c, p);
  return -xlogx(hi) - xlogx(lo);
}

inline double binary_entropy(double p) { return -xlogx(p) - xlogx(1.0 - p); }

/// Plain bisection on an increasing function; no derivative information.
inline double bisect(const std::function<double(double)>& f, double target, double lo, double hi,
                     int iterations = 200) {
  for (int k = 0; k < iterations; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Maximal entropy over qubit states whose weight on the second eigenvector
/// of a diagonal reference is w, found by scanning the coherence |c| and its
/// phase on a grid and refining the best cell by golden section.
inline double max_entropy_at_weight(double w) {
  const double c_max = std::sqrt(w * (1.0 - w));
  auto entropy = [&](double mag, double phase) {
    return qubit_entropy(w, std::polar(mag, phase));
  };
  double best_mag = 0.0;
  double best = -1.0;
  constexpr int kMag = 400;
  constexpr int kPhase = 16;
  for (int i = 0; i <= kMag; ++i) {
    const double mag = c_max * i / kMag;
    for (int j = 0; j < kPhase; ++j) {
      const double s = entropy(mag, 2.0 * M_PI * j / kPhase);
      if (s > best) {
        best = s;
        best_mag = mag;
      }
    }
  }
  double lo = std::max(0.0, best_mag - c_max / kMag);
  double hi = std::min(c_max, best_mag + c_max / kMag);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int k = 0; k < 100; ++k) {
    const double x1 = hi - ratio * (hi - lo);
    const double x2 = lo + ratio * (hi - lo);
    if (entropy(x1, 0.0) > entropy(x2, 0.0)) {
      hi = x2;
    } else {
      lo = x1;
    }
  }
  return std::max(best, entropy(0.5 * (lo + hi), 0.0));
}

}  // namespace oracle
