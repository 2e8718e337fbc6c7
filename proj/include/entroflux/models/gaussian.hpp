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

#include <algorithm>
#include <cmath>
#include <complex>

#include "entroflux/error.hpp"

namespace entroflux {

/// First and second moments of a single bosonic mode.
struct GaussianState {
  std::complex<double> mean{0.0, 0.0};       // <a>
  double occupation = 0.0;                   // <a^dag a>
  std::complex<double> anomalous{0.0, 0.0};  // <a a>

  /// n (n + 1) - |m|^2, non-negative for physical zero-mean states.
  double physicality_margin() const {
    return occupation * (occupation + 1.0) - std::norm(anomalous);
  }
  bool physical(double tol = 1e-9) const {
    return occupation >= -tol && physicality_margin() >= -tol;
  }
};

/// Entropy of a thermal mode with occupation x: (1 + x) ln(1 + x) - x ln x.
inline double bosonic_entropy(double x) {
  if (x <= 0.0) return 0.0;
  return (1.0 + x) * std::log1p(x) - x * std::log(x);
}

/// Occupation u of the Bogoliubov mode that diagonalizes a zero-mean Gaussian
/// state with <a^dag a> = n and |<a a>|^2 = m_abs2. The defining quadratic is
///   (n - u)(n + u + 1) = |m|^2,
/// whose non-negative root is returned.
inline double gaussian_occupation_u(double n, double m_abs2) {
  constexpr double kTol = 1e-9;
  if (n < -kTol || m_abs2 < 0.0) {
    throw Error(ErrorCode::Unphysical, "negative occupation or |m|^2", n);
  }
  const double margin = n * n + n - m_abs2;
  if (margin < -kTol) {
    throw Error(ErrorCode::Unphysical, "moments violate n (n + 1) >= |m|^2", margin);
  }
  const double u = 0.5 * (std::sqrt(1.0 + 4.0 * std::max(margin, 0.0)) - 1.0);
  return std::max(u, 0.0);
}

/// Von Neumann entropy of the Gaussian state in terms of u.
inline double gaussian_entropy(double u) {
  if (u < 0.0) throw Error(ErrorCode::Unphysical, "gaussian_entropy: u must be non-negative", u);
  return bosonic_entropy(u);
}

}  // namespace entroflux
