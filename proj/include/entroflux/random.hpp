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

// Random instance generators for property checks.

#include <algorithm>
#include <random>
#include <vector>

#include "entroflux/density.hpp"
#include "entroflux/potential.hpp"

namespace entroflux::random {

using Engine = std::mt19937_64;

inline CMatrix gaussian_matrix(Engine& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return g;
}

/// Haar-ish unitary from the QR decomposition of a complex Gaussian matrix.
inline CMatrix unitary(Engine& rng, Eigen::Index dim) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian_matrix(rng, dim, dim));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

/// G G^dag / tr with G of shape dim x rank; full rank by default.
inline DensityMatrix density(Engine& rng, Eigen::Index dim, Eigen::Index rank = 0) {
  if (rank <= 0) rank = dim;
  const CMatrix g = gaussian_matrix(rng, dim, rank);
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix::validate(m);
}

/// Nondegenerate spectrum with every p_i comfortably inside (0, 1).
inline std::vector<double> spectrum(Engine& rng, std::size_t dim) {
  std::uniform_real_distribution<double> uniform(0.05, 1.0);
  for (;;) {
    std::vector<double> w(dim);
    double total = 0.0;
    for (double& x : w) {
      x = uniform(rng);
      total += x;
    }
    for (double& x : w) x /= total;
    std::vector<double> sorted = w;
    std::sort(sorted.begin(), sorted.end());
    bool separated = true;
    for (std::size_t i = 1; i < dim; ++i) separated = separated && sorted[i] - sorted[i - 1] > 1e-6;
    if (separated) return w;
  }
}

inline ReferencePotential potential(Engine& rng, Eigen::Index dim, bool rotate = true) {
  auto p = spectrum(rng, static_cast<std::size_t>(dim));
  if (!rotate) return ReferencePotential::diagonal(std::move(p));
  return ReferencePotential(std::move(p), unitary(rng, dim));
}

inline Eigen::Index dimension(Engine& rng, Eigen::Index lo, Eigen::Index hi) {
  std::uniform_int_distribution<Eigen::Index> d(lo, hi);
  return d(rng);
}

}  // namespace entroflux::random
