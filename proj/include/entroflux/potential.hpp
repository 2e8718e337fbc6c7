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
#include <sstream>
#include <vector>

#include "entroflux/density.hpp"

namespace entroflux {

/// The fixed reference state rho* = sum_i p_i |p_i><p_i| whose logarithm acts
/// as a generalized potential for the entropy flux.
///
/// The spectrum must be nondegenerate and strictly inside (0, 1): uniform and
/// pure reference states make the dynamic temperature undefined and are
/// rejected with DegenerateSpectrum.
class ReferencePotential {
 public:
  static constexpr double kWeightFloor = 1e-12;
  static constexpr double kMinSpectralGap = 1e-12;
  static constexpr double kNormTolerance = 1e-10;
  static constexpr double kBasisTolerance = 1e-10;

  ReferencePotential(std::vector<double> eigenvalues, CMatrix basis)
      : p_(std::move(eigenvalues)), basis_(std::move(basis)) {
    const auto n = static_cast<Eigen::Index>(p_.size());
    if (n < 2) {
      throw Error(ErrorCode::DegenerateSpectrum, "reference potential needs at least two levels");
    }
    if (basis_.rows() != n || basis_.cols() != n) {
      throw Error(ErrorCode::DimensionMismatch, "basis shape does not match the spectrum");
    }
    double sum = 0.0;
    for (double p : p_) {
      if (!(p > kWeightFloor && p < 1.0 - kWeightFloor)) {
        std::ostringstream os;
        os << "eigenvalue " << p << " outside (1e-12, 1 - 1e-12)";
        throw Error(ErrorCode::DegenerateSpectrum, os.str(), p);
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
      throw Error(ErrorCode::TraceNotOne, "reference spectrum does not sum to one",
                  std::abs(sum - 1.0));
    }
    std::vector<double> sorted = p_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i] - sorted[i - 1] <= kMinSpectralGap) {
        throw Error(ErrorCode::DegenerateSpectrum, "reference spectrum is degenerate",
                    sorted[i] - sorted[i - 1]);
      }
    }
    const double ortho = (basis_.adjoint() * basis_ - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (ortho > kBasisTolerance) {
      throw Error(ErrorCode::InvalidArgument, "reference basis is not orthonormal", ortho);
    }

    log_p_.resize(p_.size());
    std::transform(p_.begin(), p_.end(), log_p_.begin(), [](double p) { return std::log(p); });
    log_min_ = std::log(sorted.front());
    log_max_ = std::log(sorted.back());
    RVector lp = Eigen::Map<const RVector>(log_p_.data(), n);
    log_matrix_ = basis_ * lp.cast<Complex>().asDiagonal() * basis_.adjoint();
  }

  /// Potential diagonal in the computational basis.
  static ReferencePotential diagonal(std::vector<double> eigenvalues) {
    const auto n = static_cast<Eigen::Index>(eigenvalues.size());
    return ReferencePotential(std::move(eigenvalues), CMatrix::Identity(n, n));
  }

  /// Normalizes positive weights w_i into p_i = w_i / sum w.
  static ReferencePotential from_weights(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    std::vector<double> p(weights.size());
    std::transform(weights.begin(), weights.end(), p.begin(), [total](double w) { return w / total; });
    return diagonal(std::move(p));
  }

  Eigen::Index dim() const { return static_cast<Eigen::Index>(p_.size()); }
  const std::vector<double>& eigenvalues() const { return p_; }
  const std::vector<double>& log_eigenvalues() const { return log_p_; }
  const CMatrix& basis() const { return basis_; }
  /// ln rho* as a matrix in the computational basis.
  const CMatrix& log_matrix() const { return log_matrix_; }
  double log_min() const { return log_min_; }
  double log_max() const { return log_max_; }

  CMatrix matrix() const {
    RVector p = Eigen::Map<const RVector>(p_.data(), dim());
    return basis_ * p.cast<Complex>().asDiagonal() * basis_.adjoint();
  }

 private:
  std::vector<double> p_;
  CMatrix basis_;
  std::vector<double> log_p_;
  double log_min_ = 0.0;
  double log_max_ = 0.0;
  CMatrix log_matrix_;
};

/// tr{rho ln rho*}.
inline double expectation_log_potential(const DensityMatrix& rho, const ReferencePotential& pot) {
  if (rho.dim() != pot.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "expectation_log_potential: dimensions differ");
  }
  return (rho.matrix() * pot.log_matrix()).trace().real();
}

}  // namespace entroflux
