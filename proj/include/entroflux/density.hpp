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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <utility>

#include "entroflux/error.hpp"

namespace entroflux {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

namespace tolerance {
inline constexpr double hermitian = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double eigenvalue = 1e-10;
/// Eigenvalues below this are treated as exact zeros (0 ln 0 = 0).
inline constexpr double eigen_floor = 1e-14;
}  // namespace tolerance

/// Eigenvalues in descending order with matching orthonormal columns.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;

  CMatrix reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  }
};

namespace detail {

inline Spectrum hermitian_spectrum(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  // Eigen sorts ascending.
  const auto n = m.rows();
  Spectrum s{RVector(n), CMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    s.eigenvalues(k) = solver.eigenvalues()(n - 1 - k);
    s.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return s;
}

inline double entropy_of_eigenvalues(const RVector& lambda) {
  double s = 0.0;
  for (double l : lambda) {
    if (l > tolerance::eigen_floor) s -= l * std::log(l);
  }
  return s;
}

}  // namespace detail

/// Hermitian, unit-trace, positive-semidefinite complex matrix.
///
/// Only obtainable through `validate`, so every instance satisfies the
/// invariants to the fixed tolerances above.
class DensityMatrix {
 public:
  static DensityMatrix validate(const CMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
      throw Error(ErrorCode::NotSquare, "density matrix must be square and non-empty");
    }
    const auto n = m.rows();
    double herm_defect = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        herm_defect = std::max(herm_defect, std::abs(m(i, j) - std::conj(m(j, i))));
      }
    }
    if (!(herm_defect <= tolerance::hermitian)) {
      std::ostringstream os;
      os << "max |m_ij - conj(m_ji)| = " << herm_defect;
      throw Error(ErrorCode::NotHermitian, os.str(), herm_defect);
    }
    const double trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
    if (!(trace_defect <= tolerance::trace)) {
      std::ostringstream os;
      os << "|tr m - 1| = " << trace_defect;
      throw Error(ErrorCode::TraceNotOne, os.str(), trace_defect);
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
    }
    const double lowest = solver.eigenvalues()(0);
    if (lowest < -tolerance::eigenvalue) {
      std::ostringstream os;
      os << "smallest eigenvalue " << lowest;
      throw Error(ErrorCode::NegativeEigenvalue, os.str(), lowest);
    }
    return DensityMatrix(m);
  }

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  explicit DensityMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

inline DensityMatrix validate_density(const CMatrix& m) { return DensityMatrix::validate(m); }

/// Descending spectrum; eigenvalues within 1e-14 outside [0, 1] are clipped.
inline Spectrum eigendecompose(const DensityMatrix& rho) {
  Spectrum s = detail::hermitian_spectrum(rho.matrix());
  for (double& l : s.eigenvalues) {
    if (l < 0.0 && l >= -tolerance::eigen_floor) l = 0.0;
    if (l > 1.0 && l <= 1.0 + tolerance::eigen_floor) l = 1.0;
  }
  return s;
}

/// -tr(rho ln rho) in nats.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  return detail::entropy_of_eigenvalues(eigendecompose(rho).eigenvalues);
}

/// D(rho || sigma) = tr rho ln rho - tr rho ln sigma, or +infinity when the
/// support of rho is not contained in the support of sigma.
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "relative_entropy: dimensions differ");
  }
  const Spectrum rs = eigendecompose(rho);
  const Spectrum ss = eigendecompose(sigma);

  double rho_log_rho = 0.0;
  for (double l : rs.eigenvalues) {
    if (l > tolerance::eigen_floor) rho_log_rho += l * std::log(l);
  }
  double rho_log_sigma = 0.0;
  for (Eigen::Index j = 0; j < ss.eigenvalues.size(); ++j) {
    const auto v = ss.eigenvectors.col(j);
    const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    const double mu = ss.eigenvalues(j);
    if (mu <= tolerance::eigen_floor) {
      if (weight > tolerance::eigen_floor) return std::numeric_limits<double>::infinity();
      continue;
    }
    rho_log_sigma += weight * std::log(mu);
  }
  return rho_log_rho - rho_log_sigma;
}

}  // namespace entroflux
