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
#include <stdexcept>
#include <string>
#include <string_view>

namespace entroflux {

enum class ErrorCode {
  NotSquare,
  NotHermitian,
  TraceNotOne,
  NegativeEigenvalue,
  DimensionMismatch,
  ConvergenceFailure,
  TargetOutOfRange,
  DegenerateSpectrum,
  DegenerateVariance,
  SeriesTooShort,
  NonMonotoneTime,
  NonFiniteState,
  NonPositiveOccupation,
  Unphysical,
  InvalidArgument,
  ParseError,
  ValidationError,
  IoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::NonMonotoneTime: return "NonMonotoneTime";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::NonPositiveOccupation: return "NonPositiveOccupation";
    case ErrorCode::Unphysical: return "Unphysical";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code and, where meaningful, the
/// offending magnitude (e.g. the Hermiticity defect or the most negative
/// eigenvalue). `magnitude()` is NaN when no magnitude applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double magnitude = std::nan(""))
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        magnitude_(magnitude) {}

  ErrorCode code() const noexcept { return code_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  ErrorCode code_;
  double magnitude_;
};

}  // namespace entroflux
