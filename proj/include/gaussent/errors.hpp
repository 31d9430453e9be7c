// Copyright 2026 The gaussent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaussent {

enum class ErrorKind {
    NotSymmetric,
    Unphysical,
    NumericalFailure,
    BadModeIndex,
    DimensionMismatch,
    NotSymplectic,
    SingularConditioning,
    BadCount,
    ComplexEigenvalue,
    NotBisymmetric,
    DomainError,
    InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NotSymmetric: return "NotSymmetric";
        case ErrorKind::Unphysical: return "Unphysical";
        case ErrorKind::NumericalFailure: return "NumericalFailure";
        case ErrorKind::BadModeIndex: return "BadModeIndex";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NotSymplectic: return "NotSymplectic";
        case ErrorKind::SingularConditioning: return "SingularConditioning";
        case ErrorKind::BadCount: return "BadCount";
        case ErrorKind::ComplexEigenvalue: return "ComplexEigenvalue";
        case ErrorKind::NotBisymmetric: return "NotBisymmetric";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Base exception for every failure raised by the library. The kind is
/// machine-checkable; what() carries a human-readable message prefixed by it.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

/// Raised when a covariance matrix violates the uncertainty principle.
class UnphysicalError : public Error {
  public:
    UnphysicalError(double eigenvalue, const std::string& message)
        : Error(ErrorKind::Unphysical, message), eigenvalue_(eigenvalue) {}

    /// Smallest symplectic eigenvalue of the rejected matrix.
    double eigenvalue() const noexcept { return eigenvalue_; }

  private:
    double eigenvalue_;
};

}  // namespace gaussent
