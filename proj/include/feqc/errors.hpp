// Copyright 2026 The feqc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace feqc {

/// A state or circuit does not satisfy the requirements of an operation
/// (wrong occupancy, measuring spin on an empty arm, ...).
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Structural problem with a circuit (labels, references, arm ranges).
class CircuitValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the correlation-matrix backend for anything that leaves the
/// Gaussian manifold (parity/spin detection, entangled preparations).
class NonGaussianOperation : public std::runtime_error {
 public:
  explicit NonGaussianOperation(const std::string& what)
      : std::runtime_error("non-Gaussian operation: " + what) {}
};

}  // namespace feqc
