// Copyright 2026 The ctxsheaf Authors
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

#include <stdexcept>
#include <string>

namespace ctxsheaf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subset argument is not contained where it must be (restriction,
/// enumeration over a subset of X, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario, model or document (antichain, cover union, E1, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A probability row does not sum to one.
class NormalisationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Marginals disagree on an overlap.
class SignallingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Some context ends up with an empty support.
class DegenerateModelError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Operation called with an argument outside its contract.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Ring or ring homomorphism not supported by the requested operation.
class UnsupportedRingError : public Error {
 public:
  using Error::Error;
};

/// Cohomological analysis requested on a disconnected cover.
class ComponentError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency assertion (implication chain, oracle agreement)
/// was violated. Always a bug.
class SelfCheckFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ctxsheaf
