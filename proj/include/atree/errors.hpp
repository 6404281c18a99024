// Copyright 2026 The atree Authors.
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

namespace atree {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed tree input: several roots, cycles, unknown vertices.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A caller broke a documented precondition (negative series term, t outside (0,1]).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A quantity needed by a formula is infinite or otherwise unavailable at a vertex.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A child bundle would have to be expanded over infinitely many children.
class UnsupportedRepresentation : public Error {
 public:
  using Error::Error;
};

/// 0/0 form in the adjoint transform formula (vanishing mu at par(v)).
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// The adjoint kills f, so no non-closability witness can be built from it.
class NoWitnessError : public Error {
 public:
  using Error::Error;
};

/// Dense linear algebra failed (SVD did not converge, non-finite entries).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace atree
