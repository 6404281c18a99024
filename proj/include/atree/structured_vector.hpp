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

#include <map>
#include <optional>

#include "atree/weights.hpp"

namespace atree {

/// Finite combination of basis vectors e_v and normalized child bundles
/// b_u = S e_u / ||S e_u|| of a single weight system.
///
/// Bundles are orthonormal among themselves, and <e_v, b_u> = conj(w_v)/s(u)
/// when par(v) = u, so every inner product is a finite exact expansion even
/// when Chi(u) is infinite.
class StructuredVector {
 public:
  StructuredVector() = default;

  static StructuredVector basis(const VertexId& v, Complex coefficient = 1.0);
  /// Requires 0 < s(u) < inf in `system`.
  static StructuredVector bundle(const WeightSystem& system, const VertexId& u, Complex coefficient = 1.0);

  const std::map<VertexId, Complex>& e_terms() const { return e_terms_; }
  const std::map<VertexId, Complex>& bundle_terms() const { return bundle_terms_; }
  const std::optional<WeightSystem>& bundle_basis() const { return basis_; }

  bool has_bundles() const { return !bundle_terms_.empty(); }
  bool is_zero() const { return e_terms_.empty() && bundle_terms_.empty(); }

  Complex e_coefficient(const VertexId& v) const;
  Complex bundle_coefficient(const VertexId& u) const;

  void add_e(const VertexId& v, Complex c);
  void add_bundle(const WeightSystem& system, const VertexId& u, Complex c);

  StructuredVector& operator+=(const StructuredVector& other);
  StructuredVector& operator-=(const StructuredVector& other);
  StructuredVector& operator*=(Complex c);

  friend StructuredVector operator+(StructuredVector a, const StructuredVector& b) { return a += b; }
  friend StructuredVector operator-(StructuredVector a, const StructuredVector& b) { return a -= b; }
  friend StructuredVector operator*(Complex c, StructuredVector a) { return a *= c; }

  /// Rewrites every bundle over its finitely many children; throws
  /// UnsupportedRepresentation when some bundle vertex has infinite Chi(u).
  StructuredVector expanded() const;

 private:
  void adopt_basis(const WeightSystem& system);

  std::map<VertexId, Complex> e_terms_;
  std::map<VertexId, Complex> bundle_terms_;
  std::optional<WeightSystem> basis_;
};

/// <x, y>, linear in x and conjugate-linear in y. Vectors with bundles of
/// different systems are compared after finite expansion.
Complex inner(const StructuredVector& x, const StructuredVector& y);
double norm_squared(const StructuredVector& x);

/// Max |coefficient| of x - y after expansion; for tests on finite trees.
double max_abs_difference(const StructuredVector& x, const StructuredVector& y);

}  // namespace atree
