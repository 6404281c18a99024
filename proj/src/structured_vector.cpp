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

#include "atree/structured_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "atree/errors.hpp"

namespace atree {

namespace {

void accumulate(std::map<VertexId, Complex>& terms, const VertexId& v, Complex c) {
  if (c == Complex{}) return;
  auto [it, inserted] = terms.try_emplace(v, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms.erase(it);
  }
}

}  // namespace

StructuredVector StructuredVector::basis(const VertexId& v, Complex coefficient) {
  StructuredVector out;
  out.add_e(v, coefficient);
  return out;
}

StructuredVector StructuredVector::bundle(const WeightSystem& system, const VertexId& u, Complex coefficient) {
  StructuredVector out;
  out.add_bundle(system, u, coefficient);
  return out;
}

Complex StructuredVector::e_coefficient(const VertexId& v) const {
  const auto it = e_terms_.find(v);
  return it == e_terms_.end() ? Complex{} : it->second;
}

Complex StructuredVector::bundle_coefficient(const VertexId& u) const {
  const auto it = bundle_terms_.find(u);
  return it == bundle_terms_.end() ? Complex{} : it->second;
}

void StructuredVector::add_e(const VertexId& v, Complex c) { accumulate(e_terms_, v, c); }

void StructuredVector::adopt_basis(const WeightSystem& system) {
  if (!basis_) {
    basis_ = system;
  } else if (!basis_->same_as(system)) {
    throw UnsupportedRepresentation("bundles of two different weight systems cannot share a vector");
  }
}

void StructuredVector::add_bundle(const WeightSystem& system, const VertexId& u, Complex c) {
  if (c == Complex{}) return;
  const auto s = node_norm(system, u);
  if (!s.is_finite() || !(s.value() > 0)) {
    throw EvaluationError("bundle b_" + to_string(u) + " needs 0 < s(u) < inf");
  }
  adopt_basis(system);
  accumulate(bundle_terms_, u, c);
}

StructuredVector& StructuredVector::operator+=(const StructuredVector& other) {
  if (other.basis_ && basis_ && !basis_->same_as(*other.basis_)) {
    // Mixed bases: fall back to finite expansion of both sides.
    *this = expanded();
    return *this += other.expanded();
  }
  for (const auto& [v, c] : other.e_terms_) accumulate(e_terms_, v, c);
  if (other.basis_) {
    adopt_basis(*other.basis_);
    for (const auto& [u, c] : other.bundle_terms_) accumulate(bundle_terms_, u, c);
  }
  return *this;
}

StructuredVector& StructuredVector::operator-=(const StructuredVector& other) {
  return *this += Complex(-1.0) * other;
}

StructuredVector& StructuredVector::operator*=(Complex c) {
  if (c == Complex{}) {
    e_terms_.clear();
    bundle_terms_.clear();
    return *this;
  }
  for (auto& [_, x] : e_terms_) x *= c;
  for (auto& [_, x] : bundle_terms_) x *= c;
  return *this;
}

StructuredVector StructuredVector::expanded() const {
  StructuredVector out;
  out.e_terms_ = e_terms_;
  for (const auto& [u, c] : bundle_terms_) {
    const auto& tree = basis_->tree();
    if (!tree.child_count(u)) {
      throw UnsupportedRepresentation("bundle b_" + to_string(u) + " spans infinitely many children");
    }
    const double s = finite_node_norm(*basis_, u);
    for (const auto& w : tree.child_list(u)) accumulate(out.e_terms_, w, c * basis_->weight(w) / s);
  }
  return out;
}

Complex inner(const StructuredVector& x, const StructuredVector& y) {
  if (x.bundle_basis() && y.bundle_basis() && !x.bundle_basis()->same_as(*y.bundle_basis())) {
    return inner(x.expanded(), y.expanded());
  }
  Complex out{};
  const auto& xe = x.e_terms();
  const auto& ye = y.e_terms();
  for (const auto& [v, c] : xe) {
    if (auto it = ye.find(v); it != ye.end()) out += c * std::conj(it->second);
  }
  const auto& xb = x.bundle_terms();
  const auto& yb = y.bundle_terms();
  for (const auto& [u, c] : xb) {
    if (auto it = yb.find(u); it != yb.end()) out += c * std::conj(it->second);
  }
  // Cross terms pair e_v with b_{par v}.
  const auto cross = [](const std::map<VertexId, Complex>& e, const std::map<VertexId, Complex>& b,
                        const WeightSystem& system, bool e_first) {
    Complex acc{};
    const auto& tree = system.tree();
    for (const auto& [v, c] : e) {
      const auto p = tree.parent(v);
      if (!p) continue;
      const auto it = b.find(*p);
      if (it == b.end()) continue;
      // <e_v, b_u> = conj(w_v)/s(u); <b_u, e_v> = w_v/s(u)
      const Complex w = system.weight(v) / finite_node_norm(system, *p);
      acc += e_first ? c * std::conj(it->second) * std::conj(w) : it->second * std::conj(c) * w;
    }
    return acc;
  };
  if (!yb.empty()) out += cross(xe, yb, *y.bundle_basis(), true);
  if (!xb.empty()) out += cross(ye, xb, *x.bundle_basis(), false);
  return out;
}

double norm_squared(const StructuredVector& x) { return std::max(0.0, inner(x, x).real()); }

double max_abs_difference(const StructuredVector& x, const StructuredVector& y) {
  const auto d = (x.expanded() - y.expanded());
  double m = 0;
  for (const auto& [_, c] : d.e_terms()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace atree
