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

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string_view>

#include "atree/series.hpp"
#include "atree/tree.hpp"

namespace atree {

using Complex = std::complex<double>;

enum class WeightKind { UserTable, UserFunction, PaperLambda, DerivedPi, DerivedMu };

std::string_view to_string(WeightKind kind);

class WeightImpl;

/// Options for closure-defined weights on trees with infinite branching.
struct FunctionWeightOptions {
  TermShape shape = TermShape::Unknown;
  SeriesPolicy policy{};
  /// Exact sum_{v in Chi(u)} |lambda_v|^2 when the caller knows it.
  std::function<std::optional<ExtendedNonneg>(const VertexId&)> aggregate;
};

/// System of weights {lambda_v} on the non-root vertices of a tree.
///
/// Handles are immutable and cheap to copy; per-vertex aggregates are cached
/// behind a lock inside the shared implementation.
class WeightSystem {
 public:
  /// Weights for every non-root vertex of a finite tree. Missing entries are
  /// a StructuralError.
  static WeightSystem from_table(const DirectedTree& tree, std::map<VertexId, Complex> weights);
  static WeightSystem from_function(const DirectedTree& tree, std::function<Complex(const VertexId&)> weight,
                                    FunctionWeightOptions options = {});
  /// lambda_v = 2^{sigma(par(v))} / (v_{M(v)} + 1) on the sequence tree or any Des(u) of it.
  static WeightSystem paper_lambda(const DirectedTree& tree);

  const DirectedTree& tree() const;
  WeightKind kind() const;
  /// Base system for derived kinds, else nullptr.
  const WeightSystem* base() const;
  /// Exponent of a DerivedMu system.
  std::optional<double> t() const;

  /// lambda_v; StructuralError at the root or outside the tree.
  Complex weight(const VertexId& v) const;
  /// sum_{v in Chi(u)} |lambda_v|^2. Throws InconclusiveSeries when a lazy
  /// series cannot be decided.
  ExtendedNonneg aggregate(const VertexId& u) const;
  /// Registered closed form for this (tree family, weight kind), if any.
  std::optional<AggregateFamily> closed_form_family() const;

  bool same_as(const WeightSystem& other) const { return impl_ == other.impl_; }
  const std::shared_ptr<const WeightImpl>& impl() const { return impl_; }

 private:
  explicit WeightSystem(std::shared_ptr<const WeightImpl> impl) : impl_(std::move(impl)) {}
  friend WeightSystem pi_weights(const WeightSystem&);
  friend WeightSystem mu_weights(const WeightSystem&, double);

  std::shared_ptr<const WeightImpl> impl_;
};

/// s(u) = ||S e_u||; infinite aggregates keep their certificate.
ExtendedNonneg node_norm(const WeightSystem& w, const VertexId& u);
/// s(u) as a double; throws EvaluationError naming `u` when infinite.
double finite_node_norm(const WeightSystem& w, const VertexId& u);

/// pi_v = lambda_v / s(par v) when s(par v) > 0, else 0.
WeightSystem pi_weights(const WeightSystem& w);
/// mu_v = (s(v)/s(par v))^t lambda_v when s(par v) > 0, else 0; t in (0,1].
WeightSystem mu_weights(const WeightSystem& w, double t);

/// Validates t in (0,1]; ContractViolation otherwise.
void require_t(double t);

}  // namespace atree
