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

#include "atree/weights.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "atree/errors.hpp"

namespace atree {

std::string_view to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::UserTable: return "table";
    case WeightKind::UserFunction: return "function";
    case WeightKind::PaperLambda: return "paper_lambda";
    case WeightKind::DerivedPi: return "pi";
    case WeightKind::DerivedMu: return "mu";
  }
  return "unknown";
}

void require_t(double t) {
  if (!(t > 0 && t <= 1)) throw ContractViolation("t must lie in (0,1], got " + std::to_string(t));
}

class WeightImpl {
 public:
  explicit WeightImpl(DirectedTree tree) : tree_(std::move(tree)) {}
  virtual ~WeightImpl() = default;

  virtual WeightKind kind() const = 0;
  virtual const WeightSystem* base() const { return nullptr; }
  virtual std::optional<double> t() const { return std::nullopt; }
  virtual std::optional<AggregateFamily> closed_form_family() const { return std::nullopt; }
  virtual TermShape shape() const { return TermShape::Unknown; }
  virtual SeriesPolicy policy() const { return {}; }
  virtual std::optional<ExtendedNonneg> known_aggregate(const VertexId&) const { return std::nullopt; }

  /// Caller has checked that v is a non-root vertex.
  virtual Complex raw_weight(const VertexId& v) const = 0;

  const DirectedTree& tree() const { return tree_; }

  Complex weight(const VertexId& v) const {
    if (!tree_.parent(v)) throw StructuralError("the root " + to_string(v) + " carries no weight");
    return raw_weight(v);
  }

  ExtendedNonneg aggregate(const VertexId& u) const {
    tree_.require(u);
    {
      std::shared_lock lock(mutex_);
      if (auto it = cache_.find(u); it != cache_.end()) return it->second;
    }
    auto value = compute_aggregate(u);
    std::unique_lock lock(mutex_);
    return cache_.emplace(u, std::move(value)).first->second;
  }

 private:
  ExtendedNonneg compute_aggregate(const VertexId& u) const {
    if (const auto n = tree_.child_count(u)) {
      CompensatedSum s;
      for (std::size_t i = 0; i < *n; ++i) s.add(std::norm(raw_weight(tree_.impl()->child(u, i))));
      return ExtendedNonneg::finite(s.value(), 0.0);
    }
    if (auto family = closed_form_family()) {
      if (auto v = closed_form_aggregate(*family, u)) return *v;
    }
    if (auto v = known_aggregate(u)) return *v;
    auto policy = this->policy();
    policy.shape = shape();
    const auto verdict = sum_series(
        TermSource{[this, &u](std::size_t i) { return std::norm(raw_weight(tree_.impl()->child(u, i))); },
                   std::nullopt},
        policy);
    return to_extended(verdict, "aggregate at " + to_string(u));
  }

  DirectedTree tree_;
  mutable std::shared_mutex mutex_;
  mutable std::map<VertexId, ExtendedNonneg> cache_;
};

namespace {

class TableWeights final : public WeightImpl {
 public:
  TableWeights(DirectedTree tree, std::map<VertexId, Complex> table)
      : WeightImpl(std::move(tree)), table_(std::move(table)) {}

  WeightKind kind() const override { return WeightKind::UserTable; }
  Complex raw_weight(const VertexId& v) const override { return table_.at(v); }

 private:
  std::map<VertexId, Complex> table_;
};

class FunctionWeights final : public WeightImpl {
 public:
  FunctionWeights(DirectedTree tree, std::function<Complex(const VertexId&)> fn, FunctionWeightOptions options)
      : WeightImpl(std::move(tree)), fn_(std::move(fn)), options_(std::move(options)) {}

  WeightKind kind() const override { return WeightKind::UserFunction; }
  TermShape shape() const override { return options_.shape; }
  SeriesPolicy policy() const override { return options_.policy; }
  std::optional<ExtendedNonneg> known_aggregate(const VertexId& u) const override {
    if (options_.aggregate) return options_.aggregate(u);
    return std::nullopt;
  }
  Complex raw_weight(const VertexId& v) const override { return fn_(v); }

 private:
  std::function<Complex(const VertexId&)> fn_;
  FunctionWeightOptions options_;
};

class PaperLambdaWeights final : public WeightImpl {
 public:
  using WeightImpl::WeightImpl;

  WeightKind kind() const override { return WeightKind::PaperLambda; }
  TermShape shape() const override { return TermShape::RatioMonotone; }
  std::optional<AggregateFamily> closed_form_family() const override {
    return AggregateFamily{TreeKind::PaperTree, ClosedFormWeights::PaperLambda, 0};
  }
  Complex raw_weight(const VertexId& v) const override {
    const auto& p = std::get<PaperVertex>(v);
    // sigma(par v) = sigma(v) - v_M
    const auto exponent = p.digit_sum() - p.last_digit();
    return std::ldexp(1.0, static_cast<int>(exponent)) / static_cast<double>(p.last_digit() + 1);
  }
};

class PiWeights final : public WeightImpl {
 public:
  explicit PiWeights(WeightSystem base) : WeightImpl(base.tree()), base_(std::move(base)) {}

  WeightKind kind() const override { return WeightKind::DerivedPi; }
  const WeightSystem* base() const override { return &base_; }
  TermShape shape() const override { return base_.impl()->shape(); }
  SeriesPolicy policy() const override { return base_.impl()->policy(); }
  std::optional<AggregateFamily> closed_form_family() const override {
    if (base_.kind() == WeightKind::PaperLambda) {
      return AggregateFamily{TreeKind::PaperTree, ClosedFormWeights::PaperPi, 0};
    }
    return std::nullopt;
  }
  std::optional<ExtendedNonneg> known_aggregate(const VertexId& u) const override {
    // sum |lambda_v|^2 / s(u)^2 is 1 on V+ and 0 elsewhere.
    const auto s = base_.aggregate(u);
    if (!s.is_finite()) return std::nullopt;
    return ExtendedNonneg::finite(s.value() > 0 ? 1.0 : 0.0, 0.0);
  }
  Complex raw_weight(const VertexId& v) const override {
    const auto p = *tree().impl()->parent(v);
    const double s = finite_node_norm(base_, p);
    if (s == 0) return 0.0;
    return base_.impl()->raw_weight(v) / s;
  }

 private:
  WeightSystem base_;
};

class MuWeights final : public WeightImpl {
 public:
  MuWeights(WeightSystem base, double t) : WeightImpl(base.tree()), base_(std::move(base)), t_(t) {}

  WeightKind kind() const override { return WeightKind::DerivedMu; }
  const WeightSystem* base() const override { return &base_; }
  std::optional<double> t() const override { return t_; }
  TermShape shape() const override { return base_.impl()->shape(); }
  SeriesPolicy policy() const override { return base_.impl()->policy(); }
  std::optional<AggregateFamily> closed_form_family() const override {
    if (base_.kind() == WeightKind::PaperLambda) {
      return AggregateFamily{TreeKind::PaperTree, ClosedFormWeights::PaperMu, t_};
    }
    return std::nullopt;
  }
  Complex raw_weight(const VertexId& v) const override {
    const auto p = *tree().impl()->parent(v);
    const double sp = finite_node_norm(base_, p);
    if (sp == 0) return 0.0;
    const double sv = finite_node_norm(base_, v);
    return std::pow(sv / sp, t_) * base_.impl()->raw_weight(v);
  }

 private:
  WeightSystem base_;
  double t_;
};

}  // namespace

WeightSystem WeightSystem::from_table(const DirectedTree& tree, std::map<VertexId, Complex> weights) {
  for (const auto& v : tree.vertices()) {
    if (!tree.parent(v)) continue;
    const auto it = weights.find(v);
    if (it == weights.end()) throw StructuralError("no weight for vertex " + to_string(v));
    if (!std::isfinite(it->second.real()) || !std::isfinite(it->second.imag())) {
      throw StructuralError("weight of vertex " + to_string(v) + " is not finite");
    }
  }
  for (const auto& [v, _] : weights) {
    tree.require(v);
    if (!tree.parent(v)) throw StructuralError("the root " + to_string(v) + " carries no weight");
  }
  return WeightSystem(std::make_shared<const TableWeights>(tree, std::move(weights)));
}

WeightSystem WeightSystem::from_function(const DirectedTree& tree, std::function<Complex(const VertexId&)> weight,
                                         FunctionWeightOptions options) {
  return WeightSystem(std::make_shared<const FunctionWeights>(tree, std::move(weight), std::move(options)));
}

WeightSystem WeightSystem::paper_lambda(const DirectedTree& tree) {
  if (tree.family() != TreeKind::PaperTree) {
    throw StructuralError("paper weights need the sequence tree or a descendant subtree of it");
  }
  return WeightSystem(std::make_shared<const PaperLambdaWeights>(tree));
}

const DirectedTree& WeightSystem::tree() const { return impl_->tree(); }
WeightKind WeightSystem::kind() const { return impl_->kind(); }
const WeightSystem* WeightSystem::base() const { return impl_->base(); }
std::optional<double> WeightSystem::t() const { return impl_->t(); }
Complex WeightSystem::weight(const VertexId& v) const { return impl_->weight(v); }
ExtendedNonneg WeightSystem::aggregate(const VertexId& u) const { return impl_->aggregate(u); }
std::optional<AggregateFamily> WeightSystem::closed_form_family() const { return impl_->closed_form_family(); }

ExtendedNonneg node_norm(const WeightSystem& w, const VertexId& u) { return w.aggregate(u).sqrt(); }

double finite_node_norm(const WeightSystem& w, const VertexId& u) {
  const auto s = node_norm(w, u);
  if (!s.is_finite()) {
    throw EvaluationError("node norm at " + to_string(u) + " is infinite (" +
                          std::string(kind_name(s.certificate())) + ")");
  }
  return s.value();
}

WeightSystem pi_weights(const WeightSystem& w) {
  return WeightSystem(std::make_shared<const PiWeights>(w));
}

WeightSystem mu_weights(const WeightSystem& w, double t) {
  require_t(t);
  return WeightSystem(std::make_shared<const MuWeights>(w, t));
}

}  // namespace atree
