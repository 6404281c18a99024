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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "atree/weights.hpp"

namespace atree {
namespace {

VertexId id(std::int64_t i) { return VertexId{i}; }
VertexId pv(std::int64_t level, std::vector<std::uint64_t> digits) { return PaperVertex::make(level, std::move(digits)); }

WeightSystem small_tree() {
  // 0 -> {1, 2}, 1 -> {3}
  return WeightSystem::from_table(finite_tree({std::nullopt, 0, 0, 1}),
                                  {{id(1), Complex{3, 0}}, {id(2), Complex{0, 4}}, {id(3), Complex{2, 0}}});
}

TEST(Table, WeightsAndAggregates) {
  const auto w = small_tree();
  EXPECT_EQ(w.weight(id(2)), Complex(0, 4));
  EXPECT_THROW(w.weight(id(0)), StructuralError);
  EXPECT_DOUBLE_EQ(w.aggregate(id(0)).value(), 25);
  EXPECT_DOUBLE_EQ(finite_node_norm(w, id(0)), 5);
  EXPECT_DOUBLE_EQ(finite_node_norm(w, id(1)), 2);
  EXPECT_DOUBLE_EQ(finite_node_norm(w, id(3)), 0);
}

TEST(Table, RejectsMissingAndNonFiniteEntries) {
  const auto tree = finite_tree({std::nullopt, 0, 0});
  EXPECT_THROW(WeightSystem::from_table(tree, {{id(1), 1.0}}), StructuralError);
  EXPECT_THROW(WeightSystem::from_table(tree, {{id(1), 1.0}, {id(2), Complex{NAN, 0}}}), Error);
  EXPECT_THROW(WeightSystem::from_table(paper_tree(), {}), Error);
}

TEST(Pi, NormalizedWeights) {
  const auto pi = pi_weights(small_tree());
  EXPECT_EQ(pi.kind(), WeightKind::DerivedPi);
  EXPECT_NEAR(std::abs(pi.weight(id(1)) - Complex(0.6, 0)), 0, 1e-15);
  EXPECT_NEAR(std::abs(pi.weight(id(2)) - Complex(0, 0.8)), 0, 1e-15);
  EXPECT_NEAR(std::abs(pi.weight(id(3)) - Complex(1, 0)), 0, 1e-15);
  EXPECT_DOUBLE_EQ(pi.aggregate(id(0)).value(), 1);
  EXPECT_DOUBLE_EQ(pi.aggregate(id(3)).value(), 0);
}

TEST(Mu, WeightsFollowNodeNorms) {
  const auto w = small_tree();
  const auto mu = mu_weights(w, 0.5);
  ASSERT_EQ(mu.t(), 0.5);
  // mu_1 = sqrt(s(1)/s(0)) * 3 = sqrt(2/5) * 3
  EXPECT_NEAR(mu.weight(id(1)).real(), std::sqrt(2.0 / 5.0) * 3, 1e-14);
  // s(2) = 0
  EXPECT_EQ(mu.weight(id(2)), Complex{});
  EXPECT_EQ(mu.weight(id(3)), Complex{});
  EXPECT_EQ(mu_weights(w, 1.0).weight(id(1)), Complex(2 / 5.0 * 3, 0));
  EXPECT_THROW(mu_weights(w, 0.0), ContractViolation);
  EXPECT_THROW(mu_weights(w, 1.5), ContractViolation);
}

TEST(Paper, LambdaFormula) {
  const auto w = WeightSystem::paper_lambda(paper_tree());
  // parent 2:1,2 has digit sum 3, last digit of v is 4
  EXPECT_DOUBLE_EQ(w.weight(pv(3, {1, 2, 4})).real(), 8.0 / 5.0);
  EXPECT_DOUBLE_EQ(w.weight(pv(1, {})).real(), 1.0);
  const auto& g = gamma_constant();
  EXPECT_DOUBLE_EQ(w.aggregate(pv(0, {3})).value(), 64 * g.gamma_squared);
  EXPECT_THROW(WeightSystem::paper_lambda(nat_path()), StructuralError);
}

TEST(Paper, PiAndMuUseClosedForms) {
  const auto w = WeightSystem::paper_lambda(paper_tree());
  EXPECT_DOUBLE_EQ(pi_weights(w).aggregate(pv(5, {1})).value(), 1.0);
  const auto mu = mu_weights(w, 0.25).aggregate(pv(5, {1}));
  ASSERT_FALSE(mu.is_finite());
  EXPECT_TRUE(is_analytic(mu.certificate()));
  // mu_v = 2^{sigma(v) - (1-t) v_M} / (v_M + 1): here sigma = 4, v_M = 3.
  const auto v = pv(2, {1, 3});
  EXPECT_NEAR(mu_weights(w, 0.25).weight(v).real(), std::exp2(4 - 0.75 * 3) / 4, 1e-14);
}

TEST(Paper, DescendantSubtreeKeepsClosedForms) {
  const auto des = descendant_subtree(paper_tree(), pv(0, {2}));
  const auto w = WeightSystem::paper_lambda(des);
  EXPECT_TRUE(w.closed_form_family().has_value());
  EXPECT_DOUBLE_EQ(w.aggregate(pv(0, {2})).value(), 16 * gamma_constant().gamma_squared);
}

TEST(Function, LazyAggregateFromSeries) {
  // Weights 2^-k on the children of the star's centre.
  FunctionWeightOptions opts;
  opts.policy.tail_bound = [](std::size_t n) { return std::ldexp(4.0 / 3.0, -2 * static_cast<int>(n)); };
  const auto w = WeightSystem::from_function(
      infinite_star(), [](const VertexId& v) { return Complex{std::ldexp(1.0, -static_cast<int>(std::get<std::int64_t>(v)))}; },
      opts);
  EXPECT_NEAR(w.aggregate(id(0)).value(), 1.0 / 3.0, 1e-14);
  EXPECT_DOUBLE_EQ(w.aggregate(id(5)).value(), 0);
}

TEST(Function, DivergentStarAggregate) {
  FunctionWeightOptions opts;
  opts.shape = TermShape::RatioMonotone;
  const auto w = WeightSystem::from_function(infinite_star(), [](const VertexId&) { return Complex{1}; }, opts);
  const auto a = w.aggregate(id(0));
  EXPECT_FALSE(a.is_finite());
  EXPECT_THROW(finite_node_norm(w, id(0)), EvaluationError);
}

TEST(Function, UserSuppliedAggregate) {
  FunctionWeightOptions opts;
  opts.aggregate = [](const VertexId&) { return ExtendedNonneg::finite(std::numbers::pi * std::numbers::pi / 6); };
  const auto w = WeightSystem::from_function(
      infinite_star(), [](const VertexId& v) { return Complex{1.0 / static_cast<double>(std::get<std::int64_t>(v))}; },
      opts);
  EXPECT_DOUBLE_EQ(w.aggregate(id(0)).value(), std::numbers::pi * std::numbers::pi / 6);
}

TEST(Mu, NatPathGeometricMean) {
  const auto w = WeightSystem::from_function(nat_path(), [](const VertexId& v) {
    return Complex{1.0 + static_cast<double>(std::get<std::int64_t>(v) % 5)};
  });
  const auto mu = mu_weights(w, 0.5);
  for (std::int64_t n = 0; n < 12; ++n) {
    const double expected = std::sqrt(w.weight(id(n + 1)).real() * w.weight(id(n + 2)).real());
    EXPECT_NEAR(mu.weight(id(n + 1)).real(), expected, 1e-14);
  }
  const auto flat = WeightSystem::from_function(nat_path(), [](const VertexId&) { return Complex{3}; });
  EXPECT_NEAR(mu_weights(flat, 0.3).weight(id(4)).real(), 3, 1e-15);
}

TEST(Function, NatPathAggregatesAreSingleTerms) {
  const auto w = WeightSystem::from_function(nat_path(), [](const VertexId& v) {
    return Complex{static_cast<double>(std::get<std::int64_t>(v))};
  });
  EXPECT_DOUBLE_EQ(w.aggregate(id(3)).value(), 16);
  EXPECT_DOUBLE_EQ(finite_node_norm(w, id(3)), 4);
}

}  // namespace
}  // namespace atree
