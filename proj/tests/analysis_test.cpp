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

#include "atree/analysis.hpp"

namespace atree {
namespace {

VertexId id(std::int64_t i) { return VertexId{i}; }
VertexId pv(std::int64_t level, std::vector<std::uint64_t> digits) { return PaperVertex::make(level, std::move(digits)); }

// Witness reference for f = e_{1:1}, t = 1/2, computed with 40-digit mpmath:
// term_k = 2^k / (4 (k+1)^2 gamma^4), first partial sum above 1e6 at k = 33.
constexpr double kWitnessTerm0 = 0.09239384029215901670;
constexpr double kWitnessTerm10 = 0.78191150792703167854;
constexpr double kWitnessPartial33 = 1466916.8318653431494;
constexpr std::size_t kWitnessThresholdIndex = 33;

TEST(Sample, FiniteTreesAreExhaustive) {
  const auto tree = finite_tree({std::nullopt, 0, 0, 1});
  EXPECT_EQ(sample_vertices(tree).size(), 4u);
}

TEST(Sample, DeterministicForSeed) {
  SampleSpec spec;
  spec.seed = 7;
  const auto a = sample_vertices(paper_tree(), spec);
  const auto b = sample_vertices(paper_tree(), spec);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(std::adjacent_find(a.begin(), a.end()), a.end());
  // BFS part: 1 + 5 + 25 + 125 descendants, plus 3 ancestors.
  EXPECT_GE(a.size(), 159u);
}

TEST(Sample, AnchorAndAncestors) {
  SampleSpec spec;
  spec.depth = 1;
  spec.digit_bound = 1;
  spec.random_count = 0;
  spec.anchor = pv(2, {3});
  const auto s = sample_vertices(paper_tree(), spec);
  EXPECT_NE(std::find(s.begin(), s.end(), pv(1, {})), s.end());
  EXPECT_NE(std::find(s.begin(), s.end(), pv(3, {3, 1})), s.end());
  EXPECT_EQ(s.size(), 4u);
}

TEST(Density, PaperTreeIsFamilyLevel) {
  const auto w = WeightSystem::paper_lambda(paper_tree());
  const auto r = check_densely_defined(w, sample_vertices(w.tree()));
  EXPECT_EQ(r.verdict, DensityVerdict::DenselyDefined);
  EXPECT_TRUE(r.family_level);
}

TEST(Density, StarCounterexample) {
  FunctionWeightOptions opts;
  opts.shape = TermShape::RatioMonotone;
  const auto w = WeightSystem::from_function(infinite_star(), [](const VertexId&) { return Complex{1}; }, opts);
  const auto r = check_densely_defined(w, sample_vertices(w.tree()));
  EXPECT_EQ(r.verdict, DensityVerdict::CounterexampleVertex);
  EXPECT_EQ(r.counterexample, id(0));
}

TEST(Density, NatPathOnSample) {
  const auto w = WeightSystem::from_function(nat_path(), [](const VertexId&) { return Complex{2}; });
  const auto r = check_densely_defined(w, sample_vertices(w.tree()));
  EXPECT_EQ(r.verdict, DensityVerdict::DenselyDefinedOnSample);
  EXPECT_FALSE(r.family_level);
}

TEST(Hyponormal, PaperTreeMargin) {
  const auto w = WeightSystem::paper_lambda(paper_tree());
  const auto r = check_hyponormal(w, sample_vertices(w.tree()));
  EXPECT_EQ(r.verdict, HyponormalVerdict::Hyponormal);
  ASSERT_TRUE(r.family_margin);
  EXPECT_GT(r.family_margin->value, 0.6);
  EXPECT_LT(r.family_margin->value, 0.7);
  EXPECT_LT(r.family_margin->upper_bound, 1.0);
}

TEST(Hyponormal, LeafWithNonzeroWeight) {
  const auto w = WeightSystem::from_table(finite_tree({std::nullopt, 0}), {{id(1), 1.0}});
  const auto r = check_hyponormal(w, {});
  EXPECT_EQ(r.verdict, HyponormalVerdict::NotHyponormal);
  EXPECT_EQ(r.witness, id(1));
  EXPECT_EQ(r.violated_condition, "zero-norm");
}

TEST(Hyponormal, NondecreasingPath) {
  const auto w = WeightSystem::from_function(
      nat_path(), [](const VertexId& v) { return Complex{1.0 + 0.1 * static_cast<double>(std::get<std::int64_t>(v))}; });
  const auto r = check_hyponormal(w, sample_vertices(w.tree()));
  EXPECT_EQ(r.verdict, HyponormalVerdict::Hyponormal);
  for (const auto& [u, m] : r.margins) EXPECT_LE(*m.upper_bound, 1.0);
}

TEST(Hyponormal, DecreasingPathViolatesMargin) {
  const auto w = WeightSystem::from_function(
      nat_path(), [](const VertexId& v) { return Complex{std::exp2(-static_cast<double>(std::get<std::int64_t>(v)))}; });
  const auto r = check_hyponormal(w, sample_vertices(w.tree()));
  EXPECT_EQ(r.verdict, HyponormalVerdict::NotHyponormal);
  EXPECT_EQ(r.violated_condition, "margin");
}

TEST(Hyponormal, ZeroShift) {
  const auto w = WeightSystem::from_table(finite_tree({std::nullopt, 0, 0}), {{id(1), 0.0}, {id(2), 0.0}});
  EXPECT_EQ(check_hyponormal(w, {}).verdict, HyponormalVerdict::Hyponormal);
}

TEST(Triviality, PaperTreeForEveryExponent) {
  const auto w = WeightSystem::paper_lambda(paper_tree());
  const auto sample = sample_vertices(w.tree());
  for (const double t : {0.01, 0.25, 0.5, 0.75, 1.0}) {
    const auto c = certify_trivial_aluthge_domain(w, t, sample);
    EXPECT_EQ(c.status, TrivialityStatus::Certified) << t;
    EXPECT_TRUE(c.family_level);
    EXPECT_EQ(c.per_vertex.size(), sample.size());
    for (const auto& [u, cert] : c.per_vertex) {
      const auto& e = std::get<EventuallyIncreasing>(cert);
      EXPECT_GT(e.ratio, 1.0);
    }
  }
}

TEST(Triviality, FiniteTreeIsRefuted) {
  const auto w = WeightSystem::from_table(finite_tree({std::nullopt, 0}), {{id(1), 1.0}});
  const auto c = certify_trivial_aluthge_domain(w, 0.5, w.tree().vertices());
  EXPECT_EQ(c.status, TrivialityStatus::Refuted);
}

TEST(Witness, PinnedValues) {
  const auto w = WeightSystem::paper_lambda(paper_tree());
  const auto f = StructuredVector::basis(pv(1, {1}));
  const auto wit = nonclosability_witness(w, 0.5, f, 60);
  EXPECT_EQ(wit.base_vertex, pv(0, {}));
  EXPECT_NEAR(wit.adjoint_value.real(), 0.5, 1e-15);
  EXPECT_NEAR(wit.terms[0], kWitnessTerm0, 1e-15);
  EXPECT_NEAR(wit.terms[10] / kWitnessTerm10, 1.0, 1e-13);
  EXPECT_NEAR(wit.partial_sums[33] / kWitnessPartial33, 1.0, 1e-13);
  ASSERT_TRUE(wit.threshold_index);
  EXPECT_EQ(*wit.threshold_index, kWitnessThresholdIndex);
  EXPECT_EQ(wit.probes[3], pv(2, {3, 0}));
}

TEST(Witness, RequiresNonzeroAdjointImage) {
  const auto w = WeightSystem::paper_lambda(paper_tree());
  EXPECT_THROW(nonclosability_witness(w, 0.5, StructuredVector{}, 10), NoWitnessError);
  EXPECT_THROW(nonclosability_witness(w, 1.0, StructuredVector::basis(pv(1, {1})), 10), ContractViolation);
  const auto other = WeightSystem::from_function(nat_path(), [](const VertexId&) { return Complex{1}; });
  EXPECT_THROW(nonclosability_witness(other, 0.5, StructuredVector::basis(id(1)), 10), ContractViolation);
}

TEST(Branching, FiniteTreesSatisfyIt) {
  const auto w = WeightSystem::from_table(finite_tree({std::nullopt, 0, 0, 1}), {{id(1), 1.0}, {id(2), 2.0}, {id(3), 3.0}});
  const auto r = branching_necessity_check(w, 0.5, w.tree().vertices());
  EXPECT_EQ(r.checked, 4u);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_FALSE(r.vacuous);
}

TEST(Branching, PaperTreeIsVacuous) {
  const auto w = WeightSystem::paper_lambda(paper_tree());
  const auto r = branching_necessity_check(w, 0.5, sample_vertices(w.tree()));
  EXPECT_TRUE(r.vacuous);
  EXPECT_EQ(r.checked, 0u);
}

TEST(Branching, RefusesZeroWeights) {
  const auto w = WeightSystem::from_table(finite_tree({std::nullopt, 0}), {{id(1), 0.0}});
  EXPECT_THROW(branching_necessity_check(w, 0.5, w.tree().vertices()), ContractViolation);
}

}  // namespace
}  // namespace atree
