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

// Seeded property checks over random trees and the sequence tree.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "atree/analysis.hpp"
#include "atree/corpus.hpp"
#include "atree/dense_oracle.hpp"

namespace atree {
namespace {

VertexId id(std::int64_t i) { return VertexId{i}; }

StructuredVector random_vector(const std::vector<VertexId>& vertices, std::mt19937_64& rng) {
  StructuredVector x;
  for (const auto& v : vertices) {
    if (rng() % 3 == 0) continue;
    x.add_e(v, Complex(unit_double(rng) - 0.5, unit_double(rng) - 0.5));
  }
  return x;
}

TEST(Property, AdjointPairing) {
  std::mt19937_64 rng(11);
  for (const auto& inst : random_corpus(40, 300)) {
    const auto& w = inst.weights;
    const auto vs = w.tree().vertices();
    const auto x = random_vector(vs, rng);
    const auto y = random_vector(vs, rng);
    const auto lhs = inner(apply_shift(w, x), y);
    const auto rhs = inner(x, apply_adjoint(w, y));
    EXPECT_NEAR(std::abs(lhs - rhs), 0, 1e-10 * (1 + std::abs(lhs))) << inst.name;
  }
}

TEST(Property, PolarIdentityOnBasis) {
  for (const auto& inst : random_corpus(40, 400)) {
    const auto& w = inst.weights;
    for (const auto& u : w.tree().vertices()) {
      const auto e = StructuredVector::basis(u);
      const auto lhs = apply_partial_isometry(w, apply_modulus_power(w, 1.0, e));
      EXPECT_LT(max_abs_difference(lhs, apply_shift(w, e)), 1e-12) << inst.name;
    }
  }
}

TEST(Property, AdjointModulusSquaredIsSSstar) {
  for (const auto& inst : random_corpus(30, 500)) {
    const auto& w = inst.weights;
    for (const auto& v : w.tree().vertices()) {
      const auto e = StructuredVector::basis(v);
      const auto lhs = apply_adjoint_modulus_power(w, 2.0, e);
      const auto rhs = apply_shift(w, apply_adjoint(w, e));
      EXPECT_LT(max_abs_difference(lhs, rhs), 1e-10) << inst.name;
    }
  }
}

TEST(Property, PiWeightsArePartialIsometry) {
  for (const auto& inst : random_corpus(30, 600)) {
    const auto pi = pi_weights(inst.weights);
    for (const auto& u : inst.weights.tree().vertices()) {
      const double s = finite_node_norm(pi, u);
      EXPECT_TRUE(std::abs(s) < 1e-15 || std::abs(s - 1) < 1e-12) << inst.name;
    }
  }
}

TEST(Property, CoreTruncationsOnNatPath) {
  std::mt19937_64 rng(2026);
  const auto w = WeightSystem::from_function(nat_path(), [](const VertexId& v) {
    const auto n = static_cast<double>(std::get<std::int64_t>(v));
    return Complex{1.0 + std::sin(n)};
  });
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t support = 1 + rng() % 30;
    std::vector<std::pair<VertexId, Complex>> f;
    for (std::size_t j = 0; j < support; ++j) {
      const double scale = 1.0 / (1.0 + static_cast<double>(j));
      f.emplace_back(id(static_cast<std::int64_t>(j + rng() % 3 * 40)), Complex(scale * unit_double(rng), scale * unit_double(rng)));
    }
    std::sort(f.begin(), f.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    f.erase(std::unique(f.begin(), f.end(), [](const auto& a, const auto& b) { return a.first == b.first; }), f.end());
    const auto full = truncate(f, f.size());
    double prev_gap = INFINITY;
    double prev_image = INFINITY;
    for (std::size_t n = 0; n <= f.size(); ++n) {
      const auto rest = full - truncate(f, n);
      const double gap = std::sqrt(norm_squared(rest));
      const double image = std::sqrt(norm_squared(apply_shift(w, rest)));
      EXPECT_LE(gap, prev_gap + 1e-14);
      EXPECT_LE(image, prev_image + 1e-14);
      prev_gap = gap;
      prev_image = image;
    }
    EXPECT_EQ(prev_gap, 0);
    EXPECT_EQ(prev_image, 0);
  }
}

TEST(Property, MarginPartialSumsIncreaseBelowBound) {
  const auto m = paper_hyponormality_margin();
  const double g2 = gamma_constant().gamma_squared;
  double partial = 0;
  double prev = -1;
  for (std::size_t n = 0; n < 40; ++n) {
    const double k = static_cast<double>(n + 1);
    partial += std::ldexp(1.0 / (k * k), -2 * static_cast<int>(n));
    // Terms drop below one ulp of the sum after about 25 steps.
    if (n < 20) {
      EXPECT_GT(partial / g2, prev);
    } else {
      EXPECT_GE(partial / g2, prev);
    }
    EXPECT_LE(partial / g2, m.upper_bound);
    prev = partial / g2;
  }
  EXPECT_LT(m.upper_bound, 1.0);
  EXPECT_GT(1.0 - m.upper_bound, 0.3);
}

TEST(Property, SequenceTreeMuIsScaledLambda) {
  const auto w = WeightSystem::paper_lambda(paper_tree());
  for (const double t : {0.01, 0.25, 0.5, 0.75, 1.0}) {
    const auto mu = mu_weights(w, t);
    for (const auto& v : sample_vertices(w.tree())) {
      const auto last = static_cast<double>(std::get<PaperVertex>(v).last_digit());
      EXPECT_NEAR(mu.weight(v).real() / w.weight(v).real(), std::exp2(t * last), 1e-13);
    }
  }
}

TEST(Property, TrivialityRatioUniform) {
  for (const double t : {0.01, 0.25, 0.5, 0.75, 1.0}) {
    const auto e = paper_mu_divergence(t);
    for (std::size_t n = e.from_index; n < e.from_index + 2000; n += 37) {
      const double q = (n + 1.0) / (n + 2.0);
      EXPECT_GE(std::exp2(2 * t) * q * q, e.ratio);
    }
  }
}

TEST(Property, WitnessGrowth) {
  const auto w = WeightSystem::paper_lambda(paper_tree());
  for (const double t : {0.25, 0.5, 0.75}) {
    const auto wit = nonclosability_witness(w, t, StructuredVector::basis(PaperVertex::make(2, {1, 2})), 250);
    for (std::size_t k = 1; k < wit.terms.size(); ++k) {
      EXPECT_GT(wit.partial_sums[k], wit.partial_sums[k - 1]);
      const double q = (k + 0.0) / (k + 1.0);
      const double predicted = std::exp2(2 * (1 - t)) * q * q;
      EXPECT_NEAR(wit.terms[k] / wit.terms[k - 1] / predicted, 1.0, 1e-12) << "t=" << t << " k=" << k;
    }
    // The ratio reaches the 1% band around 2^{2(1-t)} once ((k+1)/(k+2))^2 >= 0.99.
    for (std::size_t k = 200; k < wit.terms.size(); ++k) {
      EXPECT_NEAR(wit.terms[k] / wit.terms[k - 1] / std::exp2(2 * (1 - t)), 1.0, 0.01);
    }
  }
}

TEST(Property, DescendantSubtreeInheritsVerdicts) {
  const auto des = descendant_subtree(paper_tree(), PaperVertex::make(0, {1}));
  const auto w = WeightSystem::paper_lambda(des);
  const auto sample = sample_vertices(des);
  EXPECT_EQ(check_densely_defined(w, sample).verdict, DensityVerdict::DenselyDefined);
  EXPECT_EQ(check_hyponormal(w, sample).verdict, HyponormalVerdict::Hyponormal);
  EXPECT_EQ(certify_trivial_aluthge_domain(w, 0.5, sample).status, TrivialityStatus::Certified);
}

}  // namespace
}  // namespace atree
