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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atree/operators.hpp"

namespace atree {

/// Deterministic frontier sweep plus seeded random deep vertices.
struct SampleSpec {
  std::size_t depth = 3;
  std::size_t digit_bound = 4;
  std::size_t random_count = 16;
  std::uint64_t seed = 1;
  /// Starting vertex for rootless trees; defaults per family.
  std::optional<VertexId> anchor;
};

/// Finite trees: every vertex. Infinite trees: descendants of the root (or
/// anchor) down to `depth` using children 0..digit_bound, the anchor's
/// ancestors up to `depth` levels, and `random_count` random walks that go up
/// and down at most 2*depth steps with child indices up to 2*digit_bound.
/// Sorted and deduplicated.
std::vector<VertexId> sample_vertices(const DirectedTree& tree, const SampleSpec& spec = {});

// ---------------------------------------------------------------------------

enum class DensityVerdict { DenselyDefined, DenselyDefinedOnSample, CounterexampleVertex, Unknown };
std::string_view to_string(DensityVerdict v);

struct DensityReport {
  DensityVerdict verdict = DensityVerdict::Unknown;
  /// The verdict covers every vertex (closed form or exhaustive finite check).
  bool family_level = false;
  std::optional<VertexId> counterexample;
  std::optional<DivergenceCertificate> certificate;
  std::size_t checked = 0;
  std::vector<VertexId> inconclusive;
};

DensityReport check_densely_defined(const WeightSystem& w, const std::vector<VertexId>& sample);

// ---------------------------------------------------------------------------

enum class HyponormalVerdict { Hyponormal, NotHyponormal, Unknown };
std::string_view to_string(HyponormalVerdict v);

/// sum_{v in Chi+(u)} |w_v|^2 / s(v)^2 at one vertex.
struct VertexMargin {
  SeriesVerdict series;
  /// Certified upper bound when the series converged.
  std::optional<double> upper_bound;
  /// Condition "s(v) = 0 implies w_v = 0" over the checked children.
  bool zero_norm_condition = true;
  std::size_t children_checked = 0;
};

struct HyponormalityReport {
  HyponormalVerdict verdict = HyponormalVerdict::Unknown;
  bool family_level = false;
  std::optional<VertexId> witness;
  /// "zero-norm" or "margin" when NotHyponormal.
  std::string violated_condition;
  std::map<VertexId, VertexMargin> margins;
  /// Closed-form margin shared by every vertex, when registered.
  std::optional<MarginValue> family_margin;
};

HyponormalityReport check_hyponormal(const WeightSystem& w, const std::vector<VertexId>& sample);

// ---------------------------------------------------------------------------

enum class TrivialityStatus { Certified, Refuted, Unknown };
std::string_view to_string(TrivialityStatus s);

struct TrivialityCertificate {
  TrivialityStatus status = TrivialityStatus::Unknown;
  double t = 0;
  /// Set only through a registered closed form: the divergence holds at every vertex.
  bool family_level = false;
  std::vector<std::pair<VertexId, DivergenceCertificate>> per_vertex;
  std::optional<VertexId> refuting_vertex;
  std::vector<VertexId> inconclusive;
};

TrivialityCertificate certify_trivial_aluthge_domain(const WeightSystem& w, double t,
                                                     const std::vector<VertexId>& sample);

// ---------------------------------------------------------------------------

/// Divergence evidence for ||Delta_t(S*)^* f|| along v^(k) = u.k.0.
struct NonClosabilityWitness {
  StructuredVector f;
  double t = 0;
  VertexId base_vertex;       // u with (S* f)(u) != 0
  Complex adjoint_value;      // (S* f)(u)
  std::vector<VertexId> probes;
  std::vector<double> terms;  // |<f, Delta_t(S*) e_{v^(k)}>|^2
  std::vector<double> partial_sums;
  EventuallyIncreasing growth;
  double threshold = 1e6;
  std::optional<std::size_t> threshold_index;  // first K with p_K > threshold
};

/// Requires the sequence-tree weights (or a descendant subtree of them) and t in (0,1).
NonClosabilityWitness nonclosability_witness(const WeightSystem& w, double t, const StructuredVector& f,
                                             std::size_t K, double threshold = 1e6);

// ---------------------------------------------------------------------------

struct BranchingReport {
  double t = 0;
  std::size_t checked = 0;
  std::size_t skipped_infinite = 0;
  std::vector<VertexId> violations;
  /// No sampled vertex has finitely many children.
  bool vacuous = false;
  std::string note;
};

/// Contrapositive of the branching condition: with nonzero weights, every
/// finitely branching e_u must lie in the Aluthge domain.
BranchingReport branching_necessity_check(const WeightSystem& w, double t, const std::vector<VertexId>& sample);

}  // namespace atree
