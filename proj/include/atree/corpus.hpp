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
#include <random>
#include <string>
#include <vector>

#include "atree/weights.hpp"

namespace atree {

/// Seeded generator of weighted finite trees for oracle runs.
struct CorpusOptions {
  std::size_t max_vertices = 40;
  double min_modulus = 0.1;
  double max_modulus = 4.0;
  bool complex_phases = false;
  /// Leaf edges carry weight 0 (the zero-norm condition then holds at their parents).
  bool zero_leaf_weights = false;
};

struct CorpusInstance {
  std::string name;
  std::uint64_t seed = 0;
  WeightSystem weights;
};

/// Uniform double in [0, 1) from the top 53 bits of one draw; identical on every platform.
double unit_double(std::mt19937_64& rng);

/// Vertex i > 0 gets a parent drawn uniformly from 0..i-1.
CorpusInstance random_instance(std::uint64_t seed, const CorpusOptions& options = {});

/// `count` instances from consecutive seeds. Every fourth one has complex
/// phases, every tenth has zero leaf weights, and every twenty-fifth is the zero shift.
std::vector<CorpusInstance> random_corpus(std::size_t count, std::uint64_t seed);

/// Instances that fail the zero-norm condition at a chosen leaf: even entries
/// keep random weights elsewhere, odd entries zero every other edge.
std::vector<CorpusInstance> violating_corpus(std::size_t count, std::uint64_t seed);

}  // namespace atree
