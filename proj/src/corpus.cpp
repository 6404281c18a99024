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

#include "atree/corpus.hpp"

#include <cmath>
#include <numbers>

namespace atree {

namespace {

struct RawTree {
  std::vector<std::optional<std::int64_t>> parents;
  std::vector<bool> is_leaf;
};

RawTree random_shape(std::mt19937_64& rng, std::size_t max_vertices) {
  const std::size_t n = 1 + static_cast<std::size_t>(rng() % max_vertices);
  RawTree raw;
  raw.parents.resize(n);
  raw.is_leaf.assign(n, true);
  for (std::size_t i = 1; i < n; ++i) {
    const auto p = static_cast<std::int64_t>(rng() % i);
    raw.parents[i] = p;
    raw.is_leaf[static_cast<std::size_t>(p)] = false;
  }
  return raw;
}

Complex random_weight(std::mt19937_64& rng, const CorpusOptions& o) {
  const double modulus = o.min_modulus + (o.max_modulus - o.min_modulus) * unit_double(rng);
  if (!o.complex_phases) return modulus;
  return std::polar(modulus, 2 * std::numbers::pi * unit_double(rng));
}

}  // namespace

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

CorpusInstance random_instance(std::uint64_t seed, const CorpusOptions& options) {
  std::mt19937_64 rng(seed);
  const auto raw = random_shape(rng, options.max_vertices);
  const auto tree = finite_tree(raw.parents);
  std::map<VertexId, Complex> table;
  for (std::size_t i = 1; i < raw.parents.size(); ++i) {
    const Complex w = random_weight(rng, options);
    table.emplace(static_cast<std::int64_t>(i), options.zero_leaf_weights && raw.is_leaf[i] ? Complex{} : w);
  }
  return {"random-" + std::to_string(seed), seed, WeightSystem::from_table(tree, std::move(table))};
}

std::vector<CorpusInstance> random_corpus(std::size_t count, std::uint64_t seed) {
  std::vector<CorpusInstance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CorpusOptions o;
    o.complex_phases = i % 4 == 3;
    o.zero_leaf_weights = i % 10 == 5;
    if (i % 25 == 24) o.min_modulus = o.max_modulus = 0;
    auto inst = random_instance(seed + i, o);
    if (i % 25 == 24) inst.name = "zero-" + std::to_string(seed + i);
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<CorpusInstance> violating_corpus(std::size_t count, std::uint64_t seed) {
  std::vector<CorpusInstance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(seed + i);
    CorpusOptions o;
    o.complex_phases = i % 3 == 2;
    o.max_vertices = 39;
    auto raw = random_shape(rng, o.max_vertices);
    // A leaf edge needs at least two vertices.
    if (raw.parents.size() == 1) {
      raw.parents.push_back(0);
      raw.is_leaf = {false, true};
    }
    std::vector<std::size_t> leaves;
    for (std::size_t v = 1; v < raw.parents.size(); ++v) {
      if (raw.is_leaf[v]) leaves.push_back(v);
    }
    const auto chosen = leaves[rng() % leaves.size()];
    const bool isolate = i % 2 == 1;
    std::map<VertexId, Complex> table;
    for (std::size_t v = 1; v < raw.parents.size(); ++v) {
      const Complex w = random_weight(rng, o);
      table.emplace(static_cast<std::int64_t>(v), isolate && v != chosen ? Complex{} : w);
    }
    out.push_back({"violating-" + std::to_string(seed + i) + "-leaf-" + std::to_string(chosen), seed + i,
                   WeightSystem::from_table(finite_tree(raw.parents), std::move(table))});
  }
  return out;
}

}  // namespace atree
