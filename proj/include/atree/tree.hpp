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

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace atree {

/// Vertex of the sequence tree: a map Z -> Z_+ u {-1} that is -1 above
/// `level` and 0 far below it.
///
/// `digits` holds the entries at positions level-len+1 .. level. Entries
/// further down are 0. Canonical form has no leading zeros, so the all-zero
/// vertex at a given level has an empty digit list.
struct PaperVertex {
  std::int64_t level = 0;
  std::vector<std::uint64_t> digits;

  /// Builds the canonical vertex from an arbitrary (possibly zero-padded) list.
  static PaperVertex make(std::int64_t level, std::vector<std::uint64_t> digits);

  /// Entry at position `n`; 0 below the stored window, -1 above `level`.
  std::int64_t digit_at(std::int64_t n) const;

  /// Last entry v_{M(v)}.
  std::uint64_t last_digit() const { return digits.empty() ? 0 : digits.back(); }

  /// Sum of all entries up to and including `level`.
  std::uint64_t digit_sum() const;

  bool is_canonical() const { return digits.empty() || digits.front() != 0; }

  friend bool operator==(const PaperVertex&, const PaperVertex&) = default;
  friend std::strong_ordering operator<=>(const PaperVertex& a, const PaperVertex& b);
};

/// Text form `<level>:<d1>,<d2>,...`; the all-zero vertex at level 3 is `3:`.
std::string encode(const PaperVertex& v);
PaperVertex decode_paper_vertex(std::string_view text);

/// Integer keys for finite trees and paths, PaperVertex for the sequence tree.
using VertexId = std::variant<std::int64_t, PaperVertex>;

std::string to_string(const VertexId& v);

enum class TreeKind { Finite, NatPath, IntPath, PaperTree, DescendantSubtree, Lazy };

std::string_view to_string(TreeKind kind);

class DirectedTree;

/// Backend interface for a tree family. Implementations are immutable.
class TreeImpl {
 public:
  virtual ~TreeImpl() = default;

  virtual TreeKind kind() const = 0;
  virtual std::optional<VertexId> root() const = 0;
  virtual bool contains(const VertexId& v) const = 0;
  virtual std::optional<VertexId> parent(const VertexId& v) const = 0;
  /// nullopt means countably infinite.
  virtual std::optional<std::size_t> child_count(const VertexId& v) const = 0;
  virtual VertexId child(const VertexId& v, std::size_t i) const = 0;
  /// Whether `v` lies in Des(apex); both are known members.
  virtual bool is_descendant(const VertexId& v, const VertexId& apex) const;
  /// Every vertex in deterministic order; only for finite trees.
  virtual std::optional<std::vector<VertexId>> vertices() const { return std::nullopt; }
};

/// Deterministic stream over Chi(u). Each stream owns its own cursor.
class ChildStream {
 public:
  ChildStream(std::shared_ptr<const TreeImpl> tree, VertexId parent);

  std::optional<VertexId> next();
  std::size_t position() const { return index_; }
  std::optional<std::size_t> size() const { return count_; }

 private:
  std::shared_ptr<const TreeImpl> tree_;
  VertexId parent_;
  std::optional<std::size_t> count_;
  std::size_t index_ = 0;
};

/// Callbacks describing a user-supplied lazy tree.
struct LazyTreeSpec {
  std::optional<VertexId> root;
  std::function<bool(const VertexId&)> contains;
  std::function<std::optional<VertexId>(const VertexId&)> parent;
  std::function<std::optional<std::size_t>(const VertexId&)> child_count;
  std::function<VertexId(const VertexId&, std::size_t)> child;
};

/// Value handle over an immutable tree; cheap to copy and safe to share.
class DirectedTree {
 public:
  explicit DirectedTree(std::shared_ptr<const TreeImpl> impl);

  TreeKind kind() const { return impl_->kind(); }
  /// Family after unwrapping descendant subtrees (PaperTree for Des(u) of the sequence tree).
  TreeKind family() const;

  std::optional<VertexId> root() const { return impl_->root(); }
  bool contains(const VertexId& v) const { return impl_->contains(v); }

  /// Throws StructuralError when `v` is not a vertex.
  std::optional<VertexId> parent(const VertexId& v) const;
  std::optional<std::size_t> child_count(const VertexId& v) const;
  VertexId child(const VertexId& v, std::size_t i) const;
  ChildStream children(const VertexId& v) const;
  /// Materialized Chi(v); throws UnsupportedRepresentation when infinite.
  std::vector<VertexId> child_list(const VertexId& v) const;

  bool is_finite() const { return impl_->vertices().has_value(); }
  /// Throws UnsupportedRepresentation for infinite trees.
  std::vector<VertexId> vertices() const;

  bool is_descendant(const VertexId& v, const VertexId& apex) const;

  /// Base tree and apex when kind() == DescendantSubtree.
  const DirectedTree* base() const;
  std::optional<VertexId> apex() const;

  const std::shared_ptr<const TreeImpl>& impl() const { return impl_; }
  void require(const VertexId& v) const;

 private:
  std::shared_ptr<const TreeImpl> impl_;
};

/// The rootless sequence tree; children append digit n = 0, 1, 2, ... at level+1.
DirectedTree paper_tree();

/// Finite tree from a parent list; exactly one entry is nullopt (the root).
DirectedTree finite_tree(const std::vector<std::optional<std::int64_t>>& parents);

/// Rooted path 0 -> 1 -> 2 -> ...
DirectedTree nat_path();
/// Rootless path ... -> -1 -> 0 -> 1 -> ...
DirectedTree int_path();
/// Des(apex) with apex as root; children are delegated to `base`.
DirectedTree descendant_subtree(const DirectedTree& base, const VertexId& apex);
DirectedTree lazy_tree(LazyTreeSpec spec);
/// Root 0 with children 1, 2, 3, ... all of which are leaves.
DirectedTree infinite_star();

/// Descendants of `start` down to `max_depth` generations, taking at most
/// `child_bound` children per vertex, in BFS order.
std::vector<VertexId> breadth_first(const DirectedTree& tree, const VertexId& start,
                                    std::size_t max_depth, std::size_t child_bound);

}  // namespace atree
