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

#include "atree/tree.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <numeric>
#include <set>

#include "atree/errors.hpp"

namespace atree {

// ---------------------------------------------------------------------------
// PaperVertex

PaperVertex PaperVertex::make(std::int64_t level, std::vector<std::uint64_t> digits) {
  auto first = std::find_if(digits.begin(), digits.end(), [](std::uint64_t d) { return d != 0; });
  digits.erase(digits.begin(), first);
  return PaperVertex{level, std::move(digits)};
}

std::int64_t PaperVertex::digit_at(std::int64_t n) const {
  if (n > level) return -1;
  const auto offset = level - n;  // 0 for the last entry
  if (offset >= static_cast<std::int64_t>(digits.size())) return 0;
  return static_cast<std::int64_t>(digits[digits.size() - 1 - static_cast<std::size_t>(offset)]);
}

std::uint64_t PaperVertex::digit_sum() const {
  return std::accumulate(digits.begin(), digits.end(), std::uint64_t{0});
}

std::strong_ordering operator<=>(const PaperVertex& a, const PaperVertex& b) {
  if (auto c = a.level <=> b.level; c != 0) return c;
  // Compare as right-aligned digit strings so that the order agrees with the
  // entry-wise order from the top position downwards.
  if (auto c = a.digits.size() <=> b.digits.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.digits.size(); ++i) {
    if (auto c = a.digits[i] <=> b.digits[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string encode(const PaperVertex& v) {
  std::string out = std::to_string(v.level);
  out += ':';
  for (std::size_t i = 0; i < v.digits.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v.digits[i]);
  }
  return out;
}

namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw StructuralError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

PaperVertex decode_paper_vertex(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw StructuralError("paper vertex must look like '<level>:<d1>,<d2>,...', got '" +
                          std::string(text) + "'");
  }
  const auto level = parse_number<std::int64_t>(text.substr(0, colon), "vertex level");
  std::vector<std::uint64_t> digits;
  auto rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    digits.push_back(parse_number<std::uint64_t>(rest.substr(0, comma), "vertex digit"));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
    if (rest.empty()) throw StructuralError("trailing comma in paper vertex");
  }
  return PaperVertex::make(level, std::move(digits));
}

std::string to_string(const VertexId& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  return encode(std::get<PaperVertex>(v));
}

std::string_view to_string(TreeKind kind) {
  switch (kind) {
    case TreeKind::Finite: return "finite";
    case TreeKind::NatPath: return "nat_path";
    case TreeKind::IntPath: return "int_path";
    case TreeKind::PaperTree: return "paper";
    case TreeKind::DescendantSubtree: return "descendant";
    case TreeKind::Lazy: return "lazy";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Tree families

bool TreeImpl::is_descendant(const VertexId& v, const VertexId& apex) const {
  // Generic walk; bounded because rootless trees never terminate otherwise.
  constexpr std::size_t kMaxSteps = 1'000'000;
  std::optional<VertexId> cur = v;
  for (std::size_t step = 0; cur && step < kMaxSteps; ++step) {
    if (*cur == apex) return true;
    cur = parent(*cur);
  }
  if (cur) throw EvaluationError("ancestor walk from " + to_string(v) + " did not terminate");
  return false;
}

namespace {

std::int64_t as_int(const VertexId& v) { return std::get<std::int64_t>(v); }

class FiniteTreeImpl final : public TreeImpl {
 public:
  FiniteTreeImpl(std::vector<std::optional<std::int64_t>> parents, std::int64_t root)
      : parents_(std::move(parents)), children_(parents_.size()), root_(root) {
    for (std::size_t i = 0; i < parents_.size(); ++i) {
      if (parents_[i]) children_[static_cast<std::size_t>(*parents_[i])].push_back(static_cast<std::int64_t>(i));
    }
  }

  TreeKind kind() const override { return TreeKind::Finite; }
  std::optional<VertexId> root() const override { return VertexId{root_}; }
  bool contains(const VertexId& v) const override {
    const auto* i = std::get_if<std::int64_t>(&v);
    return i && *i >= 0 && static_cast<std::size_t>(*i) < parents_.size();
  }
  std::optional<VertexId> parent(const VertexId& v) const override {
    const auto& p = parents_[static_cast<std::size_t>(as_int(v))];
    if (!p) return std::nullopt;
    return VertexId{*p};
  }
  std::optional<std::size_t> child_count(const VertexId& v) const override {
    return children_[static_cast<std::size_t>(as_int(v))].size();
  }
  VertexId child(const VertexId& v, std::size_t i) const override {
    return children_[static_cast<std::size_t>(as_int(v))].at(i);
  }
  std::optional<std::vector<VertexId>> vertices() const override {
    std::vector<VertexId> out;
    out.reserve(parents_.size());
    for (std::size_t i = 0; i < parents_.size(); ++i) out.emplace_back(static_cast<std::int64_t>(i));
    return out;
  }

 private:
  std::vector<std::optional<std::int64_t>> parents_;
  std::vector<std::vector<std::int64_t>> children_;
  std::int64_t root_;
};

class PathImpl final : public TreeImpl {
 public:
  explicit PathImpl(bool rooted) : rooted_(rooted) {}

  TreeKind kind() const override { return rooted_ ? TreeKind::NatPath : TreeKind::IntPath; }
  std::optional<VertexId> root() const override {
    if (rooted_) return VertexId{std::int64_t{0}};
    return std::nullopt;
  }
  bool contains(const VertexId& v) const override {
    const auto* i = std::get_if<std::int64_t>(&v);
    return i && (!rooted_ || *i >= 0);
  }
  std::optional<VertexId> parent(const VertexId& v) const override {
    const auto n = as_int(v);
    if (rooted_ && n == 0) return std::nullopt;
    return VertexId{n - 1};
  }
  std::optional<std::size_t> child_count(const VertexId&) const override { return 1; }
  VertexId child(const VertexId& v, std::size_t i) const override {
    if (i != 0) throw StructuralError("path vertices have a single child");
    return VertexId{as_int(v) + 1};
  }
  bool is_descendant(const VertexId& v, const VertexId& apex) const override {
    return as_int(v) >= as_int(apex);
  }

 private:
  bool rooted_;
};

class PaperTreeImpl final : public TreeImpl {
 public:
  TreeKind kind() const override { return TreeKind::PaperTree; }
  std::optional<VertexId> root() const override { return std::nullopt; }
  bool contains(const VertexId& v) const override {
    const auto* p = std::get_if<PaperVertex>(&v);
    return p && p->is_canonical();
  }
  std::optional<VertexId> parent(const VertexId& v) const override {
    const auto& p = std::get<PaperVertex>(v);
    PaperVertex up{p.level - 1, p.digits};
    if (!up.digits.empty()) up.digits.pop_back();
    return VertexId{std::move(up)};
  }
  std::optional<std::size_t> child_count(const VertexId&) const override { return std::nullopt; }
  VertexId child(const VertexId& v, std::size_t i) const override {
    const auto& p = std::get<PaperVertex>(v);
    PaperVertex down{p.level + 1, p.digits};
    if (!down.digits.empty() || i != 0) down.digits.push_back(i);
    return VertexId{std::move(down)};
  }
  bool is_descendant(const VertexId& v, const VertexId& apex) const override {
    const auto& d = std::get<PaperVertex>(v);
    const auto& a = std::get<PaperVertex>(apex);
    if (d.level < a.level) return false;
    const auto drop = static_cast<std::uint64_t>(d.level - a.level);
    const std::size_t keep = drop >= d.digits.size() ? 0 : d.digits.size() - drop;
    return keep == a.digits.size() && std::equal(a.digits.begin(), a.digits.end(), d.digits.begin());
  }
};

class DescendantImpl final : public TreeImpl {
 public:
  DescendantImpl(DirectedTree base, VertexId apex) : base_(std::move(base)), apex_(std::move(apex)) {}

  TreeKind kind() const override { return TreeKind::DescendantSubtree; }
  std::optional<VertexId> root() const override { return apex_; }
  bool contains(const VertexId& v) const override {
    return base_.contains(v) && base_.is_descendant(v, apex_);
  }
  std::optional<VertexId> parent(const VertexId& v) const override {
    if (v == apex_) return std::nullopt;
    return base_.impl()->parent(v);
  }
  std::optional<std::size_t> child_count(const VertexId& v) const override {
    return base_.impl()->child_count(v);
  }
  VertexId child(const VertexId& v, std::size_t i) const override { return base_.impl()->child(v, i); }
  bool is_descendant(const VertexId& v, const VertexId& apex) const override {
    return base_.is_descendant(v, apex);
  }
  std::optional<std::vector<VertexId>> vertices() const override {
    auto all = base_.impl()->vertices();
    if (!all) return std::nullopt;
    std::vector<VertexId> out;
    for (auto& v : *all) {
      if (base_.is_descendant(v, apex_)) out.push_back(std::move(v));
    }
    return out;
  }

  const DirectedTree& base() const { return base_; }
  const VertexId& apex() const { return apex_; }

 private:
  DirectedTree base_;
  VertexId apex_;
};

class LazyImpl final : public TreeImpl {
 public:
  explicit LazyImpl(LazyTreeSpec spec) : spec_(std::move(spec)) {}

  TreeKind kind() const override { return TreeKind::Lazy; }
  std::optional<VertexId> root() const override { return spec_.root; }
  bool contains(const VertexId& v) const override { return spec_.contains(v); }
  std::optional<VertexId> parent(const VertexId& v) const override { return spec_.parent(v); }
  std::optional<std::size_t> child_count(const VertexId& v) const override {
    return spec_.child_count(v);
  }
  VertexId child(const VertexId& v, std::size_t i) const override { return spec_.child(v, i); }

 private:
  LazyTreeSpec spec_;
};

}  // namespace

// ---------------------------------------------------------------------------
// ChildStream

ChildStream::ChildStream(std::shared_ptr<const TreeImpl> tree, VertexId parent)
    : tree_(std::move(tree)), parent_(std::move(parent)), count_(tree_->child_count(parent_)) {}

std::optional<VertexId> ChildStream::next() {
  if (count_ && index_ >= *count_) return std::nullopt;
  return tree_->child(parent_, index_++);
}

// ---------------------------------------------------------------------------
// DirectedTree

DirectedTree::DirectedTree(std::shared_ptr<const TreeImpl> impl) : impl_(std::move(impl)) {}

TreeKind DirectedTree::family() const {
  const DirectedTree* t = this;
  while (t->kind() == TreeKind::DescendantSubtree) t = t->base();
  return t->kind();
}

void DirectedTree::require(const VertexId& v) const {
  if (!impl_->contains(v)) {
    throw StructuralError("vertex " + to_string(v) + " is not in the " +
                          std::string(to_string(kind())) + " tree");
  }
}

std::optional<VertexId> DirectedTree::parent(const VertexId& v) const {
  require(v);
  return impl_->parent(v);
}

std::optional<std::size_t> DirectedTree::child_count(const VertexId& v) const {
  require(v);
  return impl_->child_count(v);
}

VertexId DirectedTree::child(const VertexId& v, std::size_t i) const {
  require(v);
  const auto n = impl_->child_count(v);
  if (n && i >= *n) {
    throw StructuralError("vertex " + to_string(v) + " has only " + std::to_string(*n) + " children");
  }
  return impl_->child(v, i);
}

ChildStream DirectedTree::children(const VertexId& v) const {
  require(v);
  return ChildStream(impl_, v);
}

std::vector<VertexId> DirectedTree::child_list(const VertexId& v) const {
  const auto n = child_count(v);
  if (!n) throw UnsupportedRepresentation("vertex " + to_string(v) + " has infinitely many children");
  std::vector<VertexId> out;
  out.reserve(*n);
  for (std::size_t i = 0; i < *n; ++i) out.push_back(impl_->child(v, i));
  return out;
}

std::vector<VertexId> DirectedTree::vertices() const {
  auto all = impl_->vertices();
  if (!all) throw UnsupportedRepresentation(std::string(to_string(kind())) + " tree is infinite");
  return std::move(*all);
}

bool DirectedTree::is_descendant(const VertexId& v, const VertexId& apex) const {
  require(v);
  require(apex);
  return impl_->is_descendant(v, apex);
}

const DirectedTree* DirectedTree::base() const {
  if (const auto* d = dynamic_cast<const DescendantImpl*>(impl_.get())) return &d->base();
  return nullptr;
}

std::optional<VertexId> DirectedTree::apex() const {
  if (const auto* d = dynamic_cast<const DescendantImpl*>(impl_.get())) return d->apex();
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Constructors

DirectedTree paper_tree() {
  static const auto impl = std::make_shared<const PaperTreeImpl>();
  return DirectedTree(impl);
}

DirectedTree finite_tree(const std::vector<std::optional<std::int64_t>>& parents) {
  const auto n = static_cast<std::int64_t>(parents.size());
  if (n == 0) throw StructuralError("a tree needs at least one vertex");
  std::optional<std::int64_t> root;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& p = parents[static_cast<std::size_t>(i)];
    if (!p) {
      if (root) {
        throw StructuralError("multiple roots: " + std::to_string(*root) + " and " + std::to_string(i));
      }
      root = i;
    } else if (*p < 0 || *p >= n) {
      throw StructuralError("parent index " + std::to_string(*p) + " of vertex " + std::to_string(i) +
                            " is out of range");
    } else if (*p == i) {
      throw StructuralError("vertex " + std::to_string(i) + " is its own parent");
    }
  }
  if (!root) throw StructuralError("no root: every vertex has a parent (cycle)");
  // Every vertex must reach the root; anything else sits on a cycle.
  std::vector<char> state(static_cast<std::size_t>(n), 0);  // 0 new, 1 on stack, 2 done
  state[static_cast<std::size_t>(*root)] = 2;
  for (std::int64_t i = 0; i < n; ++i) {
    std::vector<std::int64_t> chain;
    std::int64_t cur = i;
    while (state[static_cast<std::size_t>(cur)] == 0) {
      state[static_cast<std::size_t>(cur)] = 1;
      chain.push_back(cur);
      cur = *parents[static_cast<std::size_t>(cur)];
    }
    if (state[static_cast<std::size_t>(cur)] == 1) {
      throw StructuralError("cycle through vertex " + std::to_string(cur));
    }
    for (auto c : chain) state[static_cast<std::size_t>(c)] = 2;
  }
  return DirectedTree(std::make_shared<const FiniteTreeImpl>(parents, *root));
}

DirectedTree nat_path() {
  static const auto impl = std::make_shared<const PathImpl>(true);
  return DirectedTree(impl);
}

DirectedTree int_path() {
  static const auto impl = std::make_shared<const PathImpl>(false);
  return DirectedTree(impl);
}

DirectedTree descendant_subtree(const DirectedTree& base, const VertexId& apex) {
  base.require(apex);
  return DirectedTree(std::make_shared<const DescendantImpl>(base, apex));
}

DirectedTree lazy_tree(LazyTreeSpec spec) {
  if (!spec.contains || !spec.parent || !spec.child_count || !spec.child) {
    throw ContractViolation("lazy tree needs contains, parent, child_count and child callbacks");
  }
  return DirectedTree(std::make_shared<const LazyImpl>(std::move(spec)));
}

DirectedTree infinite_star() {
  LazyTreeSpec spec;
  spec.root = VertexId{std::int64_t{0}};
  spec.contains = [](const VertexId& v) {
    const auto* i = std::get_if<std::int64_t>(&v);
    return i && *i >= 0;
  };
  spec.parent = [](const VertexId& v) -> std::optional<VertexId> {
    if (as_int(v) == 0) return std::nullopt;
    return VertexId{std::int64_t{0}};
  };
  spec.child_count = [](const VertexId& v) -> std::optional<std::size_t> {
    if (as_int(v) == 0) return std::nullopt;
    return 0;
  };
  spec.child = [](const VertexId&, std::size_t i) { return VertexId{static_cast<std::int64_t>(i + 1)}; };
  return lazy_tree(std::move(spec));
}

std::vector<VertexId> breadth_first(const DirectedTree& tree, const VertexId& start,
                                    std::size_t max_depth, std::size_t child_bound) {
  tree.require(start);
  std::vector<VertexId> out;
  std::deque<std::pair<VertexId, std::size_t>> queue{{start, 0}};
  while (!queue.empty()) {
    auto [v, depth] = std::move(queue.front());
    queue.pop_front();
    if (depth < max_depth) {
      auto stream = tree.children(v);
      for (std::size_t i = 0; i < child_bound; ++i) {
        auto c = stream.next();
        if (!c) break;
        queue.emplace_back(std::move(*c), depth + 1);
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace atree
