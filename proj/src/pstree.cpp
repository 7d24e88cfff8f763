#include "pstray/pstree.hpp"

#include <algorithm>
#include <cassert>

namespace pstray {

std::optional<NodeId> TrayTree::find_child(NodeId v, PrevSymbol key) const noexcept {
  const auto keys = keys_of(v);
  const auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) return std::nullopt;
  return children_of(v)[static_cast<std::size_t>(it - keys.begin())];
}

namespace {

struct Proto {
  std::uint32_t depth;
  std::uint32_t lb;
  std::uint32_t rb;
  std::uint32_t leaf_pos;
  std::vector<std::uint32_t> kids;
};

struct Open {
  std::uint32_t depth;
  std::vector<std::uint32_t> kids;
};

}  // namespace

TrayTree build_tree(const PsaIndex& index, std::span<const PrevSymbol> text_prev) {
  const std::size_t n = index.size();
  std::vector<Proto> protos;
  protos.reserve(2 * n);

  const auto close = [&](Open&& open) {
    const std::uint32_t lb = protos[open.kids.front()].lb;
    const std::uint32_t rb = protos[open.kids.back()].rb;
    protos.push_back({open.depth, lb, rb, kAbsent, std::move(open.kids)});
    return static_cast<std::uint32_t>(protos.size() - 1);
  };

  // lcp-interval construction: the stack holds the open intervals on the
  // path to the current leaf, depths strictly increasing
  std::vector<Open> stack;
  stack.push_back({0, {}});
  for (std::size_t r = 0; r < n; ++r) {
    const std::uint32_t start = index.psa[r];
    protos.push_back({static_cast<std::uint32_t>(n - start), static_cast<std::uint32_t>(r),
                      static_cast<std::uint32_t>(r), start, {}});
    auto pending = static_cast<std::uint32_t>(protos.size() - 1);
    const std::uint32_t h = r + 1 < n ? index.plcp[r + 1] : 0;
    while (stack.back().depth > h) {
      stack.back().kids.push_back(pending);
      Open top = std::move(stack.back());
      stack.pop_back();
      pending = close(std::move(top));
    }
    if (stack.back().depth == h) {
      stack.back().kids.push_back(pending);
    } else {
      stack.push_back({h, {pending}});
    }
  }
  assert(stack.size() == 1);
  const std::uint32_t root = close(std::move(stack.back()));

  // renumber in preorder with contiguous child lists
  TrayTree tree;
  tree.nodes.resize(protos.size());
  std::vector<NodeId> new_id(protos.size(), kNilNode);
  std::vector<std::uint32_t> order;
  order.reserve(protos.size());
  std::vector<std::uint32_t> dfs{root};
  while (!dfs.empty()) {
    const std::uint32_t p = dfs.back();
    dfs.pop_back();
    new_id[p] = static_cast<NodeId>(order.size());
    order.push_back(p);
    const auto& kids = protos[p].kids;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) dfs.push_back(*it);
  }

  tree.children.reserve(protos.size() - 1);
  tree.child_keys.reserve(protos.size() - 1);
  for (std::uint32_t p : order) {
    const Proto& proto = protos[p];
    TreeNode& node = tree.nodes[new_id[p]];
    node.depth = proto.depth;
    node.lb = proto.lb;
    node.rb = proto.rb;
    node.leaf_pos = proto.leaf_pos;
    node.edge_start = index.psa[proto.lb];
    node.child_begin = static_cast<std::uint32_t>(tree.children.size());
    node.child_count = static_cast<std::uint32_t>(proto.kids.size());
    for (std::uint32_t k : proto.kids) {
      TreeNode& child = tree.nodes[new_id[k]];
      child.parent = new_id[p];
      child.depth_begin = proto.depth;
      tree.children.push_back(new_id[k]);
      tree.child_keys.push_back(prev_char_in_window(text_prev, index.psa[protos[k].lb], proto.depth + 1));
    }
  }
  return tree;
}

PrevSymbol edge_symbol(const TrayTree& tree, std::span<const PrevSymbol> text_prev, NodeId v,
                       std::size_t offset) {
  const TreeNode& node = tree[v];
  assert(offset >= 1 && offset <= node.edge_length());
  return prev_char_in_window(text_prev, node.edge_start, node.depth_begin + offset);
}

PrevSeq path_label(const TrayTree& tree, std::span<const PrevSymbol> text_prev, NodeId v) {
  const TreeNode& node = tree[v];
  PrevSeq out;
  out.reserve(node.depth);
  for (std::size_t d = 1; d <= node.depth; ++d)
    out.push_back(prev_char_in_window(text_prev, node.edge_start, d));
  return out;
}

std::optional<std::string> check_tree(const TrayTree& tree, const PsaIndex& index,
                                      std::span<const PrevSymbol> text_prev) {
  const std::size_t n = index.size();
  if (tree.nodes.empty()) return "empty tree";
  if (tree.nodes.size() > 2 * n) return "more than 2n-1 nodes";
  if (tree.children.size() + 1 != tree.nodes.size()) return "child pool size mismatch";
  if (tree.child_keys.size() != tree.children.size()) return "child key pool size mismatch";
  const TreeNode& root = tree[TrayTree::root()];
  if (root.parent != kNilNode || root.depth != 0 || root.lb != 0 || root.rb + 1 != n)
    return "root does not span the whole PSA";

  std::size_t leaves = 0;
  for (NodeId v = 0; v < tree.size(); ++v) {
    const TreeNode& node = tree[v];
    const std::string at = " at node " + std::to_string(v);
    if (node.lb > node.rb || node.rb >= n) return "bad leaf range" + at;
    if (node.edge_start != index.psa[node.lb]) return "edge start is not the leftmost leaf" + at;
    if (node.is_leaf()) {
      ++leaves;
      if (node.child_count != 0) return "leaf with children" + at;
      if (node.lb != node.rb || index.psa[node.lb] != node.leaf_pos) return "leaf not at its PSA rank" + at;
      if (node.depth != n - node.leaf_pos) return "leaf depth is not the suffix length" + at;
      continue;
    }
    if (v != TrayTree::root() && node.child_count < 2) return "unary internal node" + at;
    if (static_cast<std::size_t>(node.child_begin) + node.child_count > tree.children.size())
      return "child list out of bounds" + at;
    const auto kids = tree.children_of(v);
    const auto keys = tree.keys_of(v);
    std::uint32_t expect_lb = node.lb;
    for (std::size_t c = 0; c < kids.size(); ++c) {
      if (kids[c] >= tree.size()) return "child id out of bounds" + at;
      const TreeNode& child = tree[kids[c]];
      if (child.parent != v) return "parent link mismatch" + at;
      if (child.lb != expect_lb) return "children ranges do not partition parent" + at;
      expect_lb = child.rb + 1;
      if (child.depth_begin != node.depth || child.depth <= node.depth) return "edge depth mismatch" + at;
      if (child.lb >= n || child.edge_start >= n || child.edge_start + child.depth > n)
        return "child edge runs past the text" + at;
      if (keys[c] != prev_char_in_window(text_prev, child.edge_start, node.depth + 1))
        return "child key mismatch" + at;
      if (c > 0 && !(keys[c - 1] < keys[c])) return "children not strictly ordered" + at;
    }
    if (expect_lb != node.rb + 1) return "children ranges do not cover parent" + at;
    // the range shares exactly the node's label
    if (v != TrayTree::root()) {
      const std::uint32_t inner =
          index.rmq ? index.rmq->min(node.lb + 1, node.rb)
                    : *std::min_element(index.plcp.begin() + node.lb + 1, index.plcp.begin() + node.rb + 1);
      if (inner != node.depth) return "depth is not the lcp of the range" + at;
    }
  }
  if (leaves != n) return "leaf count != n";
  return std::nullopt;
}

}  // namespace pstray
