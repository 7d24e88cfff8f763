#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pstray/suffix_structures.hpp"

namespace pstray {

using NodeId = std::uint32_t;
inline constexpr NodeId kNilNode = std::numeric_limits<NodeId>::max();

// A node of the parameterized suffix tree. The edge into the node spells
// prev(T[edge_start:])[depth_begin + 1 .. depth], never materialized.
struct TreeNode {
  NodeId parent = kNilNode;
  std::uint32_t edge_start = 0;
  std::uint32_t depth_begin = 0;
  std::uint32_t depth = 0;
  std::uint32_t lb = 0;  // PSA interval of the subtree, inclusive
  std::uint32_t rb = 0;
  std::uint32_t child_begin = 0;
  std::uint32_t child_count = 0;
  std::uint32_t leaf_pos = kAbsent;  // suffix start for leaves

  bool is_leaf() const noexcept { return leaf_pos != kAbsent; }
  std::uint32_t edge_length() const noexcept { return depth - depth_begin; }
  std::uint32_t leaf_count() const noexcept { return rb - lb + 1; }
  bool operator==(const TreeNode&) const = default;
};

// Node array in preorder (root = 0) with children stored contiguously and
// ordered by the first symbol of their edge.
struct TrayTree {
  std::vector<TreeNode> nodes;
  std::vector<NodeId> children;
  std::vector<PrevSymbol> child_keys;  // first edge symbol, aligned with children

  static constexpr NodeId root() noexcept { return 0; }
  std::size_t size() const noexcept { return nodes.size(); }
  const TreeNode& operator[](NodeId v) const noexcept { return nodes[v]; }

  std::span<const NodeId> children_of(NodeId v) const noexcept {
    return std::span(children).subspan(nodes[v].child_begin, nodes[v].child_count);
  }
  std::span<const PrevSymbol> keys_of(NodeId v) const noexcept {
    return std::span(child_keys).subspan(nodes[v].child_begin, nodes[v].child_count);
  }
  // Child whose edge starts with key, by binary search over the sorted keys.
  std::optional<NodeId> find_child(NodeId v, PrevSymbol key) const noexcept;
};

TrayTree build_tree(const PsaIndex& index, std::span<const PrevSymbol> text_prev);

// Symbol at 1-based offset within the edge entering node v.
PrevSymbol edge_symbol(const TrayTree& tree, std::span<const PrevSymbol> text_prev, NodeId v,
                       std::size_t offset);

// Full path label of node v as a prev-encoded string.
PrevSeq path_label(const TrayTree& tree, std::span<const PrevSymbol> text_prev, NodeId v);

// Returns the first violated tree invariant, if any.
std::optional<std::string> check_tree(const TrayTree& tree, const PsaIndex& index,
                                      std::span<const PrevSymbol> text_prev);

}  // namespace pstray
