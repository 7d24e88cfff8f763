#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pstray/alphabet.hpp"
#include "pstray/encoding.hpp"
#include "pstray/pstree.hpp"
#include "pstray/suffix_structures.hpp"

namespace pstray {

// Per-node tray data. A p-node has at least max{sigma, pi} leaves below it;
// a branching p-node has at least two p-node children and owns a p-array of
// sigma + pi child references indexed by rank - 1.
struct TrayAnnotations {
  static constexpr std::uint8_t kPNode = 1;
  static constexpr std::uint8_t kBranching = 2;

  std::uint32_t threshold = 0;     // max{sigma, pi}
  std::uint32_t parray_width = 0;  // sigma + pi
  std::uint32_t pi = 0;

  std::vector<std::uint8_t> flags;
  std::vector<NodeId> heavy_child;  // unique p-node child of a non-branching p-node
  std::vector<std::uint32_t> rep_pos;      // largest leaf position below a p-node
  std::vector<std::uint32_t> farr_offset;  // f-array of T[rep_pos:] in farr_pool
  std::vector<std::uint32_t> farr_pool;
  std::vector<std::uint32_t> parray_offset;  // p-array in parray_pool
  std::vector<NodeId> parray_pool;

  bool is_pnode(NodeId v) const noexcept { return (flags[v] & kPNode) != 0; }
  bool is_branching(NodeId v) const noexcept { return (flags[v] & kBranching) != 0; }
  std::span<const std::uint32_t> rep_farr(NodeId v) const noexcept {
    if (farr_offset[v] == kAbsent) return {};
    return std::span(farr_pool).subspan(farr_offset[v], pi);
  }
  std::span<const NodeId> parray(NodeId v) const noexcept {
    if (parray_offset[v] == kAbsent) return {};
    return std::span(parray_pool).subspan(parray_offset[v], parray_width);
  }
  std::size_t pnode_count() const noexcept;
  std::size_t branching_count() const noexcept;

  bool operator==(const TrayAnnotations&) const = default;
};

// Fills flags, heavy_child and the thresholds.
TrayAnnotations classify_pnodes(const TrayTree& tree, const PText& text);

// Fills rep_pos and the f-array of every p-node with one right-to-left sweep.
void propagate_rep_pairs(const TrayTree& tree, TrayAnnotations& ann, const PText& text);

// One (p-node slot, first occurrence, symbol) element of the set sorted to
// recover each p-node's first-occurrence order of parameterized symbols.
struct OccurrenceTriple {
  std::uint32_t slot;
  std::uint32_t first;
  Symbol symbol;
  bool operator==(const OccurrenceTriple&) const = default;
};

enum class TripleSort { Radix, Comparison };

// Sorts by (slot, first). Radix is a two-pass LSD counting sort; Comparison
// is std::sort and serves as its cross-check.
void sort_triples(std::vector<OccurrenceTriple>& triples, std::uint32_t slot_bound,
                  std::uint32_t first_bound, TripleSort how);

// f_{v, spe(v)} for every p-node v, where v is T[rep_pos : rep_pos + depth).
// Entries for other nodes are empty.
std::vector<PFunction> pnode_functions(const TrayTree& tree, const TrayAnnotations& ann,
                                       const PText& text, TripleSort how = TripleSort::Radix);

// Child reached from p-node v by each rank, derived from f_{v, spe(v)} and
// the first symbols of v's child edges. Throws Error(Construction) if two
// child edges claim the same cell.
std::vector<NodeId> parray_cells(const TrayTree& tree, const TrayAnnotations& ann, const PText& text,
                                 NodeId v, const PFunction& fn);

// Fills parray at every branching p-node.
void build_parrays(const TrayTree& tree, TrayAnnotations& ann, const PText& text,
                   TripleSort how = TripleSort::Radix);

struct PSTrayIndex {
  PText text;
  PrevSeq text_prev;
  PsaIndex sa;
  TrayTree tree;
  TrayAnnotations ann;

  std::size_t size() const noexcept { return text.size(); }
};

PSTrayIndex assemble(PText text, bool with_rmq = true);

struct QueryStats {
  std::uint64_t symbol_comparisons = 0;
  std::uint64_t nodes_visited = 0;
  std::uint64_t parray_lookups = 0;
  std::uint64_t psa_probes = 0;
  std::uint64_t max_range_searched = 0;
};

struct QueryResult {
  std::vector<std::uint32_t> positions;  // 0-based, ascending
  QueryStats stats;
};

// All 0-based i with T[i : i + m) p-matching the pattern, which is given in
// the text's symbol universe (see encode_pattern). Throws Error(Query) on an
// empty pattern.
QueryResult query(const PSTrayIndex& index, std::span<const Symbol> pattern);
QueryResult query_tokens(const PSTrayIndex& index, std::span<const std::string> pattern);
QueryResult query_raw(const PSTrayIndex& index, std::string_view pattern);

// Baseline: binary search over the whole PSA, no tree.
QueryResult query_psa_only(const PSTrayIndex& index, std::span<const Symbol> pattern);

struct StructureReport {
  std::size_t n = 0;
  std::uint32_t pi = 0;
  std::uint32_t sigma = 0;
  std::size_t nodes = 0;
  std::size_t leaves = 0;
  std::size_t pnodes = 0;
  std::size_t branching = 0;
  std::size_t heavy_links = 0;
  std::uint32_t threshold = 0;
  std::size_t parray_cells = 0;
  bool rmq = false;

  // branching * threshold <= n, i.e. branching <= n / max{sigma, pi}
  bool branching_within_bound() const noexcept { return branching * threshold <= n; }
  bool cells_within_bound() const noexcept { return parray_cells <= 2 * n; }
};

StructureReport structure(const PSTrayIndex& index);

// Returns the first violated invariant of the assembled index, if any.
std::optional<std::string> check_index(const PSTrayIndex& index);

}  // namespace pstray
