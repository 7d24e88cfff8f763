#include "pstray/tray.hpp"

#include <algorithm>
#include <cassert>

#include "pstray/error.hpp"

namespace pstray {

std::size_t TrayAnnotations::pnode_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(flags.begin(), flags.end(), [](auto f) { return (f & kPNode) != 0; }));
}

std::size_t TrayAnnotations::branching_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(flags.begin(), flags.end(), [](auto f) { return (f & kBranching) != 0; }));
}

TrayAnnotations classify_pnodes(const TrayTree& tree, const PText& text) {
  TrayAnnotations ann;
  ann.pi = text.pi_count;
  ann.threshold = std::max(text.sigma_count, text.pi_count);
  ann.parray_width = text.sigma_count + text.pi_count;
  const std::size_t count = tree.size();
  ann.flags.assign(count, 0);
  ann.heavy_child.assign(count, kNilNode);
  ann.rep_pos.assign(count, kAbsent);
  ann.farr_offset.assign(count, kAbsent);
  ann.parray_offset.assign(count, kAbsent);

  for (NodeId v = 0; v < count; ++v)
    if (tree[v].leaf_count() >= ann.threshold) ann.flags[v] |= TrayAnnotations::kPNode;

  for (NodeId v = 0; v < count; ++v) {
    if (!ann.is_pnode(v)) continue;
    std::size_t pnode_children = 0;
    NodeId last = kNilNode;
    for (NodeId c : tree.children_of(v)) {
      if (ann.is_pnode(c)) {
        ++pnode_children;
        last = c;
      }
    }
    if (pnode_children >= 2) {
      ann.flags[v] |= TrayAnnotations::kBranching;
    } else if (pnode_children == 1) {
      ann.heavy_child[v] = last;
    }
  }
  return ann;
}

void propagate_rep_pairs(const TrayTree& tree, TrayAnnotations& ann, const PText& text) {
  const std::size_t count = tree.size();
  // children follow their parent in preorder, so a reverse scan is bottom-up
  std::vector<std::uint32_t> largest(count, 0);
  for (NodeId v = static_cast<NodeId>(count); v-- > 0;) {
    const TreeNode& node = tree[v];
    if (node.is_leaf()) {
      largest[v] = node.leaf_pos;
    } else {
      for (NodeId c : tree.children_of(v)) largest[v] = std::max(largest[v], largest[c]);
    }
  }

  // bucket p-nodes by their representative position
  std::vector<NodeId> head(text.size(), kNilNode);
  std::vector<NodeId> next(count, kNilNode);
  for (NodeId v = 0; v < count; ++v) {
    if (!ann.is_pnode(v)) continue;
    ann.rep_pos[v] = largest[v];
    next[v] = head[largest[v]];
    head[largest[v]] = v;
  }

  ann.farr_pool.clear();
  ann.farr_pool.reserve(ann.pnode_count() * ann.pi);
  FposSweep sweep(text);
  while (sweep.step()) {
    for (NodeId v = head[sweep.position()]; v != kNilNode; v = next[v]) {
      ann.farr_offset[v] = static_cast<std::uint32_t>(ann.farr_pool.size());
      for (Symbol x = 1; x <= ann.pi; ++x) ann.farr_pool.push_back(sweep.at(x));
    }
  }
}

void sort_triples(std::vector<OccurrenceTriple>& triples, std::uint32_t slot_bound,
                  std::uint32_t first_bound, TripleSort how) {
  if (how == TripleSort::Comparison) {
    std::sort(triples.begin(), triples.end(), [](const auto& a, const auto& b) {
      return a.slot != b.slot ? a.slot < b.slot : a.first < b.first;
    });
    return;
  }
  std::vector<OccurrenceTriple> buffer(triples.size());
  const auto counting_pass = [&](std::uint32_t bound, auto key) {
    std::vector<std::size_t> start(static_cast<std::size_t>(bound) + 1, 0);
    for (const auto& t : triples) ++start[key(t) + 1];
    for (std::size_t k = 1; k < start.size(); ++k) start[k] += start[k - 1];
    for (const auto& t : triples) buffer[start[key(t)]++] = t;
    triples.swap(buffer);
  };
  counting_pass(first_bound, [](const OccurrenceTriple& t) { return t.first; });
  counting_pass(slot_bound, [](const OccurrenceTriple& t) { return t.slot; });
}

std::vector<PFunction> pnode_functions(const TrayTree& tree, const TrayAnnotations& ann,
                                       const PText& text, TripleSort how) {
  std::vector<NodeId> pnodes;
  for (NodeId v = 0; v < tree.size(); ++v)
    if (ann.is_pnode(v)) pnodes.push_back(v);

  std::vector<OccurrenceTriple> triples;
  for (std::uint32_t slot = 0; slot < pnodes.size(); ++slot) {
    const NodeId v = pnodes[slot];
    const auto farr = ann.rep_farr(v);
    for (Symbol x = 1; x <= ann.pi; ++x) {
      const std::uint32_t first = farr[x - 1];
      if (first != kAbsent && first <= tree[v].depth) triples.push_back({slot, first, x});
    }
  }
  sort_triples(triples, static_cast<std::uint32_t>(pnodes.size()),
               static_cast<std::uint32_t>(text.size() + 1), how);

  std::vector<PFunction> out(tree.size());
  for (NodeId v : pnodes) out[v].map.assign(static_cast<std::size_t>(ann.pi) + 1, 0);
  std::size_t k = 0;
  while (k < triples.size()) {
    const std::uint32_t slot = triples[k].slot;
    PFunction& fn = out[pnodes[slot]];
    Symbol next = 0;
    for (; k < triples.size() && triples[k].slot == slot; ++k) fn.map[triples[k].symbol] = ++next;
  }
  return out;
}

std::vector<NodeId> parray_cells(const TrayTree& tree, const TrayAnnotations& ann, const PText& text,
                                 NodeId v, const PFunction& fn) {
  std::vector<NodeId> cells(ann.parray_width, kNilNode);
  const auto set_cell = [&](Symbol x, NodeId child) {
    NodeId& cell = cells[rank(x, text) - 1];
    if (cell != kNilNode)
      throw Error(ErrorKind::Construction,
                  "p-array cell " + std::to_string(x) + " of node " + std::to_string(v) + " claimed twice");
    cell = child;
  };

  const std::size_t depth = tree[v].depth;
  const std::size_t i = ann.rep_pos[v];
  const auto used =
      static_cast<Symbol>(std::count_if(fn.map.begin() + 1, fn.map.end(), [](Symbol s) { return s != 0; }));
  const auto kids = tree.children_of(v);
  const auto keys = tree.keys_of(v);
  for (std::size_t c = 0; c < kids.size(); ++c) {
    const PrevSymbol key = keys[c];
    if (key.is_static()) {
      set_cell(key.static_id(), kids[c]);
    } else if (key.dist() > 0) {
      // the extension repeats spe(v) at 1-based position depth - k + 1
      const Symbol image = fn(text.symbols[i + depth - key.dist()]);
      if (image == 0)
        throw Error(ErrorKind::Construction, "p-function undefined on edge of node " + std::to_string(v));
      set_cell(image, kids[c]);
    } else {
      for (Symbol x = used + 1; x <= ann.pi; ++x) set_cell(x, kids[c]);
    }
  }
  return cells;
}

void build_parrays(const TrayTree& tree, TrayAnnotations& ann, const PText& text, TripleSort how) {
  const auto functions = pnode_functions(tree, ann, text, how);
  ann.parray_pool.clear();
  ann.parray_pool.reserve(ann.branching_count() * ann.parray_width);
  for (NodeId v = 0; v < tree.size(); ++v) {
    if (!ann.is_branching(v)) continue;
    const auto cells = parray_cells(tree, ann, text, v, functions[v]);
    ann.parray_offset[v] = static_cast<std::uint32_t>(ann.parray_pool.size());
    ann.parray_pool.insert(ann.parray_pool.end(), cells.begin(), cells.end());
  }
}

PSTrayIndex assemble(PText text, bool with_rmq) {
  PSTrayIndex index;
  index.text = std::move(text);
  index.text_prev = prev_encode(index.text.symbols, index.text.pi_count);
  index.sa = build_psa(index.text, index.text_prev, with_rmq);
  index.tree = build_tree(index.sa, index.text_prev);
  index.ann = classify_pnodes(index.tree, index.text);
  propagate_rep_pairs(index.tree, index.ann, index.text);
  build_parrays(index.tree, index.ann, index.text);
  return index;
}

namespace {

class QueryRun {
 public:
  QueryRun(const PSTrayIndex& index, std::span<const Symbol> pattern)
      : index_(index),
        pattern_prev_(prev_encode(pattern, index.text.pi_count)),
        pattern_spe_(spe(pattern, index.text.pi_count)) {}

  QueryResult run() {
    const TrayTree& tree = index_.tree;
    const TrayAnnotations& ann = index_.ann;
    const std::size_t m = pattern_prev_.size();
    NodeId v = TrayTree::root();
    std::size_t d = 0;
    while (true) {
      ++result_.stats.nodes_visited;
      if (d == m) return whole(v);
      if (ann.is_branching(v)) {
        const Symbol x = pattern_spe_[d];
        if (x == 0 || x > index_.text.universe()) return finish();
        ++result_.stats.parray_lookups;
        const NodeId child = ann.parray(v)[x - 1];
        if (child == kNilNode) return finish();
        // the p-array entry already certifies symbol d + 1
        if (!ann.is_pnode(child)) return search(tree[child].lb, tree[child].rb, d + 1);
        if (!match_edge(child, 2)) return finish();
        if (m <= tree[child].depth) return whole(child);
        v = child;
        d = tree[child].depth;
        continue;
      }
      const NodeId heavy = ann.heavy_child[v];
      const TreeNode& node = tree[v];
      if (heavy == kNilNode) return search(node.lb, node.rb, d);
      const PrevSymbol want = pattern_prev_[d];
      const PrevSymbol key = edge_symbol(tree, index_.text_prev, heavy, 1);
      ++result_.stats.symbol_comparisons;
      if (want == key) {
        if (!match_edge(heavy, 2)) return finish();
        if (m <= tree[heavy].depth) return whole(heavy);
        v = heavy;
        d = tree[heavy].depth;
        continue;
      }
      // the heavy child is the only p-node below v; search beside it
      if (want < key) {
        if (tree[heavy].lb == node.lb) return finish();
        return search(node.lb, tree[heavy].lb - 1, d);
      }
      if (tree[heavy].rb == node.rb) return finish();
      return search(tree[heavy].rb + 1, node.rb, d);
    }
  }

 private:
  // Compares the edge into `child` from the given 1-based offset up to the
  // end of the edge or of the pattern.
  bool match_edge(NodeId child, std::size_t from_offset) {
    const TreeNode& node = index_.tree[child];
    const std::size_t m = pattern_prev_.size();
    const std::size_t end = std::min<std::size_t>(node.edge_length(), m - node.depth_begin);
    for (std::size_t off = from_offset; off <= end; ++off) {
      ++result_.stats.symbol_comparisons;
      if (edge_symbol(index_.tree, index_.text_prev, child, off) != pattern_prev_[node.depth_begin + off - 1])
        return false;
    }
    return true;
  }

  QueryResult whole(NodeId v) {
    return finish(SaRange{index_.tree[v].lb, index_.tree[v].rb});
  }

  QueryResult search(std::size_t lo, std::size_t hi, std::size_t skip) {
    result_.stats.max_range_searched = std::max<std::uint64_t>(result_.stats.max_range_searched, hi - lo + 1);
    SearchCounters counters;
    const auto range = range_search(index_.sa, index_.text_prev, pattern_prev_, lo, hi, skip,
                                    SearchMode::Accelerated, &counters);
    result_.stats.symbol_comparisons += counters.symbol_comparisons;
    result_.stats.psa_probes += counters.psa_probes;
    return finish(range);
  }

  QueryResult finish(const std::optional<SaRange>& range = std::nullopt) {
    result_.positions = report(index_.sa, range);
    std::sort(result_.positions.begin(), result_.positions.end());
    return std::move(result_);
  }

  const PSTrayIndex& index_;
  PrevSeq pattern_prev_;
  std::vector<Symbol> pattern_spe_;
  QueryResult result_;
};

bool in_universe(const PSTrayIndex& index, std::span<const Symbol> pattern) {
  return std::all_of(pattern.begin(), pattern.end(),
                     [&](Symbol s) { return s >= 1 && s <= index.text.universe(); });
}

}  // namespace

QueryResult query(const PSTrayIndex& index, std::span<const Symbol> pattern) {
  if (pattern.empty()) throw Error(ErrorKind::Query, "empty pattern");
  if (pattern.size() > index.size() || !in_universe(index, pattern)) return {};
  return QueryRun(index, pattern).run();
}

QueryResult query_tokens(const PSTrayIndex& index, std::span<const std::string> pattern) {
  if (pattern.empty()) throw Error(ErrorKind::Query, "empty pattern");
  const auto encoded = encode_pattern(pattern, index.text);
  if (!encoded) return {};
  return query(index, *encoded);
}

QueryResult query_raw(const PSTrayIndex& index, std::string_view pattern) {
  const auto tokens = split_input(pattern, index.text.spec.mode);
  return query_tokens(index, tokens);
}

QueryResult query_psa_only(const PSTrayIndex& index, std::span<const Symbol> pattern) {
  if (pattern.empty()) throw Error(ErrorKind::Query, "empty pattern");
  QueryResult result;
  if (pattern.size() > index.size() || !in_universe(index, pattern)) return result;
  const PrevSeq pattern_prev = prev_encode(pattern, index.text.pi_count);
  SearchCounters counters;
  const auto range = range_search(index.sa, index.text_prev, pattern_prev, 0, index.size() - 1, 0,
                                  SearchMode::Accelerated, &counters);
  result.stats.symbol_comparisons = counters.symbol_comparisons;
  result.stats.psa_probes = counters.psa_probes;
  result.stats.max_range_searched = index.size();
  result.positions = report(index.sa, range);
  std::sort(result.positions.begin(), result.positions.end());
  return result;
}

StructureReport structure(const PSTrayIndex& index) {
  StructureReport r;
  r.n = index.size();
  r.pi = index.text.pi_count;
  r.sigma = index.text.sigma_count;
  r.nodes = index.tree.size();
  r.leaves = static_cast<std::size_t>(
      std::count_if(index.tree.nodes.begin(), index.tree.nodes.end(), [](const auto& v) { return v.is_leaf(); }));
  r.pnodes = index.ann.pnode_count();
  r.branching = index.ann.branching_count();
  r.heavy_links = static_cast<std::size_t>(std::count_if(index.ann.heavy_child.begin(), index.ann.heavy_child.end(),
                                                         [](NodeId h) { return h != kNilNode; }));
  r.threshold = index.ann.threshold;
  r.parray_cells = index.ann.parray_pool.size();
  r.rmq = index.sa.has_rmq();
  return r;
}

std::optional<std::string> check_index(const PSTrayIndex& index) {
  const std::size_t n = index.size();
  if (n == 0 || index.text.symbols.back() != index.text.sentinel()) return "text does not end with the sentinel";
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Symbol s = index.text.symbols[i];
    if (s == 0 || s >= index.text.sentinel()) return "text symbol out of range at " + std::to_string(i);
  }
  if (index.text_prev != prev_encode(index.text.symbols, index.text.pi_count)) return "stored prev(T) is stale";
  if (auto e = check_psa(index.sa, index.text_prev)) return e;
  if (auto e = check_tree(index.tree, index.sa, index.text_prev)) return e;

  const TrayAnnotations& ann = index.ann;
  const TrayTree& tree = index.tree;
  const std::size_t count = tree.size();
  if (ann.flags.size() != count || ann.heavy_child.size() != count || ann.rep_pos.size() != count ||
      ann.farr_offset.size() != count || ann.parray_offset.size() != count)
    return "annotation arrays do not match node count";
  if (ann.threshold != std::max(index.text.sigma_count, index.text.pi_count) ||
      ann.parray_width != index.text.sigma_count + index.text.pi_count || ann.pi != index.text.pi_count)
    return "annotation thresholds inconsistent with alphabet";
  for (NodeId v = 0; v < count; ++v) {
    const std::string at = " at node " + std::to_string(v);
    const bool pnode = tree[v].leaf_count() >= ann.threshold;
    if (ann.is_pnode(v) != pnode) return "p-node flag wrong" + at;
    std::size_t pchildren = 0;
    NodeId only = kNilNode;
    for (NodeId c : tree.children_of(v)) {
      if (tree[c].leaf_count() >= ann.threshold) {
        ++pchildren;
        only = c;
      }
    }
    if (ann.is_branching(v) != (pnode && pchildren >= 2)) return "branching flag wrong" + at;
    const NodeId heavy = pnode && pchildren == 1 ? only : kNilNode;
    if (ann.heavy_child[v] != heavy) return "heavy child wrong" + at;
    if (pnode != (ann.rep_pos[v] != kAbsent) || pnode != (ann.farr_offset[v] != kAbsent))
      return "representative pair presence wrong" + at;
    if (pnode && (ann.rep_pos[v] >= n ||
                  static_cast<std::size_t>(ann.farr_offset[v]) + ann.pi > ann.farr_pool.size()))
      return "representative pair out of bounds" + at;
    if (ann.is_branching(v) != (ann.parray_offset[v] != kAbsent)) return "p-array presence wrong" + at;
    if (ann.is_branching(v)) {
      if (static_cast<std::size_t>(ann.parray_offset[v]) + ann.parray_width > ann.parray_pool.size())
        return "p-array out of bounds" + at;
      for (NodeId c : ann.parray(v)) {
        if (c == kNilNode) continue;
        if (c >= count || tree[c].parent != v) return "p-array entry is not a child" + at;
      }
    }
  }
  const StructureReport report = structure(index);
  if (!report.branching_within_bound()) return "branching p-node count exceeds n / max{sigma, pi}";
  if (!report.cells_within_bound()) return "p-array cells exceed 2n";
  return std::nullopt;
}

}  // namespace pstray
