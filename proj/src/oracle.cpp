#include "pstray/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pstray/error.hpp"

namespace pstray::oracle {

namespace {

bool is_param(Symbol s, Symbol num_params) { return s >= 1 && s <= num_params; }

// (0, distance) for parameterized positions, (1, id) for static ones, which
// orders all distances before all statics.
using Key = std::pair<int, std::uint64_t>;

std::vector<Key> keyed_prev(std::span<const Symbol> w, Symbol num_params) {
  std::vector<Key> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!is_param(w[i], num_params)) {
      out.emplace_back(1, w[i]);
      continue;
    }
    std::uint64_t d = 0;
    for (std::size_t j = i; j-- > 0;) {
      if (w[j] == w[i]) {
        d = i - j;
        break;
      }
    }
    out.emplace_back(0, d);
  }
  return out;
}

PrevSeq to_prev(const std::vector<Key>& keys) {
  PrevSeq out;
  for (const auto& [tag, value] : keys)
    out.push_back(tag == 0 ? PrevSymbol::distance(value) : PrevSymbol::fixed(static_cast<Symbol>(value)));
  return out;
}

}  // namespace

PrevSeq naive_prev(std::span<const Symbol> w, Symbol num_params) { return to_prev(keyed_prev(w, num_params)); }

bool naive_p_match(std::span<const Symbol> x, std::span<const Symbol> y, Symbol num_params) {
  if (x.size() != y.size()) return false;
  std::map<Symbol, Symbol> forward;
  std::map<Symbol, Symbol> backward;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool px = is_param(x[i], num_params);
    const bool py = is_param(y[i], num_params);
    if (px != py) return false;
    if (!px) {
      if (x[i] != y[i]) return false;
      continue;
    }
    const auto [f, fresh_f] = forward.emplace(x[i], y[i]);
    const auto [b, fresh_b] = backward.emplace(y[i], x[i]);
    if (f->second != y[i] || b->second != x[i]) return false;
  }
  return true;
}

std::vector<std::uint32_t> naive_ppm(std::span<const Symbol> text, std::span<const Symbol> pattern,
                                     Symbol num_params) {
  std::vector<std::uint32_t> out;
  const std::size_t m = pattern.size();
  if (m == 0 || m > text.size()) return out;
  for (std::size_t i = 0; i + m <= text.size(); ++i)
    if (naive_p_match(text.subspan(i, m), pattern, num_params)) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

std::vector<Symbol> naive_spe(std::span<const Symbol> w, Symbol num_params) {
  if (num_params > kMaxSpeParams)
    throw Error(ErrorKind::OracleCapacity, "naive_spe enumerates at most " + std::to_string(kMaxSpeParams) +
                                               " parameterized symbols");
  std::vector<Symbol> image(num_params);
  std::iota(image.begin(), image.end(), Symbol{1});
  std::vector<Symbol> best;
  do {
    std::vector<Symbol> renamed(w.begin(), w.end());
    for (auto& s : renamed)
      if (is_param(s, num_params)) s = image[s - 1];
    if (best.empty() || renamed < best) best = std::move(renamed);
  } while (std::next_permutation(image.begin(), image.end()));
  if (best.empty()) best.assign(w.begin(), w.end());
  return best;
}

FArray naive_farray(const PText& text, std::size_t i) {
  FArray out(text.pi_count, kAbsent);
  for (Symbol x = 1; x <= text.pi_count; ++x) {
    for (std::size_t j = i; j < text.size(); ++j) {
      if (text.symbols[j] == x) {
        out[x - 1] = static_cast<std::uint32_t>(j - i + 1);
        break;
      }
    }
  }
  return out;
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> naive_psa(const PText& text) {
  const std::size_t n = text.size();
  std::vector<std::vector<Key>> suffixes;
  for (std::size_t i = 0; i < n; ++i)
    suffixes.push_back(keyed_prev(std::span(text.symbols).subspan(i), text.pi_count));
  std::vector<std::uint32_t> psa(n);
  std::iota(psa.begin(), psa.end(), 0U);
  std::sort(psa.begin(), psa.end(), [&](auto a, auto b) { return suffixes[a] < suffixes[b]; });
  std::vector<std::uint32_t> plcp(n, 0);
  for (std::size_t r = 1; r < n; ++r) {
    const auto& a = suffixes[psa[r - 1]];
    const auto& b = suffixes[psa[r]];
    std::size_t l = 0;
    while (l < a.size() && l < b.size() && a[l] == b[l]) ++l;
    plcp[r] = static_cast<std::uint32_t>(l);
  }
  return {psa, plcp};
}

std::vector<NodeId> naive_parray(const PSTrayIndex& index, NodeId node) {
  const PText& text = index.text;
  const TreeNode& v = index.tree[node];
  const std::size_t start = index.sa.psa[v.lb];
  const auto window = std::span(text.symbols).subspan(start, v.depth);
  const std::vector<Symbol> smallest = naive_spe(window, text.pi_count);

  std::vector<NodeId> out(text.universe(), kNilNode);
  for (Symbol x = 1; x <= text.universe(); ++x) {
    std::vector<Symbol> extended = smallest;
    extended.push_back(x);
    const auto want = keyed_prev(extended, text.pi_count);
    for (NodeId c : index.tree.children_of(node)) {
      const std::size_t leaf = index.sa.psa[index.tree[c].lb];
      const auto len = std::min(text.size() - leaf, want.size());
      const auto label = keyed_prev(std::span(text.symbols).subspan(leaf, len), text.pi_count);
      if (label == want) {
        out[x - 1] = c;
        break;
      }
    }
  }
  return out;
}

}  // namespace pstray::oracle
