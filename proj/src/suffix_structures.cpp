#include "pstray/suffix_structures.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace pstray {

SparseTableRmq::SparseTableRmq(std::span<const std::uint32_t> values) {
  if (values.empty()) return;
  levels_.emplace_back(values.begin(), values.end());
  for (std::size_t width = 2; width <= values.size(); width *= 2) {
    const auto& prev = levels_.back();
    std::vector<std::uint32_t> next(values.size() - width + 1);
    for (std::size_t i = 0; i < next.size(); ++i)
      next[i] = std::min(prev[i], prev[i + width / 2]);
    levels_.push_back(std::move(next));
  }
}

std::uint32_t SparseTableRmq::min(std::size_t i, std::size_t j) const noexcept {
  assert(i <= j && j < size());
  const auto k = static_cast<std::size_t>(std::bit_width(j - i + 1) - 1);
  return std::min(levels_[k][i], levels_[k][j + 1 - (std::size_t{1} << k)]);
}

namespace {

std::uint32_t lcp_of_suffixes(std::span<const PrevSymbol> text_prev, std::size_t a, std::size_t b) {
  const std::size_t n = text_prev.size();
  const std::size_t limit = n - std::max(a, b);
  std::size_t d = 0;
  while (d < limit && prev_char_in_window(text_prev, a, d + 1) == prev_char_in_window(text_prev, b, d + 1))
    ++d;
  return static_cast<std::uint32_t>(d);
}

bool suffix_less(std::span<const PrevSymbol> text_prev, std::size_t a, std::size_t b) {
  const std::size_t n = text_prev.size();
  const std::size_t limit = n - std::max(a, b);
  for (std::size_t d = 1; d <= limit; ++d) {
    const PrevSymbol x = prev_char_in_window(text_prev, a, d);
    const PrevSymbol y = prev_char_in_window(text_prev, b, d);
    if (x != y) return x < y;
  }
  // one suffix is a prefix of the other; cannot happen with a unique sentinel
  return a > b;
}

}  // namespace

std::vector<std::uint32_t> compute_plcp(std::span<const PrevSymbol> text_prev,
                                        std::span<const std::uint32_t> psa) {
  std::vector<std::uint32_t> plcp(psa.size(), 0);
  for (std::size_t r = 1; r < psa.size(); ++r) plcp[r] = lcp_of_suffixes(text_prev, psa[r - 1], psa[r]);
  return plcp;
}

PsaIndex build_psa(const PText& text, std::span<const PrevSymbol> text_prev, bool with_rmq) {
  PsaIndex index;
  index.psa.resize(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) index.psa[i] = static_cast<std::uint32_t>(i);
  std::sort(index.psa.begin(), index.psa.end(),
            [&](std::uint32_t a, std::uint32_t b) { return suffix_less(text_prev, a, b); });
  index.plcp = compute_plcp(text_prev, index.psa);
  if (with_rmq) index.rmq.emplace(index.plcp);
  return index;
}

std::optional<std::string> check_psa(const PsaIndex& index, std::span<const PrevSymbol> text_prev) {
  const std::size_t n = text_prev.size();
  if (index.psa.size() != n) return "psa length " + std::to_string(index.psa.size()) + " != n";
  if (index.plcp.size() != n) return "plcp length " + std::to_string(index.plcp.size()) + " != n";
  std::vector<bool> seen(n, false);
  for (auto s : index.psa) {
    if (s >= n || seen[s]) return "psa is not a permutation (entry " + std::to_string(s) + ")";
    seen[s] = true;
  }
  if (n > 0 && index.plcp[0] != 0) return "plcp[0] != 0";
  for (std::size_t r = 1; r < n; ++r) {
    if (!suffix_less(text_prev, index.psa[r - 1], index.psa[r]))
      return "psa not sorted at rank " + std::to_string(r);
    if (index.plcp[r] != lcp_of_suffixes(text_prev, index.psa[r - 1], index.psa[r]))
      return "plcp wrong at rank " + std::to_string(r);
  }
  if (index.rmq) {
    if (index.rmq->size() != n) return "rmq size mismatch";
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t running = index.plcp[i];
      for (std::size_t j = i; j < std::min(n, i + 64); ++j) {
        running = std::min(running, index.plcp[j]);
        if (index.rmq->min(i, j) != running)
          return "rmq wrong on [" + std::to_string(i) + "," + std::to_string(j) + "]";
      }
    }
  }
  return std::nullopt;
}

namespace {

class PatternProbe {
 public:
  PatternProbe(std::span<const PrevSymbol> text_prev, std::span<const PrevSymbol> pattern,
               SearchCounters* counters)
      : text_prev_(text_prev), pattern_(pattern), counters_(counters) {}

  struct Outcome {
    std::size_t matched;  // lcp of suffix and pattern, capped at m
    int order;            // sign of (suffix <=> pattern) on the first m symbols
  };

  // Compares suffix s with the pattern, knowing they agree on `from` symbols.
  Outcome compare(std::size_t s, std::size_t from) const {
    const std::size_t m = pattern_.size();
    const std::size_t len = text_prev_.size() - s;
    std::size_t h = from;
    while (h < m) {
      if (h >= len) return {h, -1};
      const PrevSymbol t = prev_char_in_window(text_prev_, s, h + 1);
      if (counters_) ++counters_->symbol_comparisons;
      if (t != pattern_[h]) return {h, t < pattern_[h] ? -1 : 1};
      ++h;
    }
    return {h, 0};
  }

  std::size_t m() const noexcept { return pattern_.size(); }

 private:
  std::span<const PrevSymbol> text_prev_;
  std::span<const PrevSymbol> pattern_;
  SearchCounters* counters_;
};

struct Bound {
  std::size_t rank;     // hi + 1 when no suffix qualifies
  std::size_t matched;  // lcp of that suffix with the pattern
};

// First rank in [lo, hi] whose suffix compares >= pattern (strict: > pattern),
// or hi + 1.
Bound plain_bound(const PsaIndex& index, const PatternProbe& probe, std::size_t lo,
                        std::size_t hi, std::size_t skip, bool strict, SearchCounters* counters) {
  std::size_t left = lo;
  std::size_t right = hi + 1;
  std::size_t matched = skip;
  while (left < right) {
    const std::size_t mid = left + (right - left) / 2;
    if (counters) ++counters->psa_probes;
    const auto out = probe.compare(index.psa[mid], skip);
    const bool goes_right = out.order > 0 || (out.order == 0 && !strict);
    if (goes_right) {
      right = mid;
      matched = out.matched;
    } else {
      left = mid + 1;
    }
  }
  return {right, matched};
}

// Same contract as plain_bound. Keeps the matched lengths of both boundaries
// and uses the plcp minimum to skip symbols already known to agree. The
// boundaries lo - 1 and hi + 1 are virtual unless left_matched says rank
// lo - 1 is a real suffix sharing that many symbols with the pattern.
Bound accelerated_bound(const PsaIndex& index, const PatternProbe& probe, std::size_t lo,
                              std::size_t hi, std::size_t skip, bool strict,
                              SearchCounters* counters,
                              std::optional<std::size_t> left_matched = std::nullopt) {
  const std::size_t m = probe.m();
  const auto lcp_ranks = [&](std::size_t a, std::size_t b) {
    return std::min<std::size_t>(index.rmq->min(a + 1, b), m);
  };
  // ranks are stored shifted by one so that lo - 1 stays representable
  std::size_t l = lo;      // rank l - 1
  std::size_t r = hi + 2;  // rank r - 1
  std::size_t ll = left_matched.value_or(skip);
  std::size_t rr = skip;
  while (r - l > 1) {
    const std::size_t mid = l + (r - l) / 2;
    const std::size_t rank = mid - 1;
    if (counters) ++counters->psa_probes;
    std::size_t from;
    if (ll > rr) {
      const std::size_t x = lcp_ranks(l - 1, rank);
      if (x > ll) {
        l = mid;
        continue;
      }
      if (x < ll) {
        r = mid;
        rr = x;
        continue;
      }
      from = ll;
    } else if (rr > ll) {
      const std::size_t x = lcp_ranks(rank, r - 1);
      if (x > rr) {
        r = mid;
        continue;
      }
      if (x < rr) {
        l = mid;
        ll = x;
        continue;
      }
      from = rr;
    } else {
      from = ll;
    }
    const auto out = probe.compare(index.psa[rank], from);
    const bool goes_right = out.order > 0 || (out.order == 0 && !strict);
    if (goes_right) {
      r = mid;
      rr = out.matched;
    } else {
      l = mid;
      ll = out.matched;
    }
  }
  return {r - 1, rr};
}

}  // namespace

std::optional<SaRange> range_search(const PsaIndex& index, std::span<const PrevSymbol> text_prev,
                                    std::span<const PrevSymbol> pattern_prev, std::size_t lo,
                                    std::size_t hi, std::size_t skip, SearchMode mode,
                                    SearchCounters* counters) {
  assert(lo <= hi && hi < index.size());
  assert(skip <= pattern_prev.size());
  const PatternProbe probe(text_prev, pattern_prev, counters);
  const bool fast = mode == SearchMode::Accelerated && index.rmq.has_value();
  const Bound lower = fast ? accelerated_bound(index, probe, lo, hi, skip, false, counters)
                           : plain_bound(index, probe, lo, hi, skip, false, counters);
  // the lower bound is an occurrence iff it matches the whole pattern
  if (lower.rank > hi || lower.matched < probe.m()) return std::nullopt;
  const std::size_t first = lower.rank;
  if (first == hi) return SaRange{first, first};
  const Bound upper =
      fast ? accelerated_bound(index, probe, first + 1, hi, skip, true, counters, probe.m())
           : plain_bound(index, probe, first + 1, hi, skip, true, counters);
  return SaRange{first, upper.rank - 1};
}

std::vector<std::uint32_t> report(const PsaIndex& index, const std::optional<SaRange>& range) {
  if (!range) return {};
  return {index.psa.begin() + static_cast<std::ptrdiff_t>(range->first),
          index.psa.begin() + static_cast<std::ptrdiff_t>(range->last) + 1};
}

}  // namespace pstray
