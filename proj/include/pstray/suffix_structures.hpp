#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pstray/encoding.hpp"

namespace pstray {

// Range-minimum over a fixed array in O(1) per query, O(n log n) words.
class SparseTableRmq {
 public:
  SparseTableRmq() = default;
  explicit SparseTableRmq(std::span<const std::uint32_t> values);

  // min of values[i..j], inclusive, i <= j
  std::uint32_t min(std::size_t i, std::size_t j) const noexcept;
  std::size_t size() const noexcept { return levels_.empty() ? 0 : levels_[0].size(); }

 private:
  std::vector<std::vector<std::uint32_t>> levels_;
};

// Parameterized suffix array over 0-based suffix starts, with plcp[r] the
// lcp of the prev-encoded suffixes at ranks r-1 and r (plcp[0] = 0).
struct PsaIndex {
  std::vector<std::uint32_t> psa;
  std::vector<std::uint32_t> plcp;
  std::optional<SparseTableRmq> rmq;

  std::size_t size() const noexcept { return psa.size(); }
  bool has_rmq() const noexcept { return rmq.has_value(); }
};

PsaIndex build_psa(const PText& text, std::span<const PrevSymbol> text_prev, bool with_rmq = true);
std::vector<std::uint32_t> compute_plcp(std::span<const PrevSymbol> text_prev,
                                        std::span<const std::uint32_t> psa);

// Returns the first violated PsaIndex invariant, if any.
std::optional<std::string> check_psa(const PsaIndex& index, std::span<const PrevSymbol> text_prev);

// Inclusive range of PSA ranks.
struct SaRange {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const noexcept { return last - first + 1; }
  bool operator==(const SaRange&) const = default;
};

struct SearchCounters {
  std::uint64_t symbol_comparisons = 0;
  std::uint64_t psa_probes = 0;
};

enum class SearchMode { Plain, Accelerated };

// Maximal subrange of [lo, hi] whose suffixes have pattern_prev as a prefix.
// Every suffix in [lo, hi] must already agree with the pattern on its first
// `skip` symbols. Accelerated mode needs index.rmq.
std::optional<SaRange> range_search(const PsaIndex& index, std::span<const PrevSymbol> text_prev,
                                    std::span<const PrevSymbol> pattern_prev, std::size_t lo,
                                    std::size_t hi, std::size_t skip, SearchMode mode,
                                    SearchCounters* counters = nullptr);

// 0-based suffix starts psa[first..last], in PSA order.
std::vector<std::uint32_t> report(const PsaIndex& index, const std::optional<SaRange>& range);

}  // namespace pstray
