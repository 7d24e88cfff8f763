#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pstray/alphabet.hpp"

namespace pstray {

// One symbol of a prev-encoded string: either a distance to the previous
// occurrence of a parameterized symbol (0 for a first occurrence) or a static
// symbol id. All distances order before all statics; statics order by id,
// so the sentinel is the maximum.
class PrevSymbol {
 public:
  static constexpr std::uint64_t kStaticBase = std::uint64_t{1} << 62;

  constexpr PrevSymbol() = default;

  static constexpr PrevSymbol distance(std::uint64_t d) noexcept { return PrevSymbol(d); }
  static constexpr PrevSymbol fixed(Symbol id) noexcept { return PrevSymbol(kStaticBase + id); }
  static constexpr PrevSymbol from_code(std::uint64_t code) noexcept { return PrevSymbol(code); }

  constexpr bool is_distance() const noexcept { return code_ < kStaticBase; }
  constexpr bool is_static() const noexcept { return code_ >= kStaticBase; }
  constexpr std::uint64_t dist() const noexcept { return code_; }
  constexpr Symbol static_id() const noexcept { return static_cast<Symbol>(code_ - kStaticBase); }
  constexpr std::uint64_t code() const noexcept { return code_; }

  constexpr auto operator<=>(const PrevSymbol&) const = default;

 private:
  constexpr explicit PrevSymbol(std::uint64_t code) noexcept : code_(code) {}
  std::uint64_t code_ = 0;
};

using PrevSeq = std::vector<PrevSymbol>;

// Symbols 1..num_params are parameterized; everything else is static.
PrevSeq prev_encode(std::span<const Symbol> w, Symbol num_params);
std::vector<Symbol> spe(std::span<const Symbol> w, Symbol num_params);
bool p_match(std::span<const Symbol> x, std::span<const Symbol> y, Symbol num_params);

// prev(T[j:])[d] for 0-based suffix start j and 1-based depth d, computed
// from prev(T) alone. Requires j + d <= |global_prev|.
inline PrevSymbol prev_char_in_window(std::span<const PrevSymbol> global_prev, std::size_t j,
                                      std::size_t d) noexcept {
  const PrevSymbol b = global_prev[j + d - 1];
  if (b.is_distance() && b.dist() >= d) return PrevSymbol::distance(0);
  return b;
}

// Readable form, e.g. "0 A 0 1 $".
std::string to_string(std::span<const PrevSymbol> seq, const PText& text);

inline constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

// fpos of a suffix: entry [rank(x) - 1] is the 1-based position of the first
// occurrence of x in the suffix, or kAbsent.
using FArray = std::vector<std::uint32_t>;

// Sweeps suffixes right to left maintaining first occurrences in absolute
// text positions; suffix-relative f-arrays are produced on demand.
class FposSweep {
 public:
  explicit FposSweep(const PText& text);

  // Moves to the next suffix to the left. Returns false once position 0
  // has been produced.
  bool step();
  bool started() const noexcept { return pos_ < text_->size(); }
  std::size_t position() const noexcept { return pos_; }  // 0-based start of current suffix

  std::uint32_t at(Symbol param) const noexcept {
    const std::uint32_t abs = first_[param - 1];
    return abs == kAbsent ? kAbsent : static_cast<std::uint32_t>(abs - pos_ + 1);
  }
  FArray materialize() const;

 private:
  const PText* text_;
  std::size_t pos_;
  std::vector<std::uint32_t> first_;  // absolute 0-based positions
};

// Partial renaming over parameterized ids: map[x] is the image of x, or 0 if
// undefined. Static symbols are fixed points.
struct PFunction {
  std::vector<Symbol> map;  // size num_params + 1, map[0] unused

  Symbol operator()(Symbol x) const noexcept {
    if (x < map.size()) return map[x];
    return x;
  }
  std::vector<Symbol> apply(std::span<const Symbol> w) const;
};

// f_{v, spe(v)} for v = T[i : i + limit), given the f-array of T[i:].
PFunction pfunction_from_fpos(const PText& text, std::size_t i, std::size_t limit,
                              const FArray& farr);

}  // namespace pstray
