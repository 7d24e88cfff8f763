#pragma once

// Brute-force reference implementations. These are literal transcriptions
// of the definitions and must not call into the optimized encoders, the
// suffix structures or the tray; tests compare the two sides.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pstray/encoding.hpp"
#include "pstray/tray.hpp"

namespace pstray::oracle {

// prev by scanning backwards for each position.
PrevSeq naive_prev(std::span<const Symbol> w, Symbol num_params);

// p-match by building the renaming bijection symbol by symbol.
bool naive_p_match(std::span<const Symbol> x, std::span<const Symbol> y, Symbol num_params);

// 0-based starts i with T[i : i + m) p-matching the pattern, ascending.
std::vector<std::uint32_t> naive_ppm(std::span<const Symbol> text, std::span<const Symbol> pattern,
                                     Symbol num_params);

// Lexicographically least renaming of w over the parameterized ids
// 1..num_params, found by enumerating every permutation of them. Throws
// Error(OracleCapacity) when num_params > kMaxSpeParams.
inline constexpr Symbol kMaxSpeParams = 8;
std::vector<Symbol> naive_spe(std::span<const Symbol> w, Symbol num_params);

// f-array of T[i:] by scanning the suffix.
FArray naive_farray(const PText& text, std::size_t i);

// PSA and PLCP by materializing and sorting every prev-encoded suffix.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> naive_psa(const PText& text);

// Child of a branching p-node selected by each symbol x in 1..sigma+pi:
// the child whose label has prev(spe(v) x) as a prefix, or kNilNode.
std::vector<NodeId> naive_parray(const PSTrayIndex& index, NodeId node);

}  // namespace pstray::oracle
