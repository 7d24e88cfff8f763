#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pstray/alphabet.hpp"
#include "pstray/encoding.hpp"
#include "pstray/tray.hpp"

namespace pstray::test {

// Text of the running example: Pi = {x, y, z}, Sigma = {A} (+ sentinel).
// Ids: x=1 y=2 z=3 A=4 $=5.
inline AlphabetSpec xyz_spec(std::string statics = "A") {
  AlphabetSpec spec;
  spec.pi_members = {"x", "y", "z"};
  for (char c : statics) spec.sigma_members.insert(std::string(1, c));
  spec.sigma_policy = SigmaPolicy::Explicit;
  return spec;
}

inline PText fig2_text() { return ingest("zAxAyyxyAxxy", xyz_spec()); }
inline PText sec2_text() { return ingest("xyzAxxxAyyzAzx", xyz_spec()); }

// Maps a string over the given parameterized and static letters to ids
// (params 1.., statics after them, '$' last) without going through ingest.
inline std::vector<Symbol> symbols_of(std::string_view s, std::string_view params = "xyz",
                                      std::string_view statics = "AB") {
  std::vector<Symbol> out;
  for (char c : s) {
    if (auto p = params.find(c); p != std::string_view::npos) {
      out.push_back(static_cast<Symbol>(p + 1));
    } else if (auto q = statics.find(c); q != std::string_view::npos) {
      out.push_back(static_cast<Symbol>(params.size() + q + 1));
    } else {
      out.push_back(static_cast<Symbol>(params.size() + statics.size() + 1));  // '$'
    }
  }
  return out;
}

inline std::string letters_of(const std::vector<Symbol>& w, std::string_view params = "xyz",
                              std::string_view statics = "AB") {
  std::string out;
  for (Symbol s : w) {
    if (s >= 1 && s <= params.size()) {
      out += params[s - 1];
    } else if (s > params.size() && s <= params.size() + statics.size()) {
      out += statics[s - params.size() - 1];
    } else {
      out += '$';
    }
  }
  return out;
}

// Space-separated prev rendering with statics spelled through the text.
inline std::string prev_string(std::span<const PrevSymbol> seq, const PText& text) { return to_string(seq, text); }

inline std::vector<std::uint32_t> one_based(std::vector<std::uint32_t> v) {
  for (auto& x : v) ++x;
  return v;
}

// Node whose path label renders as `label`, or kNilNode.
inline NodeId node_by_label(const PSTrayIndex& index, std::string_view label) {
  for (NodeId v = 0; v < index.tree.size(); ++v)
    if (to_string(path_label(index.tree, index.text_prev, v), index.text) == label) return v;
  return kNilNode;
}

}  // namespace pstray::test
