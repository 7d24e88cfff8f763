#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pstray {

// Internal symbol id. Parameterized symbols are 1..pi, static symbols
// pi+1..pi+sigma, and the sentinel is pi+sigma. 0 is never a valid symbol.
using Symbol = std::uint32_t;

// External spelling of the synthesized end-marker. It may not appear in
// the input or in either declared alphabet.
inline constexpr std::string_view kSentinelToken = "$";

enum class InputMode : std::uint8_t { Bytes = 0, Tokens = 1 };
enum class SigmaPolicy : std::uint8_t { Explicit = 0, Complement = 1 };

struct AlphabetSpec {
  std::set<std::string> pi_members;
  std::set<std::string> sigma_members;  // only consulted under SigmaPolicy::Explicit
  SigmaPolicy sigma_policy = SigmaPolicy::Complement;
  InputMode mode = InputMode::Bytes;

  // Throws Error(Input) when the sets overlap or contain the sentinel.
  void validate() const;

  bool operator==(const AlphabetSpec&) const = default;
};

// Parses the three-line alphabet file:
//   pi: <tokens>
//   sigma: <tokens>|auto
//   mode: bytes|tokens
// In bytes mode every listed token is split into its individual bytes.
AlphabetSpec parse_alphabet_spec(std::string_view text);
std::string format_alphabet_spec(const AlphabetSpec& spec);

// Splits raw input into tokens: one per byte, or one per whitespace-separated word.
std::vector<std::string> split_input(std::string_view raw, InputMode mode);

struct PText {
  std::vector<Symbol> symbols;     // length n, sentinel last
  std::uint32_t pi_count = 0;      // distinct parameterized symbols in T
  std::uint32_t sigma_count = 0;   // distinct static symbols in T, sentinel included
  std::vector<std::string> tokens; // tokens[id] is the external spelling; tokens[0] unused
  std::unordered_map<std::string, Symbol> ids;
  AlphabetSpec spec;

  std::size_t size() const noexcept { return symbols.size(); }
  Symbol universe() const noexcept { return pi_count + sigma_count; }
  Symbol sentinel() const noexcept { return universe(); }
  bool is_parameterized(Symbol s) const noexcept { return s >= 1 && s <= pi_count; }
  std::span<const Symbol> view() const noexcept { return symbols; }

  // External spelling of T[0..n-2] (sentinel dropped), joined per input mode.
  std::string render() const;
};

PText ingest(std::string_view raw, const AlphabetSpec& spec);
PText ingest_tokens(std::span<const std::string> tokens, const AlphabetSpec& spec);

// Lexicographic rank of a symbol in the canonical universe 1..pi+sigma.
// Throws Error(Rank) for ids outside it.
std::uint32_t rank(Symbol x, const PText& text);

// Maps pattern tokens into the text's symbol universe. Parameterized tokens
// are renamed by first occurrence (1, 2, ...), which leaves every p-match
// relation intact. Returns nullopt when the pattern cannot occur at all: it
// uses a static symbol absent from T, or more distinct parameterized symbols
// than T has. Throws Error(Classification) for unclassifiable tokens.
std::optional<std::vector<Symbol>> encode_pattern(std::span<const std::string> tokens,
                                                  const PText& text);

}  // namespace pstray
