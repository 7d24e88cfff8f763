#pragma once

// Random texts and patterns for self-checks, benchmarks and tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pstray/alphabet.hpp"

namespace pstray::workload {

using Rng = std::mt19937_64;

// Parameterized symbols are spelled a, b, c, ...; static ones A, B, C, ...
// random_body throws Error(Input) when params + statics == 0.
AlphabetSpec letter_spec(std::uint32_t params, std::uint32_t statics);
std::string random_body(Rng& rng, std::size_t length, std::uint32_t params, std::uint32_t statics);

// T[i : i + m) for a random i, with its parameterized symbols permuted.
std::vector<Symbol> renamed_window(const PText& text, Rng& rng, std::size_t m);
// m symbols drawn uniformly from the text's non-sentinel universe.
std::vector<Symbol> random_pattern(const PText& text, Rng& rng, std::size_t m);
// A renamed window with one position replaced at random.
std::vector<Symbol> perturbed_window(const PText& text, Rng& rng, std::size_t m);

// Half renamed windows, half random or perturbed, m uniform in [1, max_m].
std::vector<Symbol> mixed_pattern(const PText& text, Rng& rng, std::size_t max_m);

}  // namespace pstray::workload
