#include "pstray/workload.hpp"

#include <algorithm>
#include <numeric>

#include "pstray/error.hpp"

namespace pstray::workload {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

AlphabetSpec letter_spec(std::uint32_t params, std::uint32_t statics) {
  AlphabetSpec spec;
  for (std::uint32_t i = 0; i < params; ++i) spec.pi_members.insert(std::string(1, static_cast<char>('a' + i)));
  for (std::uint32_t i = 0; i < statics; ++i) spec.sigma_members.insert(std::string(1, static_cast<char>('A' + i)));
  spec.sigma_policy = SigmaPolicy::Explicit;
  spec.mode = InputMode::Bytes;
  return spec;
}

std::string random_body(Rng& rng, std::size_t length, std::uint32_t params, std::uint32_t statics) {
  const std::size_t kinds = params + statics;
  if (kinds == 0) throw Error(ErrorKind::Input, "random text needs at least one symbol");
  std::string out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t k = uniform(rng, 0, kinds - 1);
    out += k < params ? static_cast<char>('a' + k) : static_cast<char>('A' + (k - params));
  }
  return out;
}

std::vector<Symbol> renamed_window(const PText& text, Rng& rng, std::size_t m) {
  m = std::min(m, text.size());
  const std::size_t start = uniform(rng, 0, text.size() - m);
  std::vector<Symbol> perm(text.pi_count + 1);
  std::iota(perm.begin(), perm.end(), Symbol{0});
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  std::vector<Symbol> out(text.symbols.begin() + static_cast<std::ptrdiff_t>(start),
                          text.symbols.begin() + static_cast<std::ptrdiff_t>(start + m));
  for (auto& s : out)
    if (text.is_parameterized(s)) s = perm[s];
  return out;
}

std::vector<Symbol> random_pattern(const PText& text, Rng& rng, std::size_t m) {
  const Symbol top = std::max<Symbol>(1, text.universe() - 1);
  std::vector<Symbol> out(m);
  for (auto& s : out) s = static_cast<Symbol>(uniform(rng, 1, top));
  return out;
}

std::vector<Symbol> perturbed_window(const PText& text, Rng& rng, std::size_t m) {
  auto out = renamed_window(text, rng, m);
  const Symbol top = std::max<Symbol>(1, text.universe() - 1);
  out[uniform(rng, 0, out.size() - 1)] = static_cast<Symbol>(uniform(rng, 1, top));
  return out;
}

std::vector<Symbol> mixed_pattern(const PText& text, Rng& rng, std::size_t max_m) {
  const std::size_t m = uniform(rng, 1, max_m);
  switch (uniform(rng, 0, 3)) {
    case 0:
    case 1: return renamed_window(text, rng, m);
    case 2: return random_pattern(text, rng, m);
    default: return perturbed_window(text, rng, m);
  }
}

}  // namespace pstray::workload
