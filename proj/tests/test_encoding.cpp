#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "pstray/oracle.hpp"
#include "pstray/workload.hpp"

using namespace pstray;
using test::symbols_of;

namespace {

std::string prev_of(std::string_view s, std::string_view statics = "AB") {
  const auto w = symbols_of(s, "xyz", statics);
  std::string out;
  for (const auto& p : prev_encode(w, 3)) {
    if (p.is_distance()) {
      out += std::to_string(p.dist());
    } else {
      out += test::letters_of({p.static_id()}, "xyz", statics);
    }
  }
  return out;
}

// Every string of length <= max_len over ids 1..alphabet.
std::vector<std::vector<Symbol>> all_strings(std::size_t max_len, Symbol alphabet) {
  std::vector<std::vector<Symbol>> out{{}};
  std::vector<std::vector<Symbol>> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Symbol>> next;
    for (const auto& w : layer) {
      for (Symbol s = 1; s <= alphabet; ++s) {
        auto e = w;
        e.push_back(s);
        next.push_back(std::move(e));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST_CASE("prev encoding examples") {
  CHECK(prev_of("yxzAyyyBxzz") == "000A411B771");
  CHECK(prev_of("zxyAzzzBxyy") == "000A411B771");
  CHECK(prev_of("zAxAyyxyAxxy$", "A") == "0A0A0142A314$");
  CHECK(prev_of("ABBA") == "ABBA");
  CHECK(prev_encode(std::vector<Symbol>{}, 3).empty());
}

TEST_CASE("PrevSymbol order: distances, then statics, sentinel last") {
  CHECK(PrevSymbol::distance(0) < PrevSymbol::distance(7));
  CHECK(PrevSymbol::distance(1'000'000) < PrevSymbol::fixed(1));
  CHECK(PrevSymbol::fixed(4) < PrevSymbol::fixed(5));
  CHECK(PrevSymbol::fixed(4).is_static());
  CHECK(PrevSymbol::fixed(4).static_id() == 4);
}

TEST_CASE("spe examples") {
  CHECK(test::letters_of(spe(symbols_of("yxzAyyyBxzz"), 3)) == "xyzAxxxByzz");
  const auto fig2 = symbols_of("zAxAyyxyAxxy$", "xyz", "A");
  CHECK(test::letters_of(spe(fig2, 3), "xyz", "A") == "xAyAzzyzAyyz$");
  CHECK(oracle::naive_spe(fig2, 3) == spe(fig2, 3));
  CHECK(test::letters_of(spe(symbols_of("BAAB"), 3)) == "BAAB");
}

TEST_CASE("p_match examples") {
  CHECK(p_match(symbols_of("xyzAxxxByzz"), symbols_of("zxyAzzzBxyy"), 3));
  CHECK_FALSE(p_match(symbols_of("x"), symbols_of("A"), 3));
  CHECK_FALSE(p_match(symbols_of("xy"), symbols_of("xx"), 3));
  CHECK_FALSE(p_match(symbols_of("xy"), symbols_of("xyz"), 3));
  const auto w = symbols_of("zAxAyyxyAxxy");
  CHECK(p_match(w, w, 3));
}

TEST_CASE("encoding laws on all short strings") {
  // 3 parameterized + 2 static symbols, lengths <= 4
  const auto strings = all_strings(4, 5);
  for (const auto& a : strings) {
    const auto s = spe(a, 3);
    CHECK(spe(s, 3) == s);
    CHECK(oracle::naive_spe(a, 3) == s);
    CHECK(prev_encode(a, 3) == oracle::naive_prev(a, 3));
    const auto pa = prev_encode(a, 3);
    for (std::size_t j = 0; j < a.size(); ++j)
      if (pa[j].is_distance() && pa[j].dist() > 0) CHECK(s[j] == s[j - pa[j].dist()]);
  }
  for (const auto& a : strings) {
    if (a.size() != 3) continue;
    for (const auto& b : strings) {
      if (b.size() != 3) continue;
      const bool by_prev = prev_encode(a, 3) == prev_encode(b, 3);
      CHECK(by_prev == (spe(a, 3) == spe(b, 3)));
      CHECK(by_prev == oracle::naive_p_match(a, b, 3));
      CHECK(by_prev == p_match(a, b, 3));
    }
  }
}

TEST_CASE("prev_char_in_window") {
  const PText t = test::fig2_text();
  const PrevSeq g = prev_encode(t.symbols, t.pi_count);
  // suffix starting at 1-based position 6 is "0 0 2 A ..."
  CHECK(prev_char_in_window(g, 5, 1) == PrevSymbol::distance(0));
  CHECK(prev_char_in_window(g, 5, 2) == PrevSymbol::distance(0));
  CHECK(prev_char_in_window(g, 5, 3) == PrevSymbol::distance(2));
  CHECK(prev_char_in_window(g, 5, 4) == PrevSymbol::fixed(4));

  workload::Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    const PText r = ingest(workload::random_body(rng, n, 1 + trial % 6, 1 + trial % 3),
                           workload::letter_spec(1 + trial % 6, 1 + trial % 3));
    const PrevSeq gp = prev_encode(r.symbols, r.pi_count);
    for (std::size_t j = 0; j < r.size(); ++j) {
      const auto suffix = oracle::naive_prev(std::span(r.symbols).subspan(j), r.pi_count);
      for (std::size_t d = 1; d <= suffix.size(); ++d) REQUIRE(prev_char_in_window(gp, j, d) == suffix[d - 1]);
      if (r.is_parameterized(r.symbols[j])) CHECK(prev_char_in_window(gp, j, 1) == PrevSymbol::distance(0));
    }
  }
}

TEST_CASE("f-arrays by sweep") {
  AlphabetSpec spec = test::xyz_spec();
  const PText q = ingest("xyxzyyxz", spec);
  FposSweep qs(q);
  while (qs.step()) {
  }
  CHECK(qs.position() == 0);
  CHECK(qs.materialize() == FArray{1, 2, 4});

  const PText t = test::fig2_text();
  FposSweep sweep(t);
  REQUIRE(sweep.step());
  CHECK(sweep.position() == 12);
  CHECK(sweep.materialize() == FArray{kAbsent, kAbsent, kAbsent});
  while (sweep.position() > 0) sweep.step();
  CHECK(sweep.materialize() == FArray{3, 5, 1});

  workload::Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t params = 1 + trial % 6;
    const PText r = ingest(workload::random_body(rng, 1 + rng() % 200, params, 2), workload::letter_spec(params, 2));
    FposSweep s(r);
    while (s.step()) REQUIRE(s.materialize() == oracle::naive_farray(r, s.position()));
  }
}

TEST_CASE("p-functions from f-arrays") {
  const PText t = test::fig2_text();
  const FArray farr = oracle::naive_farray(t, 0);
  // v = zAx: z -> x, x -> y, y unmapped
  const PFunction f = pfunction_from_fpos(t, 0, 3, farr);
  CHECK(f(3) == 1);
  CHECK(f(1) == 2);
  CHECK(f(2) == 0);
  CHECK(f(4) == 4);
  CHECK(test::letters_of(f.apply(std::span(t.symbols).first(3)), "xyz", "A") == "xAy");

  const PFunction none = pfunction_from_fpos(t, 0, 0, farr);
  for (Symbol x = 1; x <= 3; ++x) CHECK(none(x) == 0);

  // general f_{q,r} recovered as f_{r,spe(r)}^-1 composed with f_{q,spe(q)}
  const PText q = ingest("xyxzyyxz", test::xyz_spec());
  const PText r = ingest("zxzyxxzy", test::xyz_spec());
  const PFunction fq = pfunction_from_fpos(q, 0, 8, oracle::naive_farray(q, 0));
  const PFunction fr = pfunction_from_fpos(r, 0, 8, oracle::naive_farray(r, 0));
  for (Symbol x = 1; x <= 3; ++x) CHECK(fq(x) == x);  // q is already its own spe
  std::vector<Symbol> inverse(4, 0);
  for (Symbol x = 1; x <= 3; ++x) inverse[fr(x)] = x;
  const auto compose = [&](Symbol x) { return inverse[fq(x)]; };
  CHECK(compose(1) == 3);  // x -> z
  CHECK(compose(2) == 1);  // y -> x
  CHECK(compose(3) == 2);  // z -> y
}
