#include "doctest.h"
#include "fixtures.hpp"
#include "pstray/error.hpp"

using namespace pstray;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Input;
}

}  // namespace

TEST_CASE("ingest the running example") {
  const PText t = test::fig2_text();
  CHECK(t.pi_count == 3);
  CHECK(t.sigma_count == 2);
  CHECK(t.size() == 13);
  CHECK(t.symbols == std::vector<Symbol>{3, 4, 1, 4, 2, 2, 1, 2, 4, 1, 1, 2, 5});
  CHECK(t.symbols.back() == t.sentinel());
  CHECK(t.render() == "zAxAyyxyAxxy");
}

TEST_CASE("ingest without parameterized symbols") {
  AlphabetSpec spec;
  spec.sigma_members = {"A"};
  spec.sigma_policy = SigmaPolicy::Explicit;
  const PText t = ingest("A", spec);
  CHECK(t.pi_count == 0);
  CHECK(t.sigma_count == 2);
  CHECK(t.size() == 2);
}

TEST_CASE("token mode maps tokens in lexicographic order") {
  AlphabetSpec spec;
  spec.pi_members = {"x", "y"};
  spec.mode = InputMode::Tokens;
  const PText t = ingest("x x  y", spec);
  CHECK(t.symbols == std::vector<Symbol>{1, 1, 2, 3});
  CHECK(t.size() == 4);
  CHECK(t.render() == "x x y");

  AlphabetSpec code;
  code.pi_members = {"i", "n", "sum"};
  code.mode = InputMode::Tokens;
  const PText c = ingest("for i in n : sum += i", code);
  CHECK(c.pi_count == 3);
  CHECK(c.ids.at("i") == 1);
  CHECK(c.ids.at("n") == 2);
  CHECK(c.ids.at("sum") == 3);
  // statics ordered among themselves, after every parameter
  CHECK(c.ids.at("+=") < c.ids.at(":"));
  CHECK(c.ids.at("for") > c.pi_count);
}

TEST_CASE("ingest errors") {
  CHECK(kind_of([] { ingest("zAq", test::xyz_spec()); }) == ErrorKind::Classification);
  CHECK(kind_of([] { ingest("xA$", test::xyz_spec()); }) == ErrorKind::Input);
  CHECK(kind_of([] { ingest("", test::xyz_spec()); }) == ErrorKind::Input);
  AlphabetSpec overlap = test::xyz_spec("x");
  CHECK(kind_of([&] { ingest("x", overlap); }) == ErrorKind::Input);
  AlphabetSpec dollar = test::xyz_spec("$");
  CHECK(kind_of([&] { ingest("x", dollar); }) == ErrorKind::Input);
}

TEST_CASE("rank over the canonical universe") {
  const PText t = test::fig2_text();
  CHECK(rank(t.ids.at("x"), t) == 1);
  CHECK(rank(t.ids.at("y"), t) == 2);
  CHECK(rank(t.ids.at("A"), t) == 4);
  CHECK(rank(t.sentinel(), t) == 5);
  CHECK(kind_of([&] { rank(0, t); }) == ErrorKind::Rank);
  CHECK(kind_of([&] { rank(6, t); }) == ErrorKind::Rank);
}

TEST_CASE("external map round-trips and rank is monotone") {
  AlphabetSpec spec;
  spec.pi_members = {"b", "d", "q"};
  const std::string raw = "qZbdMbqZZaq";
  const PText t = ingest(raw, spec);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) CHECK(t.tokens[t.symbols[i]] == std::string(1, raw[i]));
  for (Symbol a = 1; a <= t.universe(); ++a) {
    CHECK(rank(a, t) == a);
    for (Symbol b = a + 1; b < t.universe(); ++b) {
      const bool pa = t.is_parameterized(a);
      const bool pb = t.is_parameterized(b);
      CHECK((pa || !pb));  // parameters first
      if (pa == pb) CHECK(t.tokens[a] < t.tokens[b]);
    }
  }
}

TEST_CASE("alphabet spec files") {
  const AlphabetSpec spec = parse_alphabet_spec("pi: x y z\nsigma: A\nmode: bytes\n");
  CHECK(spec.pi_members == std::set<std::string>{"x", "y", "z"});
  CHECK(spec.sigma_policy == SigmaPolicy::Explicit);
  CHECK(spec.sigma_members == std::set<std::string>{"A"});
  CHECK(parse_alphabet_spec(format_alphabet_spec(spec)) == spec);

  const AlphabetSpec packed = parse_alphabet_spec("# comment\npi: xyz\nsigma: auto\n");
  CHECK(packed.pi_members == std::set<std::string>{"x", "y", "z"});
  CHECK(packed.sigma_policy == SigmaPolicy::Complement);
  CHECK(packed.mode == InputMode::Bytes);

  const AlphabetSpec tokens = parse_alphabet_spec("pi: foo bar\nsigma: auto\nmode: tokens\n");
  CHECK(tokens.pi_members == std::set<std::string>{"bar", "foo"});
  CHECK(parse_alphabet_spec(format_alphabet_spec(tokens)) == tokens);

  CHECK(kind_of([] { parse_alphabet_spec("sigma: auto\n"); }) == ErrorKind::Input);
  CHECK(kind_of([] { parse_alphabet_spec("pi: x\nmode: lines\n"); }) == ErrorKind::Input);
  CHECK(kind_of([] { parse_alphabet_spec("pi: x\ncolour: red\n"); }) == ErrorKind::Input);
  CHECK(kind_of([] { parse_alphabet_spec("pi: x $\n"); }) == ErrorKind::Input);
}

TEST_CASE("pattern encoding") {
  const PText t = test::fig2_text();
  const std::vector<std::string> p{"z", "A", "y", "y"};
  const auto enc = encode_pattern(p, t);
  REQUIRE(enc);
  CHECK(*enc == std::vector<Symbol>{1, 4, 2, 2});

  CHECK_FALSE(encode_pattern(std::vector<std::string>{"x", "B"}, ingest("xyzAxxxAyyzAzx", test::xyz_spec("AB"))));

  AlphabetSpec wide;
  wide.pi_members = {"x", "y", "z", "w"};
  const PText small = ingest("xyAx", wide);
  CHECK_FALSE(encode_pattern(std::vector<std::string>{"x", "y", "z"}, small));
  // a parameter that does not occur in T is still a legal pattern symbol
  const auto fresh = encode_pattern(std::vector<std::string>{"w", "A"}, small);
  REQUIRE(fresh);
  CHECK(*fresh == std::vector<Symbol>{1, 3});

  CHECK(kind_of([&] { encode_pattern(std::vector<std::string>{"q"}, t); }) == ErrorKind::Classification);
}
