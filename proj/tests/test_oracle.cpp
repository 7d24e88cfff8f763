#include "doctest.h"
#include "fixtures.hpp"
#include "pstray/error.hpp"
#include "pstray/oracle.hpp"

using namespace pstray;

TEST_CASE("naive scan of the examples") {
  const PText sec2 = test::sec2_text();
  CHECK(test::one_based(oracle::naive_ppm(sec2.symbols, test::symbols_of("yAzz", "xyz", "A"), 3)) ==
        std::vector<std::uint32_t>{3, 7});
  const PText fig2 = test::fig2_text();
  CHECK(oracle::naive_ppm(fig2.symbols, test::symbols_of("xAyy", "xyz", "A"), 3) == std::vector<std::uint32_t>{2, 7});
  CHECK(oracle::naive_ppm(fig2.symbols, test::symbols_of("xx", "xyz", "A"), 3) == std::vector<std::uint32_t>{4, 9});
  CHECK(oracle::naive_ppm(fig2.symbols, std::vector<Symbol>(20, 1), 3).empty());
}

TEST_CASE("naive p-match is a bijection test") {
  CHECK(oracle::naive_p_match(test::symbols_of("xyx"), test::symbols_of("zxz"), 3));
  CHECK_FALSE(oracle::naive_p_match(test::symbols_of("xyx"), test::symbols_of("zzz"), 3));
  CHECK_FALSE(oracle::naive_p_match(test::symbols_of("xx"), test::symbols_of("xy"), 3));
  CHECK_FALSE(oracle::naive_p_match(test::symbols_of("xA"), test::symbols_of("xB"), 3));
  CHECK_FALSE(oracle::naive_p_match(test::symbols_of("xA"), test::symbols_of("xAx"), 3));
}

TEST_CASE("naive spe enumerates renamings") {
  CHECK(oracle::naive_spe(test::symbols_of("zAxAyy"), 3) == test::symbols_of("xAyAzz"));
  CHECK(oracle::naive_spe(test::symbols_of("AB"), 3) == test::symbols_of("AB"));
  const std::vector<Symbol> nine{1, 2, 3, 4, 5, 6, 7, 8, 9};
  try {
    oracle::naive_spe(nine, 9);
    FAIL("expected an oracle capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OracleCapacity);
  }
}

TEST_CASE("naive structures of the one-symbol text") {
  PText text;
  text.symbols = {1};
  text.sigma_count = 1;
  text.tokens = {"", "$"};
  const auto [psa, plcp] = oracle::naive_psa(text);
  CHECK(psa == std::vector<std::uint32_t>{0});
  CHECK(plcp == std::vector<std::uint32_t>{0});
  CHECK(oracle::naive_farray(text, 0).empty());
}
