#include <doctest.h>

#include "artin/errors.hpp"
#include "support.hpp"

using namespace testing;

TEST_CASE("parse_poly") {
  auto F = F3();
  CHECK(P("X^2+2*X+1", F).coeffs() == std::vector<Fq>{1, 2, 1});
  CHECK(P("3*X", F).is_zero());
  CHECK(P(" 2 X^3 - X + 4 ", F) == Polynomial(F, {1, 2, 0, 2}));
  try {
    P("X^", F);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(P("X+", F), ParseError);
  CHECK_THROWS_AS(P("Y", F), ParseError);

  auto F9 = Field::make(9, {1, 0, 1});
  auto p = P("[1,2]*X^2+[0,1]", F9);
  CHECK(p.coeff(2) == 1 + 2 * 3);
  CHECK(P(p.to_string(), F9) == p);
}

TEST_CASE("render then parse is the identity") {
  std::mt19937_64 rng(17);
  for (const auto& F : {F2(), F3(), F5(), Field::make(4, {1, 1, 1})}) {
    for (int t = 0; t < 200; ++t) {
      auto p = random_poly(rng, F, 7);
      REQUIRE(P(p.to_string(), F) == p);
    }
  }
}

TEST_CASE("parse_rational") {
  auto F = F3();
  auto r = parse_rational("(X^2+1)/X", F);
  CHECK(r.num() == P("X^2+1", F));
  CHECK(r.den() == P("X", F));
  CHECK(parse_rational("X", F).is_polynomial());
  CHECK_THROWS_AS(parse_rational("1/0", F), ParseError);
}

TEST_CASE("parse_cf_spec") {
  auto F = F3();
  auto g = parse_cf_spec("0; X | X", F);
  CHECK(g.a0.is_zero());
  REQUIRE(g.period.has_value());
  CHECK(*g.period == std::vector<Polynomial>{P("X", F)});
  CHECK(g.quotients(6) == std::vector<Polynomial>{P("0", F), P("X", F), P("X", F), P("X", F), P("X", F), P("X", F)});
  CHECK(parse_cf_spec("0; | X", F).preperiod.empty());

  auto fin = parse_cf_spec("X^2; X, X^3", F);
  CHECK(fin.is_finite());
  CHECK(fin.preperiod.size() == 2);

  try {
    parse_cf_spec("0; 1", F);
    FAIL("expected a degree error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("a1") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_cf_spec("0; X |", F), ParseError);
  CHECK_THROWS_AS(parse_cf_spec("0; X | X, 2", F), ParseError);
}

TEST_CASE("parse_cf_spec with extension-field literals") {
  const auto F4 = Field::make(4, {1, 1, 1});
  const auto s = parse_cf_spec("[1,1]; [0,1]*X, X^2 | [1,1]*X+[0,1]", F4);
  CHECK(s.a0 == parse_poly("[1,1]", F4));
  REQUIRE(s.preperiod.size() == 2);
  CHECK(s.preperiod[0] == parse_poly("[0,1]*X", F4));
  REQUIRE(s.period.has_value());
  CHECK(s.period->size() == 1);
  CHECK(s.period->front() == parse_poly("[1,1]*X+[0,1]", F4));
}
