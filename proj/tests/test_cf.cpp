#include <doctest.h>

#include "artin/errors.hpp"
#include "support.hpp"

using namespace testing;

namespace {

// Golden series by the fixed point f = 1/(X + f), iterated from 0.
LaurentSeries golden_by_iteration(const FieldRef& F, int prec) {
  LaurentSeries f = LaurentSeries::zero_to(F, 1);
  const auto x = S("X", F);
  for (int i = 0; i < prec; ++i) f = divide(LaurentSeries::constant(F, 1), x + f, prec).truncate(prec);
  return f;
}

}  // namespace

TEST_CASE("artin step") {
  auto F3_ = F3();
  // X^-1 exactly: quotient X, expansion terminates.
  auto step = artin_step(LaurentSeries::monomial(F3_, 1, 1));
  CHECK(step.quotient == P("X", F3_));
  CHECK(step.remainder.is_known_zero());

  // 1/(X-1) over F_2: quotient X+1, remainder zero to precision.
  auto f = series_from_rational(RationalFunction(P("1", F2()), P("X+1", F2())), 20);
  auto s2 = artin_step(f);
  CHECK(s2.quotient == P("X+1", F2()));
  CHECK(s2.remainder.is_zero_to_precision());

  // The golden analogue is a fixed point of the Artin map.
  auto g = golden_by_iteration(F3_, 50);
  auto fixed = g * (S("X", F3_) + g);
  CHECK(fixed.horizon() == 49);
  CHECK(fixed.agrees_with(LaurentSeries::constant(F3_, 1), 49));
  auto s3 = artin_step(g);
  CHECK(s3.quotient == P("X", F3_));
  CHECK(s3.remainder.agrees_with(g, *s3.remainder.horizon()));

  CHECK_THROWS_AS(artin_step(LaurentSeries::truncated(F3_, 3, {1, 1}, 5)), PrecisionExhausted);
  CHECK_THROWS_AS(artin_step(LaurentSeries::known_zero(F3_)), std::domain_error);
  CHECK_THROWS_AS(artin_step(S("X", F3_)), std::domain_error);
}

TEST_CASE("cf_expand examples") {
  auto F = F3();
  auto e1 = cf_expand(SeriesSource::rational(RationalFunction(P("X^2+1", F), P("X", F))), 10);
  CHECK(e1.status == Expansion::Status::Terminated);
  CHECK(e1.quotients == std::vector<Polynomial>{P("X", F), P("X", F)});

  auto e2 = cf_expand(cf_source(golden_spec(F)), 5);
  CHECK(e2.status == Expansion::Status::Complete);
  CHECK(e2.quotients == std::vector<Polynomial>{P("0", F), P("X", F), P("X", F), P("X", F), P("X", F), P("X", F)});

  auto e3 = cf_expand(SeriesSource::rational(RationalFunction(P("1", F2()), P("X", F2()))), 10);
  CHECK(e3.status == Expansion::Status::Terminated);
  CHECK(e3.quotients == std::vector<Polynomial>{P("0", F2()), P("X", F2())});

  // Non-rational source of a rational value: the remainder can only ever be
  // zero to precision, so the cap is reached with the certified prefix.
  auto stream = SeriesSource::stream(F2(), 1, [](int) { return Fq{1}; }, 200);
  try {
    cf_expand(stream, 5);
    FAIL("expected the precision cap");
  } catch (const ExpansionCapReached& e) {
    CHECK(e.prefix() == std::vector<Polynomial>{P("0", F2()), P("X+1", F2())});
  }
}

TEST_CASE("convergents") {
  auto F = F3();
  auto cf = golden_spec(F).quotients(4);
  auto conv = convergents(cf, 4);
  CHECK(conv[0].P == P("0", F));
  CHECK(conv[0].Q == P("1", F));
  CHECK(conv[1].Q == P("X", F));
  CHECK(conv[2].Q == P("X^2+1", F));
  CHECK(conv[3].Q == P("X^3+2*X", F));
}

TEST_CASE("convergent invariants on random specs") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    auto F = t % 2 ? F2() : F3();
    std::vector<Polynomial> cf{random_poly(rng, F, 2)};
    for (int i = 1; i <= 30; ++i) cf.push_back(random_poly_deg(rng, F, 1 + static_cast<int>(rng() % 3)));
    auto conv = convergents(cf, cf.size());
    int sumdeg = 0;
    for (std::size_t n = 0; n < conv.size(); ++n) {
      const auto& c = conv[n];
      const auto det = c.P * c.prevQ - c.prevP * c.Q;
      REQUIRE(det == Polynomial::constant(F, n % 2 ? 1 : F->neg(1)));
      REQUIRE(gcd(c.P, c.Q).is_one());
      if (n >= 1) sumdeg += cf[n].degree().value();
      REQUIRE(c.Q.degree() == Degree::of(sumdeg));
    }
    // v(f - P_n/Q_n) = deg Q_n + deg Q_{n+1} on the series of the full spec.
    CFSpec spec{cf[0], std::vector<Polynomial>(cf.begin() + 1, cf.end()), std::nullopt};
    const int prec = 2 * sumdeg + 4;
    auto f = cf_reconstruct(spec, prec);
    for (std::size_t n = 0; n + 1 < conv.size(); ++n) {
      const int expected = conv[n].Q.degree().value() + conv[n + 1].Q.degree().value();
      if (expected >= prec) break;
      auto approx = series_from_rational(RationalFunction(conv[n].P, conv[n].Q), prec);
      REQUIRE((f - approx).valuation() == expected);
    }
  }
}

TEST_CASE("cf_reconstruct") {
  auto F = F3();
  auto golden = cf_reconstruct(golden_spec(F), 9);
  CHECK(golden.horizon() >= 9);
  CHECK(golden.agrees_with(golden_by_iteration(F, 9), 9));
  auto e = cf_expand(SeriesSource::generated(SeriesSource::Kind::CfSpec, F, [&](int p) { return cf_reconstruct(golden_spec(F), p); }, "g"), 4);
  CHECK(e.quotients == golden_spec(F).quotients(5));

  auto poly = cf_reconstruct(parse_cf_spec("X^2", F), 5);
  CHECK(poly.is_exact());
  CHECK(poly.as_polynomial() == P("X^2", F));

  auto spec = parse_cf_spec("0; X, X^2", F);
  CHECK(spec.fold() == RationalFunction(P("X^2", F), P("X^3+1", F)));
}

TEST_CASE("roundtrip expand(reconstruct(spec))") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 30; ++t) {
    auto F = t % 2 ? F2() : F3();
    CFSpec spec{random_poly(rng, F, 1), {}, std::vector<Polynomial>{}};
    for (int i = 0; i < 2; ++i) spec.preperiod.push_back(random_poly_deg(rng, F, 1 + static_cast<int>(rng() % 2)));
    for (int i = 0; i < 3; ++i) spec.period->push_back(random_poly_deg(rng, F, 1 + static_cast<int>(rng() % 2)));
    auto src = cf_source(spec);
    auto e = cf_expand(src, 12);
    REQUIRE(e.status == Expansion::Status::Complete);
    REQUIRE(e.quotients == spec.quotients(13));
  }
}

TEST_CASE("expansion is canonical under refinement") {
  auto F = F3();
  auto src = cf_source(doubling_spec(F, 8));
  auto a = cf_expand(src, 6);
  auto b = cf_expand(src, 8);
  REQUIRE(b.quotients.size() >= a.quotients.size());
  for (std::size_t i = 0; i < a.quotients.size(); ++i) CHECK(a.quotients[i] == b.quotients[i]);
  CHECK(b.status == Expansion::Status::Terminated);
  CHECK(b.quotients == doubling_spec(F, 8).quotients(9));
}

TEST_CASE("quadratic sources") {
  auto F = F3();
  // f^2 + X f - 1 = 0 is the golden analogue.
  auto src = quadratic_from_equation(RationalFunction(P("X", F)), RationalFunction(P("-1", F)));
  CHECK(src.kind() == SeriesSource::Kind::Quadratic);
  auto e = cf_expand(src, 20);
  CHECK(e.quotients == golden_spec(F).quotients(21));

  // (f - 1/X)(f - X) = f^2 - (X + 1/X) f + 1: square discriminant, rational root 1/X.
  auto rat = quadratic_from_equation(-RationalFunction(P("X^2+1", F), P("X", F)), RationalFunction(P("1", F)));
  CHECK(rat.kind() == SeriesSource::Kind::Rational);
  auto e2 = cf_expand(rat, 10);
  CHECK(e2.status == Expansion::Status::Terminated);
  CHECK(e2.quotients == std::vector<Polynomial>{P("0", F), P("X", F)});

  CHECK_THROWS_AS(quadratic_from_equation(RationalFunction(P("X", F2())), RationalFunction(P("1", F2()))),
                  std::domain_error);
  // f^2 - X = 0: odd valuation discriminant, no root in the completion.
  CHECK_THROWS_AS(quadratic_from_equation(RationalFunction(Polynomial(F)), RationalFunction(P("-X", F))),
                  std::domain_error);
}
