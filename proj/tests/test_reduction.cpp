#include <doctest.h>

#include <chrono>

#include "artin/bttree.hpp"
#include "artin/errors.hpp"
#include "artin/reduction.hpp"
#include "support.hpp"

using namespace testing;

namespace {

Mat2 pm(const FieldRef& F, const char* a, const char* b, const char* c, const char* d) {
  return Mat2::from_polynomials(P(a, F), P(b, F), P(c, F), P(d, F));
}

Mat2 random_lattice(std::mt19937_64& rng, const FieldRef& F, int max_deg) {
  for (;;) {
    auto m = Mat2::from_polynomials(random_poly(rng, F, max_deg), random_poly(rng, F, max_deg),
                                    random_poly(rng, F, max_deg), random_poly(rng, F, max_deg));
    if (!m.det().is_known_zero()) return m;
  }
}

PolyMat2 random_sl2a(std::mt19937_64& rng, const FieldRef& F, int words, int deg) {
  auto g = PolyMat2::identity(F);
  const auto one = Polynomial::constant(F, 1), zero = Polynomial(F);
  for (int i = 0; i < words; ++i) {
    const auto t = random_poly(rng, F, deg);
    g = g * (i % 2 ? PolyMat2{one, t, zero, one} : PolyMat2{one, zero, t, one});
  }
  return g;
}

}  // namespace

TEST_CASE("gauss_reduce examples") {
  const auto F = F3();
  auto r = gauss_reduce(Mat2::identity(F));
  CHECK(r.delta == 0);
  CHECK(r.gamma0.det() == Polynomial::constant(F, 1));

  r = gauss_reduce(pm(F, "1", "0", "X", "1"));
  CHECK(r.delta == 0);
  CHECK(r.steps == 1);
  CHECK(brute_force_delta(pm(F, "1", "0", "X", "1"), 3) == 0);

  r = gauss_reduce(pm(F, "X", "0", "0", "1"));
  CHECK(r.delta == 1);
  CHECK(r.steps == 0);
  CHECK(brute_force_delta(pm(F, "X", "0", "0", "1"), 3) == 1);

  CHECK(brute_force_delta(Mat2::identity(F), 0) == 0);
  CHECK(brute_force_delta(Mat2::identity(F), 2) == 0);
  CHECK(brute_force_delta(pm(F, "X^2", "0", "0", "1"), 0) == 2);
}

TEST_CASE("delta of ray vertices") {
  std::mt19937_64 rng(1);
  for (const auto& F : {F2(), F3()}) {
    CHECK(delta_invariant(TreeVertex::root(F)) == 0);
    for (int n = 0; n <= 8; ++n) {
      const auto v = TreeVertex::ray(F, n);
      CHECK(delta_invariant(v) == n);
      for (int trial = 0; trial < 20; ++trial) {
        const auto g = random_sl2a(rng, F, 4, 2);
        CHECK(delta_invariant(g.to_mat2() * v.matrix()) == n);
      }
    }
  }
}

TEST_CASE("gauss_reduce postconditions on random lattices") {
  std::mt19937_64 rng(2);
  for (const auto& F : {F2(), F3(), F5()}) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto M = random_lattice(rng, F, 5);
      const auto r = gauss_reduce(M);
      const int detval = M.det().valuation();
      CHECK(r.gamma0.det() == Polynomial::constant(F, 1));
      CHECK(r.n1 + r.n2 == -detval);
      CHECK(r.delta == r.n2 - r.n1);
      CHECK(r.delta >= 0);
      CHECK(r.steps <= r.initial_norm_sum + detval);
      CHECK(vertex_from_matrix(r.gamma0.to_mat2() * M) == TreeVertex::ray(F, r.delta));
      // Invariance under SL_2(A) and scalars.
      const auto g = random_sl2a(rng, F, 3, 3);
      CHECK(delta_invariant(g.to_mat2() * M) == r.delta);
      const auto s = LaurentSeries::monomial(F, 1 + static_cast<Fq>(rng() % (F->size() - 1)),
                                             static_cast<int>(rng() % 9) - 4);
      CHECK(delta_invariant(Mat2{s * M.a, s * M.b, s * M.c, s * M.d}) == r.delta);
      // Delta is the distance from [O^2] to the orbit's ray vertex, so never
      // more than the distance to the lattice itself.
      CHECK(r.delta <= tree_distance(TreeVertex::root(F), vertex_from_matrix(M)));
    }
  }
}

TEST_CASE("delta is invariant under GL2(O) on the right and series scalars") {
  std::mt19937_64 rng(3);
  const auto F = F3();
  for (int trial = 0; trial < 100; ++trial) {
    const auto M = random_lattice(rng, F, 4);
    const int d = delta_invariant(M);
    const auto lam = random_series(rng, F, static_cast<int>(rng() % 5) - 2, 40);
    const Mat2 scaled{lam * M.a, lam * M.b, lam * M.c, lam * M.d};
    CHECK(delta_invariant(scaled) == d);
  }
}

TEST_CASE("brute force agrees with reduction") {
  std::mt19937_64 rng(4);
  for (const auto& F : {F2(), F3()}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto M = random_lattice(rng, F, 3);
      const auto bf = brute_force(M, 2);
      const auto r = gauss_reduce(M);
      // The enumeration only sees gamma of degree <= 2; it can only
      // overestimate, and is exact once gamma0 is inside the box.
      CHECK(bf.delta >= r.delta);
      if (r.gamma0.max_degree() <= 2) CHECK(bf.delta == r.delta);
      CHECK(brute_force(M, std::max(2, r.gamma0.max_degree())).delta == r.delta);
      CHECK(bf.witness.det() == Polynomial::constant(F, 1));
      CHECK(tree_distance(TreeVertex::root(F), vertex_from_matrix(bf.witness.to_mat2() * M)) == bf.delta);
    }
  }
  CHECK_THROWS_AS(brute_force(Mat2::identity(F3()), 10), BudgetExceeded);
}

TEST_CASE("delta_congruence") {
  const auto F = F3();
  const auto Xq = P("X", F);
  const auto one = P("1", F);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto M = random_lattice(rng, F, 3);
    CHECK(delta_congruence(M, one) == delta_invariant(M));
    const int dq = delta_congruence(M, Xq);
    CHECK((dq == 0 || dq == delta_invariant(M)));
  }
  // O x X^-1 O with Q* = X.
  const auto ray1 = TreeVertex::ray(F, 1).matrix();
  CHECK(delta_congruence(ray1, Xq) == 1);
  CHECK(brute_force_delta(ray1, 3, Xq) == 1);
  // gamma with lower-left entry 1 moves it off the congruence orbit.
  const auto g = pm(F, "0", "2", "1", "0");
  CHECK(delta_congruence(g * ray1, Xq) == 0);
  CHECK(brute_force_delta(g * ray1, 3, Xq) == 0);
  CHECK(delta_congruence(g * ray1, one) == 1);
  CHECK_THROWS_AS(delta_congruence(ray1, Polynomial(F)), std::domain_error);
}

TEST_CASE("delta_congruence matches the brute-force congruence oracle") {
  std::mt19937_64 rng(6);
  for (const auto& F : {F2(), F3()}) {
    const auto Q = F->size() == 2 ? P("X^2+X+1", F) : P("X", F);
    for (int trial = 0; trial < 40; ++trial) {
      // Lattices on the SL_2(A)-orbit of a ray vertex, through a short word.
      const int n = 1 + static_cast<int>(rng() % 3);
      const auto g = random_sl2a(rng, F, 2, 1);
      const auto M = g.to_mat2() * TreeVertex::ray(F, n).matrix();
      CHECK(brute_force_delta(M, 2, Q) == delta_congruence(M, Q));
    }
  }
}

TEST_CASE("unipotent lattice") {
  const auto F = F3();
  const auto src = cf_source(golden_spec(F));
  const auto f = src.at(200);
  const auto u0 = unipotent_lattice(f, LaurentSeries::known_zero(F));
  CHECK(u0.a.identical(LaurentSeries::constant(F, 1)));
  CHECK(u0.b.is_known_zero());
  CHECK(u0.c.is_known_zero());

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = LaurentSeries::from_polynomial(random_poly_deg(rng, F, 1 + static_cast<int>(rng() % 6)));
    const auto u = unipotent_lattice(src, g, 200);
    const auto det = u.det();
    CHECK(det.valuation() == 0);
    CHECK(det.agrees_with(LaurentSeries::constant(F, 1), *det.horizon()));
    CHECK(*det.horizon() >= 150);
    const auto img = apply_mat(u, BoundaryPoint::point(LaurentSeries::known_zero(F)), 150);
    CHECK(img.value().agrees_with(divide(f * g, f + g, 150), 140));
  }
}
