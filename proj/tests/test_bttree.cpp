#include <doctest.h>

#include "artin/bttree.hpp"
#include "artin/errors.hpp"
#include "support.hpp"

using namespace testing;

namespace {

LaurentSeries mono(const FieldRef& F, int index, Fq c = 1) { return LaurentSeries::monomial(F, c, index); }

TreeVertex random_vertex(std::mt19937_64& rng, const FieldRef& F) {
  const int level = static_cast<int>(rng() % 13) - 6;
  const int first = level - 1 - static_cast<int>(rng() % 8);
  std::vector<Fq> c(static_cast<std::size_t>(level - first));
  for (auto& x : c) x = static_cast<Fq>(rng() % F->size());
  return TreeVertex::ball(LaurentSeries::exact(F, first, c), level);
}

Mat2 random_poly_mat(std::mt19937_64& rng, const FieldRef& F, int max_deg) {
  for (;;) {
    auto m = Mat2::from_polynomials(random_poly(rng, F, max_deg), random_poly(rng, F, max_deg),
                                    random_poly(rng, F, max_deg), random_poly(rng, F, max_deg));
    if (!m.det().is_known_zero()) return m;
  }
}

// Element of SL_2(A) as a product of elementary matrices.
Mat2 random_sl2a(std::mt19937_64& rng, const FieldRef& F) {
  Mat2 m = Mat2::identity(F);
  const auto one = LaurentSeries::constant(F, 1);
  const auto zero = LaurentSeries::known_zero(F);
  for (int i = 0; i < 3; ++i) {
    const auto t = LaurentSeries::from_polynomial(random_poly(rng, F, 2));
    m = m * (i % 2 == 0 ? Mat2{one, t, zero, one} : Mat2{one, zero, t, one});
  }
  return m;
}

// Random element of GL_2(O): entries are polynomials in X^-1 and the
// determinant is a unit.
Mat2 random_gl2o(std::mt19937_64& rng, const FieldRef& F) {
  auto entry = [&] {
    std::vector<Fq> c(4);
    for (auto& x : c) x = static_cast<Fq>(rng() % F->size());
    return LaurentSeries::exact(F, 0, c);
  };
  for (;;) {
    Mat2 k{entry(), entry(), entry(), entry()};
    const auto d = k.det();
    if (d.lead() && *d.lead() == 0) return k;
  }
}

BoundaryPoint ug_any(const FieldRef& F) { return BoundaryPoint::point(LaurentSeries::monomial(F, 1, 2)); }

}  // namespace

TEST_CASE("vertex_from_matrix canonical forms") {
  const auto F = F3();
  const auto root = vertex_from_matrix(Mat2::identity(F));
  CHECK(root == TreeVertex::root(F));
  CHECK(root.gap() == 0);

  for (int n = 0; n <= 6; ++n) {
    Mat2 diag{mono(F, 0), LaurentSeries::known_zero(F), LaurentSeries::known_zero(F), mono(F, n)};
    const auto v = vertex_from_matrix(diag);
    CHECK(v == TreeVertex::ray(F, n));
    CHECK(v.gap() == n);
    CHECK(v.center().is_known_zero());
  }

  Mat2 sing{mono(F, 0), mono(F, 1), mono(F, 0), mono(F, 1)};
  CHECK_THROWS_AS(vertex_from_matrix(sing), std::domain_error);
}

TEST_CASE("vertex_from_matrix ignores right multiplication by GL2(O) and scalars") {
  std::mt19937_64 rng(11);
  for (const auto& F : {F2(), F3(), F5()}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto M = random_poly_mat(rng, F, 3);
      const auto v = vertex_from_matrix(M);
      CHECK(vertex_from_matrix(M * random_gl2o(rng, F)) == v);
      const auto s = mono(F, static_cast<int>(rng() % 7) - 3, 1 + static_cast<Fq>(rng() % (F->size() - 1)));
      CHECK(vertex_from_matrix(Mat2{s * M.a, s * M.b, s * M.c, s * M.d}) == v);
      // The canonical matrix gives back the same vertex.
      CHECK(vertex_from_matrix(v.matrix()) == v);
    }
  }
}

TEST_CASE("vertex_from_matrix needs certified entries") {
  const auto F = F2();
  // Second row entries both unknown at the precision given.
  Mat2 m{mono(F, 0), LaurentSeries::known_zero(F), LaurentSeries::zero_to(F, 3), LaurentSeries::zero_to(F, 3)};
  CHECK_THROWS_AS(vertex_from_matrix(m), PrecisionExhausted);
}

TEST_CASE("tree_distance examples and metric axioms") {
  const auto F = F2();
  const auto root = TreeVertex::root(F);
  CHECK(tree_distance(root, TreeVertex::ray(F, 1)) == 1);
  for (int n = 0; n < 10; ++n) CHECK(tree_distance(root, TreeVertex::ray(F, n)) == n);

  std::mt19937_64 rng(5);
  for (const auto& G : {F2(), F3()}) {
    for (int trial = 0; trial < 500; ++trial) {
      const auto x = random_vertex(rng, G), y = random_vertex(rng, G), z = random_vertex(rng, G);
      CHECK(tree_distance(x, x) == 0);
      CHECK(tree_distance(x, y) == tree_distance(y, x));
      CHECK((tree_distance(x, y) == 0) == (x == y));
      CHECK(tree_distance(x, z) <= tree_distance(x, y) + tree_distance(y, z));
      CHECK(tree_distance(TreeVertex::root(G), x) == x.gap());
      const auto g = random_poly_mat(rng, G, 2);
      CHECK(tree_distance(apply_mat(g, x), apply_mat(g, y)) == tree_distance(x, y));
    }
  }
}

TEST_CASE("tree_distance matches the elementary divisor gap") {
  // d(M1 O^2, M2 O^2) = |a - b| where X^-a, X^-b are the elementary divisors
  // of M1^-1 M2; with polynomial entries a + b = v(det) and min(a, b) is the
  // least valuation of an entry.
  std::mt19937_64 rng(17);
  const auto F = F3();
  for (int trial = 0; trial < 200; ++trial) {
    const auto M = random_poly_mat(rng, F, 3);
    int mn = INT32_MAX;
    for (const auto* e : {&M.a, &M.b, &M.c, &M.d})
      if (auto l = e->lead()) mn = std::min(mn, *l);
    const int sum = M.det().valuation();
    CHECK(tree_distance(TreeVertex::root(F), vertex_from_matrix(M)) == sum - 2 * mn);
  }
}

TEST_CASE("busemann toward infinity and depth") {
  const auto F = F2();
  for (int n = 0; n < 8; ++n) CHECK(depth_infty(TreeVertex::ray(F, n)) == n);
  CHECK(depth_infty(TreeVertex::root(F)) == 0);
  CHECK(busemann_infty(TreeVertex::root(F)) == 0);

  // (1 0; X 1) applied to [O x X^-1 O]: Hermite form by hand is the ball
  // X^-1 + X^-3 O.
  Mat2 g{mono(F, 0), LaurentSeries::known_zero(F), mono(F, -1), mono(F, 0)};
  const auto v = apply_mat(g, TreeVertex::ray(F, 1));
  CHECK(v == TreeVertex::ball(mono(F, 1), 3));
  CHECK(depth_infty(v) == 0);

  const auto inf = BoundaryPoint::infinity(F);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto x = random_vertex(rng, F), y = random_vertex(rng, F), z = random_vertex(rng, F);
    CHECK(busemann(inf, x, y) + busemann(inf, y, z) == busemann(inf, x, z));
    CHECK(busemann(inf, x, TreeVertex::root(F)) == busemann_infty(x));
  }
}

TEST_CASE("busemann toward a finite point is a cocycle bounded by the distance") {
  std::mt19937_64 rng(4);
  const auto F = F3();
  for (int trial = 0; trial < 500; ++trial) {
    const auto xi = BoundaryPoint::point(random_series(rng, F, static_cast<int>(rng() % 9) - 4, 40));
    const auto x = random_vertex(rng, F), y = random_vertex(rng, F), z = random_vertex(rng, F);
    CHECK(busemann(xi, x, y) + busemann(xi, y, z) == busemann(xi, x, z));
    CHECK(std::abs(busemann(xi, x, y)) <= tree_distance(x, y));
  }
}

TEST_CASE("geodesic_step") {
  const auto F = F2();
  const auto root = TreeVertex::root(F);
  const auto inf = BoundaryPoint::infinity(F);
  const auto zero = BoundaryPoint::point(LaurentSeries::known_zero(F));
  CHECK(geodesic_step(root, inf) == TreeVertex::ray(F, 1));
  // Toward 0: the lattice X^-1 O x O.
  const auto to0 = geodesic_step(root, zero);
  Mat2 m{mono(F, 1), LaurentSeries::known_zero(F), LaurentSeries::known_zero(F), mono(F, 0)};
  CHECK(to0 == vertex_from_matrix(m));
  CHECK(tree_distance(root, to0) == 1);

  auto v = root;
  for (int n = 1; n <= 10; ++n) {
    v = geodesic_step(v, inf);
    CHECK(v == TreeVertex::ray(F, n));
  }

  std::mt19937_64 rng(8);
  for (const auto& G : {F2(), F5()}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto xi = BoundaryPoint::point(random_series(rng, G, static_cast<int>(rng() % 7) - 3, 60));
      const auto start = random_vertex(rng, G);
      auto w = start;
      for (int j = 1; j <= 20; ++j) {
        const auto next = geodesic_step(w, xi);
        CHECK(busemann(xi, next, w) == -1);
        w = next;
        CHECK(tree_distance(start, w) == j);
      }
      // Far enough along, the walk is on the ray [root, xi).
      CHECK(w.contains(xi.value()));
    }
  }
}

TEST_CASE("geodesic_step needs digits of xi") {
  const auto F = F2();
  const auto xi = BoundaryPoint::point(LaurentSeries::truncated(F, 1, {1, 0, 1}, 4));
  auto v = TreeVertex::root(F);
  for (int i = 0; i < 3; ++i) v = geodesic_step(v, xi);
  CHECK(v.level() == 3);
  v = geodesic_step(v, xi);
  CHECK_THROWS_AS(geodesic_step(v, xi), PrecisionExhausted);

  // With a source behind it the point refines itself.
  const auto g = BoundaryPoint::from_source(cf_source(golden_spec(F)), 8);
  auto w = TreeVertex::root(F);
  for (int i = 0; i < 100; ++i) w = geodesic_step(w, g);
  CHECK(w.level() == 100);
}

TEST_CASE("conjugated depth toward a rational cusp") {
  std::mt19937_64 rng(21);
  const auto F = F3();
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_sl2a(rng, F);
    const auto ginv = g.inverse();
    BoundaryPoint xi = BoundaryPoint::infinity(F);
    if (!g.c.is_known_zero()) {
      const auto r = RationalFunction(*g.a.as_polynomial(), *g.c.as_polynomial());
      xi = BoundaryPoint::from_source(SeriesSource::rational(r));
    }
    const auto base = apply_mat(g, TreeVertex::root(F));
    const auto v = random_vertex(rng, F);
    const int depth_xi = std::max(0, -busemann(xi, v, base));
    CHECK(depth_xi == depth_infty(apply_mat(ginv, v)));
  }
}

TEST_CASE("actions of gamma_f and u_g") {
  const auto F = F3();
  const auto f = cf_reconstruct(golden_spec(F), 120);
  const auto gf = gamma_f(f);
  const auto img_inf = apply_mat(gf, BoundaryPoint::infinity(F));
  CHECK(img_inf.value().agrees_with(f, 100));
  const auto img0 = apply_mat(gf, BoundaryPoint::point(LaurentSeries::known_zero(F)));
  CHECK(img0.value().is_known_zero());

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = LaurentSeries::from_polynomial(random_poly_deg(rng, F, static_cast<int>(rng() % 5)));
    const Mat2 n{mono(F, 0), g, LaurentSeries::known_zero(F), mono(F, 0)};
    const auto ug = gf * n * gf.inverse(120);
    const auto img = apply_mat(ug, BoundaryPoint::point(LaurentSeries::known_zero(F)), 100);
    const auto expect = divide(f * g, f + g, 100);
    CHECK(img.value().agrees_with(expect, 80));
  }
}

TEST_CASE("branch_time") {
  const auto F = F2();
  const auto src = cf_source(golden_spec(F));
  const auto xi = BoundaryPoint::from_source(src);
  const auto& f = xi.value();
  const auto base = apply_mat(gamma_f(f), TreeVertex::root(F));
  const auto zero = BoundaryPoint::point(LaurentSeries::known_zero(F));

  std::mt19937_64 rng(31);
  for (int d = 0; d <= 6; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto g = LaurentSeries::from_polynomial(random_poly_deg(rng, F, d));
      const auto ug0 = BoundaryPoint::point(divide(f * g, f + g, 60));
      CHECK(branch_time(ug0, zero, xi, base) == d);
      CHECK(branch_time(ug0, ug0, xi, base) == 0);
    }
  }
  CHECK(branch_time(zero, zero, xi, base) == 0);
  CHECK_THROWS_AS(branch_time(zero, ug_any(F), zero, base), std::domain_error);

  // Ultrametric inequality on random boundary triples, both for xi_star = inf
  // and a finite xi_star.
  for (const auto& G : {F2(), F3()}) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto base_v = random_vertex(rng, G);
      const auto star = trial % 2 ? BoundaryPoint::infinity(G)
                                  : BoundaryPoint::point(random_series(rng, G, -2, 50));
      std::vector<BoundaryPoint> eta;
      const auto common = random_series(rng, G, -3, 50);
      for (int i = 0; i < 3; ++i) {
        // Share a random number of leading digits so branch times vary.
        const int keep = static_cast<int>(rng() % 8);
        auto tail = random_series(rng, G, -3 + keep, 50 - keep);
        eta.push_back(BoundaryPoint::point(TreeVertex::ball(common, -3 + keep).center() + tail));
      }
      const int d12 = branch_time(eta[0], eta[1], star, base_v);
      const int d23 = branch_time(eta[1], eta[2], star, base_v);
      const int d13 = branch_time(eta[0], eta[2], star, base_v);
      CHECK(d13 <= std::max(d12, d23));
      CHECK(d12 == branch_time(eta[1], eta[0], star, base_v));
    }
  }
}
