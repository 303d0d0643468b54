#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "artin/bttree.hpp"
#include "artin/laurent.hpp"
#include "artin/polynomial.hpp"
#include "artin/series_source.hpp"

namespace artin {

// 2x2 matrix over A = F_q[X].
struct PolyMat2 {
  Polynomial a, b, c, d;

  static PolyMat2 identity(const FieldRef& F);
  Polynomial det() const { return a * d - b * c; }
  // Largest entry degree (-1 for the zero matrix).
  int max_degree() const;
  Mat2 to_mat2() const { return Mat2::from_polynomials(a, b, c, d); }
  friend PolyMat2 operator*(const PolyMat2& x, const PolyMat2& y);
  bool operator==(const PolyMat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  std::string to_string() const;
};

// The rows of M as generators of an A-module; gamma in SL_2(A) acts by left
// multiplication. The O-lattice M O^2 and this module determine each other
// up to the right action of GL_2(O), which preserves row norms.
struct ALatticeBasis {
  std::array<LaurentSeries, 2> r1, r2;
  int detval;

  static ALatticeBasis from_matrix(const Mat2& M);
  Mat2 matrix() const { return {r1[0], r1[1], r2[0], r2[1]}; }
};

// Row norm ||(x, y)|| = q^N with N = -min(v(x), v(y)).
int row_norm_exponent(const LaurentSeries& x, const LaurentSeries& y);

struct ReductionResult {
  // gamma0 * M has orthogonal rows, the larger one first, so that
  // [gamma0 M O^2] = [O x X^-delta O].
  PolyMat2 gamma0;
  Mat2 reduced;
  int delta = 0;
  // Norm exponents of the two successive minima, n1 <= n2; n1 + n2 = -detval.
  int n1 = 0, n2 = 0;
  int steps = 0;
  // Sum of the row norm exponents before reduction.
  int initial_norm_sum = 0;
  bool certified = true;
};

// Lagrange reduction of the row module. Each step replaces the longer row r
// by r - t s, t the polynomial part of a coordinate ratio, which strictly
// lowers the sum of the norm exponents; that sum is bounded below by -detval,
// so the step count is at most initial_norm_sum + detval.
ReductionResult gauss_reduce(const ALatticeBasis& L);
ReductionResult gauss_reduce(const Mat2& M);

int delta_invariant(const Mat2& M);
int delta_invariant(const TreeVertex& v);

struct CongruenceReport {
  int delta = 0;
  int delta_q = 0;
  // Whether some gamma in the congruence subgroup sends the lattice to
  // [O x X^-delta O] (for delta = 0 this can hold while delta_q is 0).
  bool reachable = false;
  PolyMat2 gamma0;
};

// Delta_{Q*}: delta if the reduced word can be corrected by a stabilizer of
// [O x X^-delta O] into Gamma^0_{Q*} = {c = 0 mod Q*}, else 0.
CongruenceReport delta_congruence_report(const Mat2& M, const Polynomial& Qstar);
int delta_congruence(const Mat2& M, const Polynomial& Qstar);

inline constexpr std::int64_t kBruteForceBudget = std::int64_t{1} << 20;

struct BruteForceResult {
  int delta = 0;
  // Set when a congruence modulus was given.
  std::optional<int> delta_q;
  // A determinant-one gamma attaining the minimal gap (congruent when the
  // modulus-filtered search found one).
  PolyMat2 witness;
  std::int64_t rows_enumerated = 0;
};

// Independent oracle: the minimum over gamma in SL_2(A) with entries of
// degree <= degcap of the distance from [O^2] to [gamma M O^2]. The distance
// is v(det M) + 2 max(N(row1), N(row2)) for the rows of gamma M, so rows are
// enumerated once and pairs with constant determinant are searched in order
// of their larger norm. With a modulus, the pairs at the minimal level whose
// lower-left entry is divisible by it are tested for landing on the ray
// vertex. Throws BudgetExceeded when q^(2 (degcap + 1)) exceeds `budget`.
BruteForceResult brute_force(const Mat2& M, int degcap, const std::optional<Polynomial>& Qstar = std::nullopt,
                             std::int64_t budget = kBruteForceBudget);
int brute_force_delta(const Mat2& M, int degcap, const std::optional<Polynomial>& Qstar = std::nullopt,
                      std::int64_t budget = kBruteForceBudget);

// u_g = gamma_f (1 g; 0 1) gamma_f^-1 = (1 - g/f, g; -g/f^2, 1 + g/f).
Mat2 unipotent_lattice(const LaurentSeries& f, const LaurentSeries& g);
Mat2 unipotent_lattice(const SeriesSource& f, const LaurentSeries& g, int prec);

}  // namespace artin
