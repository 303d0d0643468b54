#pragma once

#include <optional>
#include <string>

#include "artin/laurent.hpp"
#include "artin/polynomial.hpp"
#include "artin/series_source.hpp"

namespace artin {

// 2x2 matrix over F_q((X^-1)), acting on column vectors.
struct Mat2 {
  LaurentSeries a, b, c, d;

  static Mat2 identity(const FieldRef& F);
  static Mat2 from_polynomials(const Polynomial& a, const Polynomial& b, const Polynomial& c, const Polynomial& d);
  const FieldRef& field() const { return a.field(); }
  LaurentSeries det() const { return a * d - b * c; }
  // Adjugate divided by the determinant, certified to `want` where possible.
  Mat2 inverse(int want = kDefaultPrecision) const;
  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  std::string to_string() const;
};

// A vertex of the Bruhat-Tits tree of PGL_2 over F_q((X^-1)).
//
// Homothety classes of O-lattices correspond one-to-one with closed balls
// center + X^{-level} O of F_q((X^-1)): the class of the lattice spanned by
// the columns of [[X^{-level}, center], [0, 1]]. The canonical form keeps
// only the center's terms with index < level, so equal vertices have equal
// fields. [O^2] is the ball O (level 0, center 0) and the ray towards
// infinity is [O x X^{-n} O] = the ball X^n O (level -n).
class TreeVertex {
 public:
  // `center` must be known at every index below `level`.
  static TreeVertex ball(const LaurentSeries& center, int level);
  static TreeVertex root(const FieldRef& F) { return ball(LaurentSeries::known_zero(F), 0); }
  // [O x X^{-n} O].
  static TreeVertex ray(const FieldRef& F, int n) { return ball(LaurentSeries::known_zero(F), -n); }

  int level() const { return level_; }
  const LaurentSeries& center() const { return center_; }
  const FieldRef& field() const { return center_.field(); }
  // Distance to [O^2].
  int gap() const;
  Mat2 matrix() const;
  // Whether x lies in this vertex's ball; x must be known below `level`.
  bool contains(const LaurentSeries& x) const;

  bool operator==(const TreeVertex& o) const { return level_ == o.level_ && center_.identical(o.center_); }
  std::string to_string() const;

 private:
  TreeVertex(LaurentSeries center, int level) : center_(std::move(center)), level_(level) {}
  LaurentSeries center_;
  int level_;
};

// A point of P^1(F_q((X^-1))) = boundary of the tree. Finite points may carry
// a SeriesSource so that more digits can be pulled when a branch decision
// needs them.
class BoundaryPoint {
 public:
  static BoundaryPoint infinity(const FieldRef& F);
  static BoundaryPoint point(LaurentSeries value);
  static BoundaryPoint from_source(SeriesSource src, int prec = kDefaultPrecision);

  bool is_infinity() const { return infinity_; }
  const FieldRef& field() const { return value_.field(); }
  const LaurentSeries& value() const { return value_; }
  bool has_source() const { return source_.has_value(); }
  // The value known at least to `horizon`, regenerating from the source if
  // needed. Throws PrecisionExhausted when that is impossible.
  LaurentSeries value_to(int horizon) const;

  std::string to_string() const;

 private:
  BoundaryPoint(bool inf, LaurentSeries v, std::optional<SeriesSource> src)
      : infinity_(inf), value_(std::move(v)), source_(std::move(src)) {}
  bool infinity_;
  // Digits pulled from the source are cached here.
  mutable LaurentSeries value_;
  std::optional<SeriesSource> source_;
};

// [M O^2]: the class of the lattice spanned by the columns of M.
TreeVertex vertex_from_matrix(const Mat2& M);

int tree_distance(const TreeVertex& v1, const TreeVertex& v2);

// beta_inf(v, [O^2]); equals v.level().
int busemann_infty(const TreeVertex& v);
// max(0, -beta_inf(v, [O^2])): depth inside the horoball HB_inf whose
// boundary contains [O^2].
int depth_infty(const TreeVertex& v);
// Busemann cocycle beta_xi(x, y) = lim d(x, xi_t) - d(y, xi_t).
int busemann(const BoundaryPoint& xi, const TreeVertex& x, const TreeVertex& y);

// The neighbour of v one step closer to xi.
TreeVertex geodesic_step(const TreeVertex& v, const BoundaryPoint& xi);

// Branch time of the geodesic lines from xi_star to eta1 and eta2, with time
// 0 on the horosphere centred at xi_star through `base`: the least t >= 0
// such that both lines agree at every time <= -t.
int branch_time(const BoundaryPoint& eta1, const BoundaryPoint& eta2, const BoundaryPoint& xi_star,
                const TreeVertex& base);

TreeVertex apply_mat(const Mat2& g, const TreeVertex& v);
// Moebius action (a x + b) / (c x + d); the pole maps to infinity.
BoundaryPoint apply_mat(const Mat2& g, const BoundaryPoint& x, int want = kDefaultPrecision);

// gamma_f = [[1, 0], [1/f, 1]]: maps infinity to f and fixes 0.
Mat2 gamma_f(const LaurentSeries& f);

}  // namespace artin
