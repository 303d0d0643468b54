#include "artin/bttree.hpp"

#include <algorithm>
#include <climits>
#include <sstream>
#include <stdexcept>

#include "artin/errors.hpp"

namespace artin {

namespace {

constexpr int kNoValuation = INT_MAX;

// Certified lower bound on v_inf: the lead, the horizon, or +inf.
int lower_valuation(const LaurentSeries& s) {
  if (auto l = s.lead()) return *l;
  if (auto h = s.horizon()) return *h;
  return kNoValuation;
}

// v_inf of an exact series, +inf for zero.
int exact_valuation(const LaurentSeries& s) { return s.lead().value_or(kNoValuation); }

// min(k, v(x - u)); x must be known below k.
int ball_meet(const LaurentSeries& x, const TreeVertex& v) {
  const int k = v.level();
  if (!x.is_exact() && x.extent() < k) throw PrecisionExhausted("boundary point not known deep enough for vertex at level " +
                                               std::to_string(k));
  const auto diff = x - v.center();
  if (auto l = diff.lead(); l && *l < k) return *l;
  return k;
}

}  // namespace

// ---- Mat2 ----

Mat2 Mat2::identity(const FieldRef& F) {
  return {LaurentSeries::constant(F, 1), LaurentSeries::known_zero(F), LaurentSeries::known_zero(F),
          LaurentSeries::constant(F, 1)};
}

Mat2 Mat2::from_polynomials(const Polynomial& a, const Polynomial& b, const Polynomial& c, const Polynomial& d) {
  return {LaurentSeries::from_polynomial(a), LaurentSeries::from_polynomial(b), LaurentSeries::from_polynomial(c),
          LaurentSeries::from_polynomial(d)};
}

Mat2 Mat2::inverse(int want) const {
  const auto D = det();
  if (D.is_known_zero()) throw std::domain_error("singular matrix");
  return {divide(d, D, want), divide(-b, D, want), divide(-c, D, want), divide(a, D, want)};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

std::string Mat2::to_string() const {
  return "[[" + a.to_string() + ", " + b.to_string() + "], [" + c.to_string() + ", " + d.to_string() + "]]";
}

// ---- TreeVertex ----

TreeVertex TreeVertex::ball(const LaurentSeries& center, int level) {
  const auto& F = center.field();
  if (center.extent() < level && !center.is_exact())
    throw PrecisionExhausted("ball center known only to X^-" + std::to_string(center.extent()) +
                             ", level " + std::to_string(level) + " needed");
  const auto lead = center.lead();
  if (!lead || *lead >= level) return TreeVertex(LaurentSeries::known_zero(F), level);
  std::vector<Fq> c;
  const int stop = center.is_exact() ? std::min(level, center.extent()) : level;
  c.reserve(static_cast<std::size_t>(stop - *lead));
  for (int i = *lead; i < stop; ++i) c.push_back(center.coeff(i));
  return TreeVertex(LaurentSeries::exact(F, *lead, std::move(c)), level);
}

int TreeVertex::gap() const {
  const int m = std::min({level_, 0, exact_valuation(center_)});
  return level_ - 2 * m;
}

Mat2 TreeVertex::matrix() const {
  const auto& F = field();
  return {LaurentSeries::monomial(F, 1, level_), center_, LaurentSeries::known_zero(F), LaurentSeries::constant(F, 1)};
}

bool TreeVertex::contains(const LaurentSeries& x) const { return ball_meet(x, *this) >= level_; }

std::string TreeVertex::to_string() const {
  std::ostringstream os;
  os << "B(" << (center_.is_known_zero() ? std::string("0") : center_.to_string()) << ", " << level_ << ")";
  return os.str();
}

// ---- BoundaryPoint ----

BoundaryPoint BoundaryPoint::infinity(const FieldRef& F) { return {true, LaurentSeries::known_zero(F), std::nullopt}; }

BoundaryPoint BoundaryPoint::point(LaurentSeries value) { return {false, std::move(value), std::nullopt}; }

BoundaryPoint BoundaryPoint::from_source(SeriesSource src, int prec) {
  auto v = src.at(prec);
  return {false, std::move(v), std::move(src)};
}

LaurentSeries BoundaryPoint::value_to(int horizon) const {
  if (infinity_ || value_.is_exact() || value_.extent() >= horizon) return value_;
  if (source_) {
    const int ask = std::min(kPrecisionCap, std::max(horizon, 2 * value_.extent()));
    auto fresh = source_->at(ask);
    if (fresh.is_exact() || fresh.extent() > value_.extent()) value_ = fresh;
    if (value_.is_exact() || value_.extent() >= horizon) return value_;
  }
  throw PrecisionExhausted("boundary point known only to X^-" + std::to_string(value_.extent()) + ", " +
                           std::to_string(horizon) + " needed");
}

std::string BoundaryPoint::to_string() const { return infinity_ ? "inf" : value_.to_string(); }

// ---- tree operations ----

TreeVertex vertex_from_matrix(const Mat2& M) {
  const auto D = M.det();
  if (D.is_known_zero()) throw std::domain_error("singular matrix");
  const int vdet = D.valuation();

  // Column-reduce on the second row, pivoting on the entry of least valuation.
  bool use_d;
  const auto lc = M.c.lead(), ld = M.d.lead();
  if (ld && lower_valuation(M.c) >= *ld) use_d = true;
  else if (lc && lower_valuation(M.d) > *lc) use_d = false;
  else throw PrecisionExhausted("cannot certify the pivot of the second row");

  const LaurentSeries& w = use_d ? M.d : M.c;
  const LaurentSeries& top = use_d ? M.b : M.a;
  const int k = vdet - 2 * *w.lead();
  const auto u = divide(top, w, k);
  return TreeVertex::ball(u, k);
}

int tree_distance(const TreeVertex& v1, const TreeVertex& v2) {
  const int m = std::min({v1.level(), v2.level(), exact_valuation(v1.center() - v2.center())});
  return v1.level() + v2.level() - 2 * m;
}

int busemann_infty(const TreeVertex& v) { return v.level(); }

int depth_infty(const TreeVertex& v) { return std::max(0, -v.level()); }

int busemann(const BoundaryPoint& xi, const TreeVertex& x, const TreeVertex& y) {
  if (xi.is_infinity()) return x.level() - y.level();
  const auto val = xi.value_to(std::max(x.level(), y.level()));
  return (x.level() - 2 * ball_meet(val, x)) - (y.level() - 2 * ball_meet(val, y));
}

TreeVertex geodesic_step(const TreeVertex& v, const BoundaryPoint& xi) {
  const int k = v.level();
  if (xi.is_infinity()) return TreeVertex::ball(v.center(), k - 1);
  const auto x = xi.value_to(k + 1);
  if (ball_meet(x, v) >= k) return TreeVertex::ball(x, k + 1);
  return TreeVertex::ball(v.center(), k - 1);
}

TreeVertex apply_mat(const Mat2& g, const TreeVertex& v) { return vertex_from_matrix(g * v.matrix()); }

BoundaryPoint apply_mat(const Mat2& g, const BoundaryPoint& x, int want) {
  const auto& F = g.field();
  if (x.is_infinity()) {
    if (g.c.is_known_zero()) return BoundaryPoint::infinity(F);
    return BoundaryPoint::point(divide(g.a, g.c, want));
  }
  LaurentSeries val = x.value();
  if (x.has_source()) {
    try {
      val = x.value_to(want);
    } catch (const PrecisionExhausted&) {
      val = x.value();
    }
  }
  const auto num = g.a * val + g.b;
  const auto den = g.c * val + g.d;
  if (den.is_known_zero()) return BoundaryPoint::infinity(F);
  return BoundaryPoint::point(divide(num, den, want));
}

Mat2 gamma_f(const LaurentSeries& f) {
  const auto& F = f.field();
  return {LaurentSeries::constant(F, 1), LaurentSeries::known_zero(F), f.inverse(),
          LaurentSeries::constant(F, 1)};
}

int branch_time(const BoundaryPoint& eta1, const BoundaryPoint& eta2, const BoundaryPoint& xi_star,
                const TreeVertex& base) {
  const auto& F = base.field();
  if (eta1.is_infinity() && eta2.is_infinity()) {
    if (xi_star.is_infinity()) throw std::domain_error("branch_time: eta equals xi_star");
    return 0;
  }
  bool refinable = false;
  for (const auto* p : {&eta1, &eta2, &xi_star})
    if (!p->is_infinity() && (p->has_source() || p->value().is_exact())) refinable = true;

  for (int prec = kDefaultPrecision;; prec *= 2) {
    try {
      // h sends xi_star to infinity.
      Mat2 h = Mat2::identity(F);
      if (!xi_star.is_infinity()) {
        LaurentSeries xi = xi_star.value();
        if (xi_star.has_source()) {
          try {
            xi = xi_star.value_to(prec);
          } catch (const PrecisionExhausted&) {
          }
        }
        h = {LaurentSeries::known_zero(F), LaurentSeries::constant(F, 1), LaurentSeries::constant(F, 1), -xi};
      }
      const int L = apply_mat(h, base).level();
      const auto x1 = apply_mat(h, eta1, prec);
      const auto x2 = apply_mat(h, eta2, prec);
      if (x1.is_infinity() || x2.is_infinity()) throw std::domain_error("branch_time: eta equals xi_star");
      const auto diff = x1.value() - x2.value();
      if (diff.is_known_zero()) return 0;
      if (auto l = diff.lead()) return std::max(0, L - *l);
      if (diff.extent() >= L) return 0;
      throw PrecisionExhausted("branch_time: boundary points agree to X^-" + std::to_string(diff.extent()) +
                               ", need X^-" + std::to_string(L));
    } catch (const PrecisionExhausted&) {
      if (!refinable || prec >= kPrecisionCap) throw;
    }
  }
}

}  // namespace artin
