#include "artin/reduction.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "artin/errors.hpp"

namespace artin {

namespace {

int lower_valuation(const LaurentSeries& s) {
  if (auto l = s.lead()) return *l;
  if (auto h = s.horizon()) return *h;
  return INT_MAX;
}

bool known_at(const LaurentSeries& s, int i) { return s.is_exact() || s.extent() > i; }

struct RowLead {
  int N;
  std::array<Fq, 2> lead;
  int first;  // first coordinate with a nonzero leading coefficient
};

RowLead row_lead(const LaurentSeries& x, const LaurentSeries& y) {
  if (x.is_known_zero() && y.is_known_zero()) throw std::domain_error("singular lattice: zero row");
  const int m = std::min(lower_valuation(x), lower_valuation(y));
  const bool hit = (x.lead() && *x.lead() == m) || (y.lead() && *y.lead() == m);
  if (!hit || !known_at(x, m) || !known_at(y, m))
    throw PrecisionExhausted("row norm not certified at X^-" + std::to_string(m));
  RowLead r{-m, {x.coeff(m), y.coeff(m)}, 0};
  r.first = r.lead[0] != 0 ? 0 : 1;
  return r;
}

bool dependent(const Field& F, const std::array<Fq, 2>& u, const std::array<Fq, 2>& v) {
  return F.sub(F.mul(u[0], v[1]), F.mul(u[1], v[0])) == 0;
}

}  // namespace

PolyMat2 PolyMat2::identity(const FieldRef& F) {
  return {Polynomial::constant(F, 1), Polynomial(F), Polynomial(F), Polynomial::constant(F, 1)};
}

PolyMat2 operator*(const PolyMat2& x, const PolyMat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

int PolyMat2::max_degree() const {
  int m = -1;
  for (const auto* p : {&a, &b, &c, &d})
    if (!p->is_zero()) m = std::max(m, p->degree().value());
  return m;
}

std::string PolyMat2::to_string() const {
  return "[[" + a.to_string() + ", " + b.to_string() + "], [" + c.to_string() + ", " + d.to_string() + "]]";
}

ALatticeBasis ALatticeBasis::from_matrix(const Mat2& M) {
  const auto D = M.det();
  if (D.is_known_zero()) throw std::domain_error("singular lattice");
  return {{M.a, M.b}, {M.c, M.d}, D.valuation()};
}

int row_norm_exponent(const LaurentSeries& x, const LaurentSeries& y) { return row_lead(x, y).N; }

ReductionResult gauss_reduce(const ALatticeBasis& L) {
  const auto& F = L.r1[0].field();
  const Field& fld = *F;
  std::array<std::array<LaurentSeries, 2>, 2> r{L.r1, L.r2};
  std::array<std::array<Polynomial, 2>, 2> g{{{Polynomial::constant(F, 1), Polynomial(F)},
                                               {Polynomial(F), Polynomial::constant(F, 1)}}};
  int steps = 0;
  const int initial_norm_sum = row_lead(r[0][0], r[0][1]).N + row_lead(r[1][0], r[1][1]).N;

  for (;;) {
    auto l0 = row_lead(r[0][0], r[0][1]);
    auto l1 = row_lead(r[1][0], r[1][1]);
    // Shorter row first; ties go to the smaller leading coordinate index.
    if (std::make_pair(l1.N, l1.first) < std::make_pair(l0.N, l0.first)) {
      std::swap(r[0], r[1]);
      std::swap(g[0], g[1]);
      std::swap(l0, l1);
    }
    if (!dependent(fld, l0.lead, l1.lead)) break;
    const int j = l0.first;
    const auto q = divide(r[1][j], r[0][j], 1);
    if (!known_at(q, 0)) throw PrecisionExhausted("reduction quotient not certified");
    const Polynomial t = q.integral_fractional().first;
    const auto ts = LaurentSeries::from_polynomial(t);
    for (int k = 0; k < 2; ++k) {
      r[1][k] = r[1][k] - ts * r[0][k];
      g[1][k] = g[1][k] - t * g[0][k];
    }
    ++steps;
    if (steps > initial_norm_sum + L.detval)
      throw std::logic_error("gauss_reduce: step bound exceeded");
  }

  const auto l0 = row_lead(r[0][0], r[0][1]);
  const auto l1 = row_lead(r[1][0], r[1][1]);
  // Larger row first.
  std::swap(r[0], r[1]);
  std::swap(g[0], g[1]);
  PolyMat2 gamma{g[0][0], g[0][1], g[1][0], g[1][1]};
  const auto det = gamma.det();
  if (!det.is_constant() || det.is_zero()) throw std::logic_error("gauss_reduce: reduction word not unimodular");
  const Fq s = fld.inv(det.leading());
  if (s != 1) {
    gamma.c = gamma.c.scaled(s);
    gamma.d = gamma.d.scaled(s);
    r[1][0] = r[1][0].scaled(s);
    r[1][1] = r[1][1].scaled(s);
  }
  return {gamma, {r[0][0], r[0][1], r[1][0], r[1][1]}, l1.N - l0.N, l0.N, l1.N, steps, initial_norm_sum, true};
}

ReductionResult gauss_reduce(const Mat2& M) { return gauss_reduce(ALatticeBasis::from_matrix(M)); }

int delta_invariant(const Mat2& M) { return gauss_reduce(M).delta; }

int delta_invariant(const TreeVertex& v) { return delta_invariant(v.matrix()); }

CongruenceReport delta_congruence_report(const Mat2& M, const Polynomial& Qstar) {
  if (Qstar.is_zero()) throw std::domain_error("Q* must be nonzero");
  const auto red = gauss_reduce(M);
  CongruenceReport rep{red.delta, 0, false, red.gamma0};
  const auto& g = red.gamma0;
  if (red.delta >= 1) {
    // Stabilizer: upper triangular, constant diagonal; it rescales c.
    rep.reachable = (g.c % Qstar).is_zero();
  } else {
    // Stabilizer SL_2(F_q): any nonzero (c, d) occurs as a second row.
    const auto& F = *Qstar.field();
    const auto n = F.size();
    for (Fq c = 0; c < n && !rep.reachable; ++c)
      for (Fq d = 0; d < n && !rep.reachable; ++d) {
        if (c == 0 && d == 0) continue;
        rep.reachable = ((g.a.scaled(c) + g.c.scaled(d)) % Qstar).is_zero();
      }
  }
  rep.delta_q = rep.reachable ? rep.delta : 0;
  return rep;
}

int delta_congruence(const Mat2& M, const Polynomial& Qstar) { return delta_congruence_report(M, Qstar).delta_q; }

namespace {

struct EnumRow {
  Polynomial a, b;
  int N;
};

// Whether a d - b c is a nonzero constant, without building polynomials.
bool unimodular_pair(const Field& F, const std::vector<Fq>& a, const std::vector<Fq>& b, const std::vector<Fq>& c,
                     const std::vector<Fq>& d, std::vector<Fq>& scratch) {
  const std::size_t n = a.size();
  scratch.assign(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != 0)
      for (std::size_t k = 0; k < n; ++k)
        if (d[k] != 0) scratch[i + k] = F.add(scratch[i + k], F.mul(a[i], d[k]));
    if (b[i] != 0)
      for (std::size_t k = 0; k < n; ++k)
        if (c[k] != 0) scratch[i + k] = F.sub(scratch[i + k], F.mul(b[i], c[k]));
  }
  if (scratch[0] == 0) return false;
  for (std::size_t i = 1; i < scratch.size(); ++i)
    if (scratch[i] != 0) return false;
  return true;
}

}  // namespace

BruteForceResult brute_force(const Mat2& M, int degcap, const std::optional<Polynomial>& Qstar, std::int64_t budget) {
  const auto& F = M.field();
  const Field& fld = *F;
  if (degcap < 0) throw std::domain_error("degcap must be nonnegative");
  if (Qstar && Qstar->is_zero()) throw std::domain_error("Q* must be nonzero");
  const auto D = M.det();
  if (D.is_known_zero()) throw std::domain_error("singular lattice");
  const int vdet = D.valuation();

  const std::int64_t q = fld.size();
  std::int64_t count = 1;
  for (int i = 0; i < 2 * (degcap + 1); ++i) {
    count *= q;
    if (count > budget)
      throw BudgetExceeded("brute force needs more than " + std::to_string(budget) + " rows (q=" +
                           std::to_string(q) + ", degcap=" + std::to_string(degcap) + ")");
  }

  const std::size_t len = static_cast<std::size_t>(degcap) + 1;
  std::vector<std::vector<Fq>> ca, cb;
  std::vector<int> norms;
  ca.reserve(static_cast<std::size_t>(count));
  cb.reserve(static_cast<std::size_t>(count));
  std::vector<Fq> digits(2 * len, 0);
  for (std::int64_t idx = 1; idx < count; ++idx) {
    std::int64_t v = idx;
    for (auto& x : digits) {
      x = static_cast<Fq>(v % q);
      v /= q;
    }
    std::vector<Fq> a(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(len));
    std::vector<Fq> b(digits.begin() + static_cast<std::ptrdiff_t>(len), digits.end());
    const auto as = LaurentSeries::from_polynomial(Polynomial(F, a));
    const auto bs = LaurentSeries::from_polynomial(Polynomial(F, b));
    norms.push_back(row_norm_exponent(as * M.a + bs * M.c, as * M.b + bs * M.d));
    ca.push_back(std::move(a));
    cb.push_back(std::move(b));
  }

  std::vector<std::size_t> order(norms.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] < norms[y]; });

  BruteForceResult res{0, std::nullopt, PolyMat2::identity(F), static_cast<std::int64_t>(norms.size())};
  std::vector<Fq> scratch;
  auto make_gamma = [&](std::size_t i, std::size_t j) {
    PolyMat2 g{Polynomial(F, ca[i]), Polynomial(F, cb[i]), Polynomial(F, ca[j]), Polynomial(F, cb[j])};
    const Fq s = fld.inv(g.det().leading());
    g.c = g.c.scaled(s);
    g.d = g.d.scaled(s);
    return g;
  };

  std::size_t begin = 0;
  std::optional<int> level;
  std::size_t level_end = 0;
  while (begin < order.size() && !level) {
    std::size_t end = begin;
    while (end < order.size() && norms[order[end]] == norms[order[begin]]) ++end;
    for (std::size_t jj = begin; jj < end && !level; ++jj)
      for (std::size_t ii = 0; ii < jj; ++ii) {
        const auto i = order[ii], j = order[jj];
        if (unimodular_pair(fld, ca[i], cb[i], ca[j], cb[j], scratch)) {
          level = norms[j];
          res.witness = make_gamma(i, j);
          break;
        }
      }
    level_end = end;
    begin = end;
  }
  if (!level) throw std::domain_error("brute force: no unimodular pair within degcap");
  res.delta = vdet + 2 * *level;

  if (Qstar) {
    res.delta_q = 0;
    if (res.delta >= 1) {
      const auto target = TreeVertex::ray(F, res.delta);
      bool found = false;
      for (std::size_t jj = 0; jj < level_end && !found; ++jj)
        for (std::size_t ii = 0; ii < level_end && !found; ++ii) {
          const auto i = order[ii], j = order[jj];
          if (i == j) continue;
          if (std::max(norms[i], norms[j]) != *level) continue;
          if (!(Polynomial(F, ca[j]) % *Qstar).is_zero()) continue;
          if (!unimodular_pair(fld, ca[i], cb[i], ca[j], cb[j], scratch)) continue;
          const auto g = make_gamma(i, j);
          if (vertex_from_matrix(g.to_mat2() * M) == target) {
            found = true;
            res.witness = g;
          }
        }
      if (found) res.delta_q = res.delta;
    }
  }
  return res;
}

int brute_force_delta(const Mat2& M, int degcap, const std::optional<Polynomial>& Qstar, std::int64_t budget) {
  const auto r = brute_force(M, degcap, Qstar, budget);
  return r.delta_q ? *r.delta_q : r.delta;
}

Mat2 unipotent_lattice(const LaurentSeries& f, const LaurentSeries& g) {
  const auto& F = f.field();
  const auto inv = f.inverse();
  const auto one = LaurentSeries::constant(F, 1);
  const auto gf = g * inv;
  return {one - gf, g, -(gf * inv), one + gf};
}

Mat2 unipotent_lattice(const SeriesSource& f, const LaurentSeries& g, int prec) {
  return unipotent_lattice(f.at(prec), g);
}

}  // namespace artin
