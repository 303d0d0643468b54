#include "artin/laurent.hpp"

#include <algorithm>
#include <stdexcept>

#include "artin/errors.hpp"

namespace artin {

LaurentSeries LaurentSeries::build(FieldRef field, int first, std::vector<Fq> coeffs, int horizon) {
  LaurentSeries s(std::move(field));
  s.hz_ = horizon;
  if (horizon != kInf) {
    const long long keep = static_cast<long long>(horizon) - first;
    if (keep <= 0) coeffs.clear();
    else if (static_cast<long long>(coeffs.size()) > keep) coeffs.resize(static_cast<std::size_t>(keep));
  }
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  auto nz = std::find_if(coeffs.begin(), coeffs.end(), [](Fq c) { return c != 0; });
  s.lo_ = first + static_cast<int>(nz - coeffs.begin());
  s.c_.assign(nz, coeffs.end());
  if (s.c_.empty()) s.lo_ = 0;
  return s;
}

LaurentSeries LaurentSeries::zero_to(FieldRef field, int horizon) { return build(std::move(field), 0, {}, horizon); }

LaurentSeries LaurentSeries::from_polynomial(const Polynomial& p) {
  if (p.is_zero()) return known_zero(p.field());
  std::vector<Fq> c(p.coeffs().rbegin(), p.coeffs().rend());
  return build(p.field(), -p.degree().value(), std::move(c), kInf);
}

LaurentSeries LaurentSeries::monomial(FieldRef field, Fq c, int index) {
  return build(std::move(field), index, {c}, kInf);
}

LaurentSeries LaurentSeries::exact(FieldRef field, int first, std::vector<Fq> coeffs) {
  return build(std::move(field), first, std::move(coeffs), kInf);
}

LaurentSeries LaurentSeries::truncated(FieldRef field, int first, std::vector<Fq> coeffs, int horizon) {
  if (horizon >= kInf) throw std::invalid_argument("horizon too large");
  return build(std::move(field), first, std::move(coeffs), horizon);
}

int LaurentSeries::valuation() const {
  if (is_known_zero()) throw std::domain_error("valuation of the zero series is +infinity");
  if (c_.empty()) throw PrecisionExhausted("valuation beyond horizon " + std::to_string(hz_));
  return lo_;
}

Fq LaurentSeries::coeff(int i) const {
  if (i >= hz_) throw PrecisionExhausted("coefficient " + std::to_string(i) + " beyond horizon " + std::to_string(hz_));
  if (c_.empty() || i < lo_) return 0;
  const auto k = static_cast<std::size_t>(i - lo_);
  return k < c_.size() ? c_[k] : 0;
}

int LaurentSeries::extent() const {
  if (!is_exact()) return hz_;
  return c_.empty() ? 0 : lo_ + static_cast<int>(c_.size());
}

LaurentSeries LaurentSeries::truncate(int h) const {
  if (h >= hz_) return *this;
  return build(field_, lo_, c_, h);
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r(*this);
  for (auto& c : r.c_) c = field_->neg(c);
  return r;
}

LaurentSeries LaurentSeries::scaled(Fq s) const {
  if (s == 0) return is_exact() ? known_zero(field_) : zero_to(field_, hz_);
  LaurentSeries r(*this);
  for (auto& c : r.c_) c = field_->mul(c, s);
  return r;
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries r(*this);
  if (!r.c_.empty()) r.lo_ += k;
  if (!is_exact()) r.hz_ += k;
  return r;
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  if (!same_field(a.field_, b.field_)) throw std::invalid_argument("field mismatch");
  const int h = std::min(a.hz_, b.hz_);
  if (a.c_.empty()) return b.truncate(h);
  if (b.c_.empty()) return a.truncate(h);
  const int first = std::min(a.lo_, b.lo_);
  int last = std::max(a.lo_ + static_cast<int>(a.c_.size()), b.lo_ + static_cast<int>(b.c_.size()));
  last = std::min(last, h);
  if (last <= first) return LaurentSeries::build(a.field_, first, {}, h);
  std::vector<Fq> r(static_cast<std::size_t>(last - first), 0);
  const Field& F = *a.field_;
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    const int idx = a.lo_ + static_cast<int>(i);
    if (idx >= last) break;
    r[idx - first] = a.c_[i];
  }
  for (std::size_t i = 0; i < b.c_.size(); ++i) {
    const int idx = b.lo_ + static_cast<int>(i);
    if (idx >= last) break;
    r[idx - first] = F.add(r[idx - first], b.c_[i]);
  }
  return LaurentSeries::build(a.field_, first, std::move(r), h);
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  if (!same_field(a.field_, b.field_)) throw std::invalid_argument("field mismatch");
  if (a.is_known_zero() || b.is_known_zero()) return LaurentSeries::known_zero(a.field_);
  // Error terms: A*O(X^-hb) + B*O(X^-ha).
  const int h = std::min(LaurentSeries::hsum(a.effective_valuation(), b.hz_),
                         LaurentSeries::hsum(b.effective_valuation(), a.hz_));
  if (a.c_.empty() || b.c_.empty()) return LaurentSeries::zero_to(a.field_, h);
  const int first = a.lo_ + b.lo_;
  long long last = static_cast<long long>(first) + a.c_.size() + b.c_.size() - 1;
  if (h != LaurentSeries::kInf) last = std::min<long long>(last, h);
  if (last <= first) return LaurentSeries::zero_to(a.field_, h);
  const auto n = static_cast<std::size_t>(last - first);
  std::vector<Fq> r(n, 0);
  const Field& F = *a.field_;
  for (std::size_t i = 0; i < a.c_.size() && i < n; ++i) {
    const Fq ai = a.c_[i];
    if (ai == 0) continue;
    const std::size_t jmax = std::min(b.c_.size(), n - i);
    for (std::size_t j = 0; j < jmax; ++j) r[i + j] = F.add(r[i + j], F.mul(ai, b.c_[j]));
  }
  return LaurentSeries::build(a.field_, first, std::move(r), h);
}

LaurentSeries LaurentSeries::inverse(std::optional<int> exact_horizon) const {
  if (is_known_zero()) throw std::domain_error("inverse of the zero series");
  if (c_.empty()) throw PrecisionExhausted("inverse of a series that is zero to precision");
  const int v = lo_;
  const Field& F = *field_;
  const Fq lead_inv = F.inv(c_[0]);
  if (is_exact() && c_.size() == 1) return monomial(field_, lead_inv, -v);
  int h;
  if (is_exact()) {
    h = exact_horizon.value_or(-v + kDefaultPrecision);
  } else {
    h = hz_ - 2 * v;
  }
  const int digits = h + v;
  if (digits <= 0) return zero_to(field_, h);
  std::vector<Fq> g(static_cast<std::size_t>(digits), 0);
  g[0] = lead_inv;
  for (int k = 1; k < digits; ++k) {
    Fq acc = 0;
    const int jmax = std::min<int>(k, static_cast<int>(c_.size()) - 1);
    for (int j = 1; j <= jmax; ++j) acc = F.add(acc, F.mul(c_[j], g[k - j]));
    g[k] = F.mul(F.neg(acc), lead_inv);
  }
  return build(field_, -v, std::move(g), h);
}

std::pair<Polynomial, LaurentSeries> LaurentSeries::integral_fractional() const {
  if (!is_exact() && hz_ <= 0 && (c_.empty() || lo_ <= 0))
    throw PrecisionExhausted("integral part not determined: horizon " + std::to_string(hz_));
  std::vector<Fq> poly;
  std::vector<Fq> frac;
  int frac_first = 1;
  if (!c_.empty()) {
    if (lo_ <= 0) poly.assign(static_cast<std::size_t>(-lo_) + 1, 0);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      const int idx = lo_ + static_cast<int>(k);
      if (idx <= 0) {
        poly[static_cast<std::size_t>(-idx)] = c_[k];
      } else {
        if (frac.empty()) frac_first = idx;
        frac.push_back(c_[k]);
      }
    }
  }
  return {Polynomial(field_, std::move(poly)), build(field_, frac_first, std::move(frac), hz_)};
}

std::optional<Polynomial> LaurentSeries::as_polynomial() const {
  if (!is_exact()) return std::nullopt;
  if (c_.empty()) return Polynomial(field_);
  if (lo_ + static_cast<int>(c_.size()) - 1 > 0) return std::nullopt;
  return integral_fractional().first;
}

bool LaurentSeries::agrees_with(const LaurentSeries& o, int upto) const {
  if (upto > hz_ || upto > o.hz_) throw PrecisionExhausted("comparison beyond horizon");
  int from = upto;
  if (!c_.empty()) from = std::min(from, lo_);
  if (!o.c_.empty()) from = std::min(from, o.lo_);
  for (int i = from; i < upto; ++i)
    if (coeff(i) != o.coeff(i)) return false;
  return true;
}

std::string LaurentSeries::to_string(int max_terms) const {
  std::string s;
  int shown = 0;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (shown == max_terms) {
      s += "+...";
      break;
    }
    const int e = -(lo_ + static_cast<int>(k));
    if (!s.empty()) s += "+";
    const bool unit = c_[k] == 1;
    if (e == 0) {
      s += std::to_string(c_[k]);
    } else {
      if (!unit) s += std::to_string(c_[k]) + "*";
      s += e == 1 ? "X" : "X^" + std::to_string(e);
    }
    ++shown;
  }
  if (!is_exact()) {
    if (!s.empty()) s += "+";
    s += "O(X^" + std::to_string(-hz_) + ")";
  }
  return s.empty() ? "0" : s;
}

LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b, int want) {
  if (a.is_known_zero()) {
    if (b.is_known_zero()) throw std::domain_error("division by the zero series");
    return a;
  }
  const int vb = b.valuation();
  const int ea = a.lead().value_or(a.extent());
  return a * b.inverse(std::max(want - ea, -vb + 1));
}

LaurentSeries series_from_rational(const RationalFunction& r, int prec) {
  const auto num = LaurentSeries::from_polynomial(r.num());
  if (r.den().is_constant()) return num.scaled(r.field()->inv(r.den().leading()));
  const auto den = LaurentSeries::from_polynomial(r.den());
  return divide(num, den, prec).truncate(prec);
}

}  // namespace artin
