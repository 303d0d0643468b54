#include "artin/polynomial.hpp"

#include <stdexcept>

namespace artin {

int Degree::value() const {
  if (!value_) throw std::domain_error("degree of the zero polynomial is minus infinity");
  return *value_;
}

int AbsValue::log_q() const {
  if (!log_q_) throw std::domain_error("log of |0|");
  return *log_q_;
}

Polynomial::Polynomial(FieldRef field, std::vector<Fq> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  for (auto& c : c_)
    if (c >= field_->size()) throw std::invalid_argument("coefficient code out of range");
  normalize();
}

Polynomial Polynomial::constant(FieldRef field, Fq c) { return Polynomial(std::move(field), std::vector<Fq>{c}); }

Polynomial Polynomial::monomial(FieldRef field, Fq c, int degree) {
  if (degree < 0) throw std::invalid_argument("negative monomial degree");
  std::vector<Fq> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return Polynomial(std::move(field), std::move(v));
}

void Polynomial::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Fq Polynomial::eval(Fq x) const {
  Fq r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = field_->add(field_->mul(r, x), c_[i]);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& c : r.c_) c = field_->neg(c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (!same_field(field_, o.field_)) throw std::invalid_argument("field mismatch");
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->add(c_[i], o.c_[i]);
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (!same_field(a.field_, b.field_)) throw std::invalid_argument("field mismatch");
  if (a.is_zero() || b.is_zero()) return Polynomial(a.field_);
  const Field& F = *a.field_;
  std::vector<Fq> r(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a.c_[i], b.c_[j]));
  }
  return Polynomial(a.field_, std::move(r));
}

Polynomial Polynomial::scaled(Fq s) const {
  Polynomial r(*this);
  for (auto& c : r.c_) c = field_->mul(c, s);
  r.normalize();
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(leading()));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
  if (!same_field(field_, d.field_)) throw std::invalid_argument("field mismatch");
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  const Field& F = *field_;
  std::vector<Fq> r = c_;
  const std::size_t dd = d.c_.size() - 1;
  if (r.size() <= dd) return {Polynomial(field_), *this};
  std::vector<Fq> quot(r.size() - dd, 0);
  const Fq lead_inv = F.inv(d.leading());
  for (std::size_t i = r.size(); i-- > dd;) {
    const Fq c = F.mul(r[i], lead_inv);
    if (c == 0) continue;
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] = F.sub(r[i - dd + j], F.mul(c, d.c_[j]));
  }
  return {Polynomial(field_, std::move(quot)), Polynomial(field_, std::move(r))};
}

namespace {

std::string render_coeff(const Field& F, Fq c) {
  if (c < F.characteristic()) return std::to_string(c);
  std::string s = "[";
  Fq x = c;
  for (std::uint32_t i = 0; i < F.degree(); ++i) {
    if (i) s += ",";
    s += std::to_string(x % F.characteristic());
    x /= F.characteristic();
  }
  return s + "]";
}

}  // namespace

std::string Polynomial::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += render_coeff(*field_, c_[i]);
      continue;
    }
    if (c_[i] != 1) s += render_coeff(*field_, c_[i]) + "*";
    s += "X";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b) {
  const FieldRef& F = a.field();
  Polynomial r0 = a, r1 = b;
  Polynomial s0 = Polynomial::constant(F, 1), s1(F);
  Polynomial t0(F), t1 = Polynomial::constant(F, 1);
  while (!r1.is_zero()) {
    auto [quot, rem] = r0.divmod(r1);
    r0 = std::exchange(r1, rem);
    s0 = std::exchange(s1, s0 - quot * s1);
    t0 = std::exchange(t1, t0 - quot * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Fq li = F->inv(r0.leading());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

AbsValue abs_value(const Polynomial& p) {
  if (p.is_zero()) return AbsValue::zero();
  return AbsValue::q_power(p.degree().value());
}

bool congruent_mod(const Polynomial& a, const Polynomial& m) {
  if (m.is_zero()) throw std::domain_error("congruence modulo the zero polynomial");
  return (a % m).is_zero();
}

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(num_.field(), 1)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (!same_field(num_.field(), den_.field())) throw std::invalid_argument("field mismatch");
  if (num_.is_zero()) {
    den_ = Polynomial::constant(num_.field(), 1);
    return;
  }
  Polynomial g = gcd(num_, den_);
  num_ = num_ / g;
  den_ = den_ / g;
  const Fq li = num_.field()->inv(den_.leading());
  num_ = num_.scaled(li);
  den_ = den_.scaled(li);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

AbsValue abs_value(const RationalFunction& r) {
  if (r.is_zero()) return AbsValue::zero();
  return AbsValue::q_power(r.num().degree().value() - r.den().degree().value());
}

std::optional<Polynomial> polynomial_sqrt(const Polynomial& p) {
  const FieldRef& F = p.field();
  if (p.is_zero()) return p;
  const int d = p.degree().value();
  if (d % 2 != 0) return std::nullopt;
  const int h = d / 2;
  std::vector<Fq> s(static_cast<std::size_t>(h) + 1, 0);
  if (F->characteristic() == 2) {
    for (int i = 0; i <= d; ++i) {
      if (i % 2 == 1) {
        if (p.coeff(i) != 0) return std::nullopt;
        continue;
      }
      Fq r;
      if (!F->sqrt(p.coeff(i), r)) return std::nullopt;
      s[static_cast<std::size_t>(i / 2)] = r;
    }
  } else {
    Fq top;
    if (!F->sqrt(p.leading(), top)) return std::nullopt;
    s[h] = top;
    const Fq inv2top = F->inv(F->add(top, top));
    // Coefficient of X^{d-k} in s^2 fixes s_{h-k}.
    for (int k = 1; k <= h; ++k) {
      Fq acc = p.coeff(d - k);
      for (int i = 1; i < k; ++i) acc = F->sub(acc, F->mul(s[h - i], s[h - k + i]));
      s[h - k] = F->mul(acc, inv2top);
    }
  }
  Polynomial root(F, std::move(s));
  if (!(root * root == p)) return std::nullopt;
  return root;
}

}  // namespace artin
