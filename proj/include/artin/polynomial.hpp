#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "artin/field.hpp"

namespace artin {

// Degree of a polynomial; the zero polynomial has degree minus infinity.
class Degree {
 public:
  static Degree minus_infinity() { return Degree(); }
  static Degree of(int d) { return Degree(d); }

  bool is_minus_infinity() const { return !value_.has_value(); }
  // Throws std::domain_error for minus infinity.
  int value() const;

  friend Degree operator+(Degree a, Degree b) {
    if (a.is_minus_infinity() || b.is_minus_infinity()) return minus_infinity();
    return Degree(*a.value_ + *b.value_);
  }
  friend bool operator==(const Degree&, const Degree&) = default;
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (a.is_minus_infinity() || b.is_minus_infinity())
      return static_cast<int>(!a.is_minus_infinity()) <=> static_cast<int>(!b.is_minus_infinity());
    return *a.value_ <=> *b.value_;
  }

 private:
  Degree() = default;
  explicit Degree(int d) : value_(d) {}
  std::optional<int> value_;
};

// |x| = q^k, or |0| = 0.
class AbsValue {
 public:
  static AbsValue zero() { return AbsValue(); }
  static AbsValue q_power(int k) { return AbsValue(k); }

  bool is_zero() const { return !log_q_.has_value(); }
  // log_q |x|; throws std::domain_error for |0|.
  int log_q() const;

  friend AbsValue operator*(AbsValue a, AbsValue b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return AbsValue(*a.log_q_ + *b.log_q_);
  }
  friend bool operator==(const AbsValue&, const AbsValue&) = default;
  friend std::strong_ordering operator<=>(const AbsValue& a, const AbsValue& b) {
    if (a.is_zero() || b.is_zero()) return static_cast<int>(!a.is_zero()) <=> static_cast<int>(!b.is_zero());
    return *a.log_q_ <=> *b.log_q_;
  }

 private:
  AbsValue() = default;
  explicit AbsValue(int k) : log_q_(k) {}
  std::optional<int> log_q_;
};

// Element of A = F_q[X], dense coefficients low to high.
class Polynomial {
 public:
  explicit Polynomial(FieldRef field) : field_(std::move(field)) {}
  Polynomial(FieldRef field, std::vector<Fq> coeffs);

  static Polynomial constant(FieldRef field, Fq c);
  static Polynomial monomial(FieldRef field, Fq c, int degree);
  static Polynomial x(FieldRef field) { return monomial(std::move(field), 1, 1); }

  const FieldRef& field() const { return field_; }
  const std::vector<Fq>& coeffs() const { return c_; }
  Fq coeff(int i) const { return i >= 0 && static_cast<std::size_t>(i) < c_.size() ? c_[i] : 0; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  Degree degree() const { return c_.empty() ? Degree::minus_infinity() : Degree::of(static_cast<int>(c_.size()) - 1); }
  Fq leading() const { return c_.empty() ? 0 : c_.back(); }
  Fq eval(Fq x) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(Fq s) const;
  Polynomial monic() const;

  // Euclidean division: *this = quotient * d + remainder, deg remainder < deg d.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const;
  Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }
  Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }

  bool operator==(const Polynomial& o) const { return same_field(field_, o.field_) && c_ == o.c_; }

  // Canonical text form, e.g. "X^2+2*X+1". Extension-field coefficients
  // outside the prime subfield print as digit vectors "[d0,d1,...]".
  std::string to_string() const;

 private:
  void normalize();
  FieldRef field_;
  std::vector<Fq> c_;
};

// Monic greatest common divisor; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
// Bezout coefficients: s*a + t*b = gcd(a, b).
struct ExtendedGcd {
  Polynomial g, s, t;
};
ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b);

AbsValue abs_value(const Polynomial& p);

// True iff m divides a. Throws std::domain_error for m = 0.
bool congruent_mod(const Polynomial& a, const Polynomial& m);

// Element of K = F_q(X) in lowest terms with monic denominator.
class RationalFunction {
 public:
  RationalFunction(Polynomial num);
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  const FieldRef& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }

  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  std::string to_string() const;

 private:
  Polynomial num_, den_;
};

AbsValue abs_value(const RationalFunction& r);

// Square root in A if the polynomial is a perfect square.
std::optional<Polynomial> polynomial_sqrt(const Polynomial& p);

}  // namespace artin
