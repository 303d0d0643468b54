#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "artin/field.hpp"
#include "artin/polynomial.hpp"

namespace artin {

inline constexpr int kDefaultPrecision = 64;
inline constexpr int kPrecisionCap = 1 << 14;

// A truncated element of F_q((X^-1)).
//
// Coefficients are indexed by the exponent of X^-1: index i carries the
// coefficient of X^{-i}, so v_inf(f) is the lowest index with a nonzero
// coefficient. A series is either exact (all unlisted coefficients are zero)
// or known up to a horizon h: the value is sum_{i<h} c_i X^{-i} + O(X^{-h}).
//
// Two zero states are kept apart. An exact series with no coefficients is the
// known zero; an inexact one is only zero to precision and has no certified
// valuation.
class LaurentSeries {
 public:
  explicit LaurentSeries(FieldRef field) : field_(std::move(field)) {}

  static LaurentSeries known_zero(FieldRef field) { return LaurentSeries(std::move(field)); }
  static LaurentSeries zero_to(FieldRef field, int horizon);
  static LaurentSeries from_polynomial(const Polynomial& p);
  static LaurentSeries monomial(FieldRef field, Fq c, int index);
  static LaurentSeries constant(FieldRef field, Fq c) { return monomial(std::move(field), c, 0); }
  // Coefficients for indices first, first+1, ...
  static LaurentSeries exact(FieldRef field, int first, std::vector<Fq> coeffs);
  static LaurentSeries truncated(FieldRef field, int first, std::vector<Fq> coeffs, int horizon);

  const FieldRef& field() const { return field_; }
  bool is_exact() const { return hz_ == kInf; }
  // Nullopt for exact series.
  std::optional<int> horizon() const { return is_exact() ? std::nullopt : std::optional<int>(hz_); }
  bool is_known_zero() const { return c_.empty() && is_exact(); }
  bool is_zero_to_precision() const { return c_.empty() && !is_exact(); }
  // Lowest index with a known nonzero coefficient.
  std::optional<int> lead() const { return c_.empty() ? std::nullopt : std::optional<int>(lo_); }
  // v_inf; throws std::domain_error for the known zero and PrecisionExhausted
  // when only zero to precision.
  int valuation() const;
  // The coefficient of X^{-i}; throws PrecisionExhausted past the horizon.
  Fq coeff(int i) const;
  // Largest stored index + 1 (exact) or the horizon.
  int extent() const;

  // Lowers the horizon to h (no-op if already at or below).
  LaurentSeries truncate(int h) const;
  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries scaled(Fq s) const;
  // Multiplication by X^{-k}.
  LaurentSeries shifted(int k) const;

  // 1/f. Inexact inputs with valuation v and horizon h give horizon h - 2v.
  // Exact monomials invert exactly; other exact inputs are expanded to
  // `exact_horizon` (default: kDefaultPrecision digits past the lead).
  LaurentSeries inverse(std::optional<int> exact_horizon = std::nullopt) const;

  // ([f], {f}) with [f] in A and {f} in X^-1 O.
  std::pair<Polynomial, LaurentSeries> integral_fractional() const;

  // The exact value as a polynomial, if it is one.
  std::optional<Polynomial> as_polynomial() const;

  // Coefficient-wise agreement on indices < upto (both must be known there).
  bool agrees_with(const LaurentSeries& o, int upto) const;
  // Same representation, including the horizon.
  bool identical(const LaurentSeries& o) const {
    return same_field(field_, o.field_) && hz_ == o.hz_ && c_ == o.c_ && (c_.empty() || lo_ == o.lo_);
  }

  std::string to_string(int max_terms = 16) const;

 private:
  static constexpr int kInf = 1 << 30;
  static int hsum(int a, int b) { return (a == kInf || b == kInf) ? kInf : a + b; }
  static LaurentSeries build(FieldRef field, int first, std::vector<Fq> coeffs, int horizon);
  int effective_valuation() const { return c_.empty() ? hz_ : lo_; }

  FieldRef field_;
  int lo_ = 0;
  std::vector<Fq> c_;
  int hz_ = kInf;
};

// a / b certified to at least `want` where the inputs permit.
LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& b, int want);

// Long-division expansion of r, truncated at O(X^{-prec}); exact when the
// denominator is constant.
LaurentSeries series_from_rational(const RationalFunction& r, int prec);

}  // namespace artin
