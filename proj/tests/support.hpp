#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "artin/cf.hpp"
#include "artin/field.hpp"
#include "artin/laurent.hpp"
#include "artin/parse.hpp"
#include "artin/polynomial.hpp"

namespace testing {

using namespace artin;

inline FieldRef F2() {
  static FieldRef f = Field::prime(2);
  return f;
}
inline FieldRef F3() {
  static FieldRef f = Field::prime(3);
  return f;
}
inline FieldRef F5() {
  static FieldRef f = Field::prime(5);
  return f;
}

inline Polynomial P(const std::string& s, const FieldRef& F) { return parse_poly(s, F); }
inline LaurentSeries S(const std::string& s, const FieldRef& F) { return LaurentSeries::from_polynomial(P(s, F)); }

inline Polynomial random_poly(std::mt19937_64& rng, const FieldRef& F, int max_deg) {
  std::vector<Fq> c(static_cast<std::size_t>(max_deg) + 1);
  for (auto& x : c) x = static_cast<Fq>(rng() % F->size());
  return Polynomial(F, std::move(c));
}

// Polynomial of exact degree d.
inline Polynomial random_poly_deg(std::mt19937_64& rng, const FieldRef& F, int d) {
  std::vector<Fq> c(static_cast<std::size_t>(d) + 1);
  for (auto& x : c) x = static_cast<Fq>(rng() % F->size());
  c.back() = 1 + static_cast<Fq>(rng() % (F->size() - 1));
  return Polynomial(F, std::move(c));
}

// Random truncated series with a known lead at `lead` and `digits` digits.
inline LaurentSeries random_series(std::mt19937_64& rng, const FieldRef& F, int lead, int digits) {
  std::vector<Fq> c(static_cast<std::size_t>(digits));
  for (auto& x : c) x = static_cast<Fq>(rng() % F->size());
  c[0] = 1 + static_cast<Fq>(rng() % (F->size() - 1));
  return LaurentSeries::truncated(F, lead, std::move(c), lead + digits);
}

// The golden analogue f = 1/(X + f), expansion [0; X, X, ...].
inline CFSpec golden_spec(const FieldRef& F) { return parse_cf_spec("0; X | X", F); }

// a_n = X^{2^n} for n = 1..count.
inline CFSpec doubling_spec(const FieldRef& F, int count) {
  CFSpec spec{Polynomial(F), {}, std::nullopt};
  for (int n = 1; n <= count; ++n) spec.preperiod.push_back(Polynomial::monomial(F, 1, 1 << n));
  return spec;
}

}  // namespace testing
