#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace artin {

// An element of F_q, stored as its canonical code in [0, q). For prime
// fields the code is the residue mod p; for extensions it is the base-p
// number whose digits are the coefficients (low to high) of the residue
// polynomial modulo the defining modulus.
using Fq = std::uint32_t;

class Field;
using FieldRef = std::shared_ptr<const Field>;

class Field {
 public:
  static FieldRef prime(std::uint32_t p);
  // modulus: monic irreducible over F_p, coefficients low to high, degree e >= 2.
  static FieldRef extension(std::uint32_t p, std::vector<std::uint32_t> modulus);
  // Prime field when q is prime; otherwise the modulus is required.
  static FieldRef make(std::uint32_t q, std::vector<std::uint32_t> modulus = {});

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return e_; }
  std::uint32_t size() const { return q_; }
  bool is_prime() const { return e_ == 1; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  Fq zero() const { return 0; }
  Fq one() const { return 1; }
  // Image of an integer in the prime subfield.
  Fq from_int(long long n) const;

  Fq add(Fq a, Fq b) const {
    if (e_ == 1) {
      Fq s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_ext(a, b);
  }
  Fq neg(Fq a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    return neg_ext(a);
  }
  Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }
  Fq mul(Fq a, Fq b) const {
    if (e_ == 1) return static_cast<Fq>((static_cast<std::uint64_t>(a) * b) % p_);
    return mul_table_.empty() ? mul_ext(a, b) : mul_table_[static_cast<std::size_t>(a) * q_ + b];
  }
  // Throws std::domain_error on zero.
  Fq inv(Fq a) const;
  Fq pow(Fq a, std::uint64_t n) const;
  // Some b with b*b == a, if one exists.
  bool sqrt(Fq a, Fq& root) const;

  bool operator==(const Field& o) const {
    return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
  }

  std::string describe() const;

 private:
  Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus);

  Fq add_ext(Fq a, Fq b) const;
  Fq neg_ext(Fq a) const;
  Fq mul_ext(Fq a, Fq b) const;
  std::vector<std::uint32_t> digits(Fq a) const;
  Fq from_digits(const std::vector<std::uint32_t>& d) const;

  std::uint32_t p_;
  std::uint32_t e_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Fq> mul_table_;
};

bool same_field(const FieldRef& a, const FieldRef& b);
bool is_prime(std::uint64_t n);

}  // namespace artin
