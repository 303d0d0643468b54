#include "artin/field.hpp"

#include <stdexcept>

namespace artin {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Digits = std::vector<std::uint32_t>;

void trim(Digits& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic b over F_p.
Digits mod_fp(Digits a, const Digits& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + static_cast<std::uint64_t>(p - lead) * b[i]) % p);
    trim(a);
  }
  return a;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool irreducible_fp(const Digits& m, std::uint32_t p) {
  const std::size_t deg = m.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Digits cand(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        cand[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      cand[d] = 1;
      if (mod_fp(m, cand, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t e, std::vector<std::uint32_t> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
  for (std::uint32_t i = 0; i < e_; ++i) q_ *= p_;
  if (e_ > 1 && q_ <= 256) {
    mul_table_.resize(static_cast<std::size_t>(q_) * q_);
    for (Fq a = 0; a < q_; ++a)
      for (Fq b = 0; b < q_; ++b) mul_table_[static_cast<std::size_t>(a) * q_ + b] = mul_ext(a, b);
  }
}

FieldRef Field::prime(std::uint32_t p) {
  if (!artin::is_prime(p) || p > 65521) throw std::invalid_argument("field characteristic must be a prime below 2^16");
  return FieldRef(new Field(p, 1, {}));
}

FieldRef Field::extension(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!artin::is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  for (auto& c : modulus) c %= p;
  trim(modulus);
  if (modulus.size() < 3) throw std::invalid_argument("extension modulus must have degree >= 2");
  if (modulus.back() != 1) throw std::invalid_argument("extension modulus must be monic");
  std::uint64_t q = 1;
  for (std::size_t i = 1; i < modulus.size(); ++i) q *= p;
  if (q > (1u << 20)) throw std::invalid_argument("field too large");
  if (!irreducible_fp(modulus, p)) throw std::invalid_argument("extension modulus is reducible");
  const auto e = static_cast<std::uint32_t>(modulus.size() - 1);
  return FieldRef(new Field(p, e, std::move(modulus)));
}

FieldRef Field::make(std::uint32_t q, std::vector<std::uint32_t> modulus) {
  if (artin::is_prime(q)) {
    if (!modulus.empty() && modulus.size() > 2) throw std::invalid_argument("prime field takes no modulus");
    return prime(q);
  }
  std::uint32_t p = 2;
  while (p <= q && q % p != 0) ++p;
  std::uint32_t r = q, e = 0;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  if (r != 1) throw std::invalid_argument("q must be a prime power");
  if (modulus.size() != e + 1) throw std::invalid_argument("q = p^e with e > 1 requires a modulus of degree e");
  return extension(p, std::move(modulus));
}

Fq Field::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Fq>(r);
}

std::vector<std::uint32_t> Field::digits(Fq a) const {
  std::vector<std::uint32_t> d(e_);
  for (std::uint32_t i = 0; i < e_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

Fq Field::from_digits(const std::vector<std::uint32_t>& d) const {
  Fq a = 0;
  for (std::size_t i = d.size(); i-- > 0;) a = a * p_ + d[i];
  return a;
}

Fq Field::add_ext(Fq a, Fq b) const {
  auto da = digits(a), db = digits(b);
  for (std::uint32_t i = 0; i < e_; ++i) da[i] = (da[i] + db[i]) % p_;
  return from_digits(da);
}

Fq Field::neg_ext(Fq a) const {
  auto da = digits(a);
  for (auto& x : da) x = x == 0 ? 0 : p_ - x;
  return from_digits(da);
}

Fq Field::mul_ext(Fq a, Fq b) const {
  auto da = digits(a), db = digits(b);
  Digits prod(2 * e_ - 1, 0);
  for (std::uint32_t i = 0; i < e_; ++i)
    for (std::uint32_t j = 0; j < e_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
  auto r = mod_fp(prod, modulus_, p_);
  r.resize(e_, 0);
  return from_digits(r);
}

Fq Field::pow(Fq a, std::uint64_t n) const {
  Fq r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

Fq Field::inv(Fq a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_q");
  return pow(a, q_ - 2);
}

bool Field::sqrt(Fq a, Fq& root) const {
  for (Fq b = 0; b < q_; ++b) {
    if (mul(b, b) == a) {
      root = b;
      return true;
    }
  }
  return false;
}

std::string Field::describe() const {
  std::string s = "F_" + std::to_string(q_);
  if (e_ > 1) {
    s += " = F_" + std::to_string(p_) + "[t]/(";
    bool first = true;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
      if (modulus_[i] == 0) continue;
      if (!first) s += "+";
      first = false;
      if (i == 0 || modulus_[i] != 1) s += std::to_string(modulus_[i]);
      if (i > 0) s += (i == 1 ? "t" : "t^" + std::to_string(i));
    }
    s += ")";
  }
  return s;
}

bool same_field(const FieldRef& a, const FieldRef& b) { return a == b || (a && b && *a == *b); }

}  // namespace artin
