#include "artin/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "artin/cf.hpp"
#include "artin/errors.hpp"

namespace artin {

namespace {

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t base = 0) : text_(text), base_(base) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::size_t offset() const { return base_ + pos_; }
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, offset()); }

  unsigned long long nat() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a number");
    unsigned long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<unsigned>(text_[pos_] - '0');
      if (v > (1ull << 40)) fail("number too large");
      ++pos_;
    }
    return v;
  }

 private:
  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

Fq parse_coeff(Cursor& cur, const Field& F) {
  if (cur.accept('[')) {
    std::vector<unsigned long long> digits{cur.nat()};
    while (cur.accept(',')) digits.push_back(cur.nat());
    if (!cur.accept(']')) cur.fail("expected ']'");
    if (digits.size() > F.degree()) cur.fail("too many coordinates for " + F.describe());
    Fq code = 0;
    for (std::size_t i = digits.size(); i-- > 0;) code = code * F.characteristic() + static_cast<Fq>(digits[i] % F.characteristic());
    return code;
  }
  return F.from_int(static_cast<long long>(cur.nat() % F.characteristic()));
}

Polynomial parse_term(Cursor& cur, const FieldRef& field) {
  const Field& F = *field;
  Fq c = 1;
  const char ch = cur.peek();
  const bool has_coeff = std::isdigit(static_cast<unsigned char>(ch)) || ch == '[';
  if (has_coeff) {
    c = parse_coeff(cur, F);
    cur.accept('*');
    if (cur.peek() != 'X' && cur.peek() != 'x') return Polynomial::constant(field, c);
  }
  if (!cur.accept('X') && !cur.accept('x')) cur.fail("expected a term");
  unsigned long long e = 1;
  if (cur.accept('^')) e = cur.nat();
  if (e > 100000) cur.fail("exponent too large");
  return Polynomial::monomial(field, c, static_cast<int>(e));
}

Polynomial parse_poly_at(Cursor& cur, const FieldRef& field) {
  Polynomial acc(field);
  bool negate = cur.accept('-');
  while (true) {
    Polynomial t = parse_term(cur, field);
    acc += negate ? -t : t;
    if (cur.accept('+')) {
      negate = false;
    } else if (cur.accept('-')) {
      negate = true;
    } else {
      break;
    }
  }
  return acc;
}

Polynomial parse_factor(Cursor& cur, const FieldRef& field) {
  if (cur.accept('(')) {
    Polynomial p = parse_poly_at(cur, field);
    if (!cur.accept(')')) cur.fail("expected ')'");
    return p;
  }
  return parse_poly_at(cur, field);
}

}  // namespace

Polynomial parse_poly(std::string_view text, const FieldRef& field) {
  Cursor cur(text);
  Polynomial p = parse_poly_at(cur, field);
  if (!cur.at_end()) cur.fail("unexpected character");
  return p;
}

RationalFunction parse_rational(std::string_view text, const FieldRef& field) {
  Cursor cur(text);
  Polynomial num = parse_factor(cur, field);
  Polynomial den = Polynomial::constant(field, 1);
  if (cur.accept('/')) {
    const std::size_t at = cur.offset();
    den = parse_factor(cur, field);
    if (den.is_zero()) throw ParseError("zero denominator", at);
  }
  if (!cur.at_end()) cur.fail("unexpected character");
  return RationalFunction(std::move(num), std::move(den));
}

CFSpec parse_cf_spec(std::string_view text, const FieldRef& field) {
  // Split on ';' and '|' first, then parse each comma-separated quotient.
  const std::size_t semi = text.find(';');
  const std::size_t bar = text.find('|');
  if (bar != std::string_view::npos && (semi == std::string_view::npos || bar < semi))
    throw ParseError("period marker before ';'", bar);

  // Next top-level ',' at or after `from`; commas inside [...] belong to
  // extension-field literals.
  auto next_comma = [](std::string_view body, std::size_t from) {
    int depth = 0;
    for (std::size_t i = from; i < body.size(); ++i) {
      if (body[i] == '[') ++depth;
      else if (body[i] == ']') --depth;
      else if (body[i] == ',' && depth == 0) return i;
    }
    return std::string_view::npos;
  };

  auto parse_list = [&](std::size_t begin, std::size_t end) {
    std::vector<std::pair<Polynomial, std::size_t>> out;
    std::string_view body = text.substr(begin, end - begin);
    if (body.find_first_not_of(" \t") == std::string_view::npos) return out;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = next_comma(body, start);
      const std::size_t stop = comma == std::string_view::npos ? body.size() : comma;
      Cursor cur(body.substr(start, stop - start), begin + start);
      Polynomial p = parse_poly_at(cur, field);
      if (!cur.at_end()) cur.fail("unexpected character");
      out.emplace_back(std::move(p), begin + start);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return out;
  };

  CFSpec spec{Polynomial(field), {}, std::nullopt};
  {
    const std::size_t end = semi == std::string_view::npos ? text.size() : semi;
    Cursor cur(text.substr(0, end));
    spec.a0 = parse_poly_at(cur, field);
    if (!cur.at_end()) cur.fail("unexpected character");
  }
  if (semi == std::string_view::npos) return spec;

  const std::size_t pre_end = bar == std::string_view::npos ? text.size() : bar;
  std::size_t index = 1;
  for (auto& [p, at] : parse_list(semi + 1, pre_end)) {
    if (p.degree() < Degree::of(1))
      throw ParseError("partial quotient a" + std::to_string(index) + " must have degree >= 1", at);
    spec.preperiod.push_back(std::move(p));
    ++index;
  }
  if (bar != std::string_view::npos) {
    auto period = parse_list(bar + 1, text.size());
    if (period.empty()) throw ParseError("empty period after '|'", bar + 1);
    spec.period.emplace();
    for (auto& [p, at] : period) {
      if (p.degree() < Degree::of(1))
        throw ParseError("partial quotient a" + std::to_string(index) + " must have degree >= 1", at);
      spec.period->push_back(std::move(p));
      ++index;
    }
  }
  return spec;
}

}  // namespace artin
