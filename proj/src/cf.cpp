#include "artin/cf.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace artin {

const Polynomial& CFSpec::quotient(std::size_t i) const {
  if (i == 0) return a0;
  if (i - 1 < preperiod.size()) return preperiod[i - 1];
  if (!period) throw std::out_of_range("finite continued fraction has no quotient a" + std::to_string(i));
  return (*period)[(i - 1 - preperiod.size()) % period->size()];
}

std::vector<Polynomial> CFSpec::quotients(std::size_t count) const {
  if (is_finite()) count = std::min(count, finite_length());
  std::vector<Polynomial> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(quotient(i));
  return out;
}

void CFSpec::validate() const {
  if (period && period->empty()) throw std::invalid_argument("empty period");
  const std::size_t n = 1 + preperiod.size() + (period ? period->size() : 0);
  for (std::size_t i = 1; i < n; ++i)
    if (quotient(i).degree() < Degree::of(1))
      throw std::invalid_argument("partial quotient a" + std::to_string(i) + " must have degree >= 1");
}

RationalFunction CFSpec::fold() const {
  if (!is_finite()) throw std::logic_error("fold of an infinite continued fraction");
  const auto cf = quotients(finite_length());
  const auto conv = convergents(cf, cf.size());
  return RationalFunction(conv.back().P, conv.back().Q);
}

std::vector<ConvergentPair> convergents(const std::vector<Polynomial>& cf, std::size_t count) {
  if (count > cf.size()) throw std::out_of_range("not enough partial quotients for the requested convergents");
  std::vector<ConvergentPair> out;
  if (count == 0) return out;
  const FieldRef& F = cf[0].field();
  Polynomial prevP = Polynomial::constant(F, 1), prevQ(F);
  Polynomial P = cf[0], Q = Polynomial::constant(F, 1);
  out.push_back({0, P, Q, prevP, prevQ});
  for (std::size_t n = 1; n < count; ++n) {
    Polynomial nextP = cf[n] * P + prevP;
    Polynomial nextQ = cf[n] * Q + prevQ;
    prevP = std::exchange(P, std::move(nextP));
    prevQ = std::exchange(Q, std::move(nextQ));
    out.push_back({n, P, Q, prevP, prevQ});
  }
  return out;
}

ArtinStep artin_step(const LaurentSeries& f) {
  if (f.is_known_zero()) throw std::domain_error("Artin map is undefined at 0");
  const int v = f.valuation();
  if (v < 1) throw std::domain_error("Artin map needs f in X^-1 O");
  if (f.horizon() && *f.horizon() < 2 * v + 1)
    throw PrecisionExhausted("horizon " + std::to_string(*f.horizon()) + " cannot certify the next quotient");
  auto [a, rest] = f.inverse().integral_fractional();
  return {std::move(a), std::move(rest)};
}

Expansion cf_expand(const RationalFunction& r, std::size_t n_max) {
  Expansion out;
  Polynomial num = r.num(), den = r.den();
  while (true) {
    auto [a, rem] = num.divmod(den);
    out.quotients.push_back(std::move(a));
    if (rem.is_zero()) {
      out.status = Expansion::Status::Terminated;
      break;
    }
    if (out.quotients.size() > n_max) break;
    num = std::exchange(den, std::move(rem));
  }
  return out;
}

namespace {

// Runs the Artin map on one precision level. Returns false when more
// digits are needed.
bool expand_at(const LaurentSeries& s, std::size_t n_max, Expansion& out) {
  out.quotients.clear();
  out.status = Expansion::Status::Complete;
  try {
    auto [a0, f] = s.integral_fractional();
    out.quotients.push_back(std::move(a0));
    while (out.quotients.size() <= n_max) {
      if (f.is_known_zero()) {
        out.status = Expansion::Status::Terminated;
        return true;
      }
      if (f.is_zero_to_precision()) return false;
      auto step = artin_step(f);
      out.quotients.push_back(std::move(step.quotient));
      f = std::move(step.remainder);
    }
    return true;
  } catch (const PrecisionExhausted&) {
    return false;
  }
}

}  // namespace

Expansion cf_expand(const SeriesSource& src, std::size_t n_max) {
  if (src.exact_value()) return cf_expand(*src.exact_value(), n_max);
  const int cap = std::min(kPrecisionCap, src.max_precision().value_or(kPrecisionCap));
  int prec = std::min(kDefaultPrecision, cap);
  Expansion prev;
  while (true) {
    Expansion cur;
    const bool done = expand_at(src.at(prec), n_max, cur);
    cur.precision_used = prec;
    // The expansion is canonical: a deeper run must extend the shallower prefix.
    for (std::size_t i = 0; i < std::min(prev.quotients.size(), cur.quotients.size()); ++i)
      if (!(prev.quotients[i] == cur.quotients[i]))
        throw std::logic_error("continued fraction prefix changed under refinement");
    if (done) return cur;
    if (prec >= cap)
      throw ExpansionCapReached("precision cap " + std::to_string(cap) + " reached after " +
                                    std::to_string(cur.quotients.size()) + " quotients",
                                std::move(cur.quotients));
    prev = std::move(cur);
    prec = std::min(2 * prec, cap);
  }
}

LaurentSeries cf_reconstruct(const CFSpec& spec, int prec) {
  spec.validate();
  if (spec.is_finite()) return series_from_rational(spec.fold(), prec);
  std::vector<Polynomial> cf{spec.a0, spec.quotient(1)};
  // deg Q_n + deg Q_{n+1} grows by at least 2 per quotient.
  int degQ = 0;
  int degQnext = cf[1].degree().value();
  while (degQ + degQnext < prec) {
    cf.push_back(spec.quotient(cf.size()));
    degQ = degQnext;
    degQnext += cf.back().degree().value();
  }
  // Convergent n = cf.size() - 2 has error exponent degQ + degQnext >= prec.
  const auto conv = convergents(cf, cf.size() - 1);
  return series_from_rational(RationalFunction(conv.back().P, conv.back().Q), prec);
}

SeriesSource cf_source(const CFSpec& spec) {
  spec.validate();
  if (spec.is_finite()) return SeriesSource::rational(spec.fold());
  std::string desc = spec.a0.to_string() + ";";
  for (std::size_t i = 0; i < spec.preperiod.size(); ++i) desc += (i ? "," : "") + spec.preperiod[i].to_string();
  desc += "|";
  for (std::size_t i = 0; i < spec.period->size(); ++i) desc += (i ? "," : "") + (*spec.period)[i].to_string();
  return SeriesSource::generated(SeriesSource::Kind::CfSpec, spec.a0.field(),
                                 [spec](int prec) { return cf_reconstruct(spec, prec); }, desc);
}

std::optional<LaurentSeries> series_sqrt(const LaurentSeries& s) {
  const FieldRef& field = s.field();
  const Field& F = *field;
  if (F.characteristic() == 2) throw std::domain_error("CHAR-TWO: series square roots need odd characteristic");
  if (s.is_known_zero()) return s;
  const int v = s.valuation();
  if (v % 2 != 0) return std::nullopt;
  Fq w0;
  if (!F.sqrt(s.coeff(v), w0)) return std::nullopt;
  const int m = v / 2;
  const int digits = s.horizon() ? *s.horizon() - v : kDefaultPrecision;
  std::vector<Fq> w(static_cast<std::size_t>(digits), 0);
  w[0] = w0;
  const Fq inv2w0 = F.inv(F.add(w0, w0));
  for (int k = 1; k < digits; ++k) {
    Fq acc = s.coeff(v + k);
    for (int i = 1; i < k; ++i) acc = F.sub(acc, F.mul(w[i], w[k - i]));
    w[k] = F.mul(acc, inv2w0);
  }
  return LaurentSeries::truncated(field, m, std::move(w), m + digits);
}

SeriesSource quadratic_from_equation(const RationalFunction& b, const RationalFunction& c, int prec) {
  const FieldRef& field = b.field();
  const Field& F = *field;
  if (F.characteristic() == 2) throw std::domain_error("CHAR-TWO: quadratic construction needs odd characteristic");
  const RationalFunction two(Polynomial::constant(field, F.from_int(2)));
  const RationalFunction four(Polynomial::constant(field, F.from_int(4)));
  const RationalFunction disc = b * b - four * c;
  const std::string desc = "f^2+(" + b.to_string() + ")f+(" + c.to_string() + ")=0";

  if (auto root = polynomial_sqrt(disc.num() * disc.den())) {
    const RationalFunction s(*root, disc.den());
    for (const auto& r : {(-b + s) / two, (-b - s) / two}) {
      if (r.is_zero() || abs_value(r) < AbsValue::q_power(0)) return SeriesSource::rational(r);
    }
    throw std::domain_error("neither root of " + desc + " lies in X^-1 O");
  }

  // Pick the sign once, then regenerate at any precision with that sign.
  auto root_at = [b, disc, two](int p, int sign) -> std::optional<LaurentSeries> {
    const int vd = disc.is_zero() ? 0 : disc.den().degree().value() - disc.num().degree().value();
    const int guard = std::max(0, -vd) + std::max(0, vd / 2) + 2;
    auto s = series_sqrt(series_from_rational(disc, p + guard));
    if (!s) return std::nullopt;
    const LaurentSeries bs = series_from_rational(b, p + guard);
    const LaurentSeries sum = sign > 0 ? -bs + *s : -bs - *s;
    return sum.scaled(two.num().field()->inv(two.num().leading())).truncate(p);
  };
  const auto probe = root_at(prec, +1);
  if (!probe) throw std::domain_error("discriminant of " + desc + " has no square root in F_q((X^-1))");
  for (int sign : {+1, -1}) {
    const auto r = root_at(prec, sign);
    if (r->lead() && *r->lead() >= 1) {
      return SeriesSource::generated(
          SeriesSource::Kind::Quadratic, field, [root_at, sign](int p) { return *root_at(p, sign); }, desc);
    }
  }
  throw std::domain_error("neither root of " + desc + " lies in X^-1 O");
}

}  // namespace artin
