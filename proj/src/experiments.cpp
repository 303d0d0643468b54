#include "artin/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "artin/errors.hpp"
#include "artin/reduction.hpp"

namespace artin {

// ---- Extended ----

Rational Extended::value() const {
  if (!v_) throw std::domain_error("value of +inf");
  return *v_;
}

double Extended::to_double() const {
  if (!v_) return HUGE_VAL;
  return static_cast<double>(v_->numerator()) / static_cast<double>(v_->denominator());
}

std::string Extended::to_string() const {
  if (!v_) return "inf";
  if (v_->denominator() == 1) return std::to_string(v_->numerator());
  return std::to_string(v_->numerator()) + "/" + std::to_string(v_->denominator());
}

Extended operator+(const Extended& a, const Extended& b) {
  if (a.is_infinite() || b.is_infinite()) return Extended::infinity();
  return Extended(*a.v_ + *b.v_);
}

bool operator<(const Extended& a, const Extended& b) {
  if (a.is_infinite()) return false;
  if (b.is_infinite()) return true;
  return *a.v_ < *b.v_;
}

Rational parse_rational_number(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("not a rational number: '" + text + "'"); };
  auto parse_int = [&](const std::string& s) -> std::int64_t {
    if (s.empty()) throw bad();
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      throw bad();
    }
    if (pos != s.size()) throw bad();
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const auto den = parse_int(text.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string::npos) throw bad();
    std::string whole = text.substr(0, dot);
    const bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    const Rational w(parse_int(whole));
    return neg ? w - Rational(f, den) : w + Rational(f, den);
  }
  return Rational(parse_int(text));
}

// ---- PsiSpec ----

PsiSpec PsiSpec::power(Rational a, Rational alpha) {
  if (a <= Rational(0)) throw std::invalid_argument("psi: a must be positive");
  if (alpha <= Rational(0) || alpha > Rational(1)) throw std::invalid_argument("psi: alpha must lie in (0, 1]");
  return {Kind::Power, a, alpha};
}

PsiSpec PsiSpec::parse(const std::string& text) {
  if (text == "id") return identity();
  if (text.rfind("pow:", 0) == 0) {
    const auto rest = text.substr(4);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("psi: expected pow:a:alpha");
    return power(parse_rational_number(rest.substr(0, colon)), parse_rational_number(rest.substr(colon + 1)));
  }
  throw std::invalid_argument("psi: expected 'id' or 'pow:a:alpha', got '" + text + "'");
}

std::string PsiSpec::describe() const {
  if (kind == Kind::Identity) return "id";
  auto r = [](Rational x) {
    return x.denominator() == 1 ? std::to_string(x.numerator())
                                : std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
  };
  return "pow:" + r(a) + ":" + r(alpha);
}

Extended PsiSpec::a_psi() const {
  if (kind == Kind::Identity) return Rational(1);
  if (alpha == Rational(1)) return Rational(1) / a;
  return Extended::infinity();
}

Rational PsiSpec::value_upper(int t) const {
  if (t < 1) throw std::domain_error("psi evaluated at t < 1");
  if (kind == Kind::Identity) return Rational(t);
  if (alpha == Rational(1)) return a * Rational(t);
  constexpr std::int64_t kScale = std::int64_t{1} << 30;
  const long double x = static_cast<long double>(a.numerator()) / static_cast<long double>(a.denominator()) *
                        std::pow(static_cast<long double>(t), static_cast<long double>(alpha.numerator()) /
                                                                  static_cast<long double>(alpha.denominator()));
  // Round up with a relative margin well above long double error.
  const auto up = static_cast<std::int64_t>(std::ceil(x * (1.0L + 1e-12L) * kScale)) + 1;
  return Rational(up, kScale);
}

Rational PsiSpec::ratio(std::int64_t x, int t) const { return Rational(x) / value_upper(t); }

// ---- RateEstimate ----

void RateEstimate::add(int index, const Extended& value) {
  history_.push_back({index, value});
  horizon_ = std::max(horizon_, index);
}

std::optional<Extended> RateEstimate::extremum(int from) const {
  std::optional<Extended> best;
  for (const auto& r : history_) {
    if (r.index < from) continue;
    if (!best || (dir_ == Direction::Sup ? *best < r.value : r.value < *best)) best = r.value;
  }
  return best;
}

std::optional<Extended> RateEstimate::running() const { return extremum(INT32_MIN); }

std::optional<Extended> RateEstimate::tail() const { return extremum(tail_from_); }

// ---- continued-fraction side ----

int quotient_degree(const Polynomial& a) { return a.is_zero() ? 0 : a.degree().value(); }

namespace {

void need_quotients(const std::vector<Polynomial>& cf, int N) {
  if (N < 0) throw std::invalid_argument("N must be nonnegative");
  if (static_cast<int>(cf.size()) < N + 2)
    throw std::invalid_argument("need " + std::to_string(N + 2) + " partial quotients, have " +
                                std::to_string(cf.size()));
}

int ceil_half(int N) { return (N + 1) / 2; }

// deg Q_n for n = 0..cf.size()-1.
std::vector<int> denominator_degrees(const std::vector<Polynomial>& cf) {
  std::vector<int> d(cf.size(), 0);
  for (std::size_t n = 1; n < cf.size(); ++n) d[n] = d[n - 1] + quotient_degree(cf[n]);
  return d;
}

}  // namespace

std::vector<int> congruent_indices(const std::vector<Polynomial>& cf, const Polynomial& Qstar, int N) {
  if (Qstar.is_zero()) throw std::domain_error("Q* must be nonzero");
  need_quotients(cf, N);
  std::vector<int> out;
  const auto conv = convergents(cf, static_cast<std::size_t>(N) + 1);
  for (int n = 1; n <= N; ++n)
    if ((conv[static_cast<std::size_t>(n)].Q % Qstar).is_zero()) out.push_back(n);
  return out;
}

RateEstimate cf_side_rate(const std::vector<Polynomial>& cf, const Polynomial& Qstar, int N) {
  RateEstimate est(RateEstimate::Direction::Sup, ceil_half(N));
  est.set_horizon(N);
  if (N == 0) return est;
  const auto dq = denominator_degrees(cf);
  for (int n : congruent_indices(cf, Qstar, N)) {
    const int an1 = quotient_degree(cf[static_cast<std::size_t>(n) + 1]);
    est.add(n, Rational(an1, an1 + 2 * dq[static_cast<std::size_t>(n)]));
  }
  est.set_horizon(N);
  return est;
}

RateEstimate cf_side_rate_intro(const std::vector<Polynomial>& cf, const Polynomial& Qstar, int N) {
  RateEstimate est(RateEstimate::Direction::Sup, ceil_half(N));
  est.set_horizon(N);
  if (N == 0) return est;
  need_quotients(cf, N);
  const auto conv = convergents(cf, static_cast<std::size_t>(N));
  int sum = 0;  // sum_{i=0}^{n-1} deg a_i
  for (int n = 1; n <= N; ++n) {
    sum += quotient_degree(cf[static_cast<std::size_t>(n) - 1]);
    if (!(conv[static_cast<std::size_t>(n) - 1].Q % Qstar).is_zero()) continue;
    const int an = quotient_degree(cf[static_cast<std::size_t>(n)]);
    est.add(n, Rational(an, an + 2 * sum));
  }
  est.set_horizon(N);
  return est;
}

RateEstimate exponent_estimate(const std::vector<Polynomial>& cf, const Polynomial& Qstar, int N) {
  RateEstimate est(RateEstimate::Direction::Inf, ceil_half(N));
  est.set_horizon(N);
  if (N == 0) return est;
  const auto dq = denominator_degrees(cf);
  for (int n : congruent_indices(cf, Qstar, N)) {
    const auto k = static_cast<std::size_t>(n);
    est.add(n, Rational(2 * dq[k], dq[k] + dq[k + 1]));
  }
  est.set_horizon(N);
  return est;
}

std::optional<Extended> nu_estimate(const RateEstimate& exponent) {
  const auto t = exponent.tail();
  if (!t) return std::nullopt;
  if (t->value() == Rational(0)) return Extended::infinity();
  return Extended(Rational(2) / t->value());
}

// ---- sweeps ----

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, int d, int i) {
  return splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(d) << 32) ^ static_cast<std::uint64_t>(i)));
}

LaurentSeries random_parameter(const FieldRef& F, int d, int tail_depth, std::uint64_t s) {
  std::mt19937_64 rng(s);
  std::vector<Fq> c(static_cast<std::size_t>(d + tail_depth + 1));
  const auto q = F->size();
  c[0] = 1 + static_cast<Fq>(rng() % (q - 1));
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = static_cast<Fq>(rng() % q);
  return LaurentSeries::exact(F, -d, std::move(c));
}

int source_cap(const SeriesSource& f) { return std::min(kPrecisionCap, f.max_precision().value_or(kPrecisionCap)); }

// Runs fn(prec) with doubling precision until it stops raising
// PrecisionExhausted.
template <class Fn>
auto with_precision(const SeriesSource& f, int start, Fn fn) {
  const int cap = source_cap(f);
  for (int prec = std::min(start, cap);; prec = std::min(2 * prec, cap)) {
    try {
      return fn(prec);
    } catch (const PrecisionExhausted& e) {
      if (prec >= cap) throw PrecisionCapReached(std::string("precision cap reached: ") + e.what());
    }
  }
}

int delta_q_of(const Mat2& M, const Polynomial& Qstar) {
  return Qstar.is_constant() ? delta_invariant(M) : delta_congruence(M, Qstar);
}

// u_g gamma_f = gamma_f (1 g; 0 1) = (1, g; 1/f, 1 + g/f).
Mat2 eta0_matrix(const LaurentSeries& f, const LaurentSeries& g) {
  const auto& F = f.field();
  const auto inv = f.inverse();
  return {LaurentSeries::constant(F, 1), g, inv, LaurentSeries::constant(F, 1) + g * inv};
}

struct Evaluated {
  LaurentSeries g;
  int delta, delta_full, delta_eta0, branch;
};

Evaluated evaluate(const LaurentSeries& fP, const LaurentSeries& g, const Polynomial& Qstar) {
  const auto& F = fP.field();
  const auto u = unipotent_lattice(fP, g);
  const int full = delta_invariant(u);
  const int dq = Qstar.is_constant() ? full : delta_congruence(u, Qstar);
  const int e0 = delta_q_of(eta0_matrix(fP, g), Qstar);
  const auto zero = BoundaryPoint::point(LaurentSeries::known_zero(F));
  const auto eta = apply_mat(u, zero, fP.extent());
  const auto base = apply_mat(gamma_f(fP), TreeVertex::root(F));
  const int br = branch_time(eta, zero, BoundaryPoint::point(fP), base);
  return {g, dq, full, e0, br};
}

}  // namespace

LaurentSeries extremal_parameter(const LaurentSeries& f, const Polynomial& P, const Polynomial& Q, int prec) {
  const auto Ps = LaurentSeries::from_polynomial(P);
  const auto Qs = LaurentSeries::from_polynomial(Q);
  return divide(Ps * f, Qs * f - Ps, prec);
}

SweepResult orbit_sweep(const SeriesSource& f, const std::vector<Polynomial>& cf, const SweepConfig& cfg) {
  const auto& F = f.field();
  if (cfg.Qstar.is_zero()) throw std::domain_error("Q* must be nonzero");
  const int dmin = std::max(1, cfg.deg_min);
  if (cfg.deg_max < dmin) throw std::invalid_argument("empty degree range");
  if (cfg.tail_depth < 0) throw std::invalid_argument("tail_depth must be nonnegative");

  SweepResult res;
  res.ratio = RateEstimate(RateEstimate::Direction::Sup, (dmin + cfg.deg_max + 1) / 2);
  res.ratio.set_horizon(cfg.deg_max);
  const int start = std::max(kDefaultPrecision, 6 * cfg.deg_max + 2 * cfg.tail_depth + 16);

  auto record = [&](const Evaluated& e, std::uint64_t ts, std::optional<int> n, int prec) {
    const int deg = -e.g.valuation();
    SweepRecord r{e.g, deg, e.delta, e.delta_full, e.delta_eta0, e.branch, cfg.psi.ratio(e.delta, deg), ts, n};
    res.ratio.add(deg, r.ratio);
    res.c_prime_observed = std::max(res.c_prime_observed, std::abs(e.delta_eta0 - e.delta));
    if (e.branch != deg) ++res.branch_mismatches;
    if (n) {
      const int excess = e.delta - quotient_degree(cf[static_cast<std::size_t>(*n) + 1]);
      res.extremal_min_excess = res.extremal_min_excess ? std::min(*res.extremal_min_excess, excess) : excess;
    }
    res.precision_used = std::max(res.precision_used, prec);
    res.records.push_back(std::move(r));
  };

  for (int d = dmin; d <= cfg.deg_max; ++d) {
    for (int i = 0; i < cfg.samples_per_degree; ++i) {
      const auto s = sample_seed(cfg.seed, d, i);
      const auto g = random_parameter(F, d, cfg.tail_depth, s);
      int used = 0;
      const auto e = with_precision(f, start, [&](int prec) {
        used = prec;
        return evaluate(f.at(prec), g, cfg.Qstar);
      });
      record(e, s, std::nullopt, used);
    }
  }

  if (cfg.include_extremal && cf.size() >= 2) {
    const auto conv = convergents(cf, cf.size());
    for (std::size_t n = 1; n + 1 < conv.size(); ++n) {
      const int span = conv[n].Q.degree().value() + conv[n + 1].Q.degree().value();
      if (span > cfg.deg_max) break;
      if (conv[n].P.is_zero()) continue;
      int used = 0;
      const auto e = with_precision(f, start + 4 * span, [&](int prec) {
        used = prec;
        const auto fP = f.at(prec);
        const auto g = extremal_parameter(fP, conv[n].P, conv[n].Q, prec);
        if (!g.lead()) throw PrecisionExhausted("extremal parameter not certified");
        return evaluate(fP, g, cfg.Qstar);
      });
      const int deg = -e.g.valuation();
      if (deg < dmin || deg > cfg.deg_max) continue;
      record(e, 0, static_cast<int>(n), used);
    }
  }
  return res;
}

// ---- excursions ----

std::vector<ExcursionPoint> excursion_profile(const SeriesSource& f, int T, const std::optional<Polynomial>& Qstar) {
  if (T < 0) throw std::invalid_argument("T must be nonnegative");
  if (Qstar && Qstar->is_zero()) throw std::domain_error("Q* must be nonzero");
  const auto xi = BoundaryPoint::from_source(f, std::max(kDefaultPrecision, T + 1));
  std::vector<ExcursionPoint> out;
  out.reserve(static_cast<std::size_t>(T) + 1);
  for (int t = 0; t <= T; ++t) {
    const auto v = TreeVertex::ball(xi.value_to(t), t);
    const auto M = v.matrix();
    const int d = delta_invariant(M);
    const int dq = Qstar && !Qstar->is_constant() ? delta_congruence(M, *Qstar) : d;
    out.push_back({t, d, dq});
  }
  return out;
}

std::optional<int> excursion_mismatch(const std::vector<ExcursionPoint>& profile, const std::vector<Polynomial>& cf) {
  const auto dq = denominator_degrees(cf);
  for (const auto& p : profile) {
    std::size_t n = 0;
    while (n + 1 < dq.size() && 2 * dq[n + 1] < p.t) ++n;
    if (n + 1 >= dq.size()) throw std::invalid_argument("excursion_mismatch: not enough partial quotients");
    const int expect = quotient_degree(cf[n + 1]) - std::abs(p.t - dq[n] - dq[n + 1]);
    if (p.depth != expect) return p.t;
  }
  return std::nullopt;
}

std::vector<PeakRecord> predicted_peaks(const std::vector<Polynomial>& cf, int T) {
  const auto dq = denominator_degrees(cf);
  std::vector<PeakRecord> out;
  for (std::size_t n = 0; n + 1 < dq.size(); ++n) {
    const int pos = dq[n] + dq[n + 1];
    if (pos > T) break;
    out.push_back({static_cast<int>(n), pos, quotient_degree(cf[n + 1])});
  }
  return out;
}

// ---- combined reports ----

PsiRateReport psi_rate_check(const SeriesSource& f, const std::vector<Polynomial>& cf, const SweepConfig& cfg,
                                    int excursion_steps) {
  PsiRateReport rep;
  rep.psi = cfg.psi;
  rep.a_psi = cfg.psi.a_psi();
  rep.sweep = orbit_sweep(f, cf, cfg);
  const bool congruence = !cfg.Qstar.is_constant();
  const auto prof = excursion_profile(f, excursion_steps, congruence ? std::optional<Polynomial>(cfg.Qstar)
                                                                     : std::nullopt);
  rep.excursion = RateEstimate(RateEstimate::Direction::Sup, (excursion_steps + 1) / 2);
  for (const auto& p : prof)
    if (p.t >= 1) rep.excursion.add(p.t, cfg.psi.ratio(p.depth_q, p.t));
  rep.excursion.set_horizon(excursion_steps);
  rep.lhs = rep.sweep.ratio.running();
  const auto tail = rep.excursion.tail();
  rep.rhs = rep.a_psi + (tail ? *tail : Extended(0));
  if (rep.lhs) {
    if (rep.lhs->is_infinite() && rep.rhs.is_infinite()) rep.gap = Extended(0);
    else if (rep.lhs->is_infinite() || rep.rhs.is_infinite()) rep.gap = Extended::infinity();
    else {
      const auto diff = rep.lhs->value() - rep.rhs.value();
      rep.gap = Extended(diff < Rational(0) ? -diff : diff);
    }
  }
  return rep;
}

ThreeWayReport three_way_check(const SeriesSource& f, const std::vector<Polynomial>& cf, const SweepConfig& cfg,
                                int N) {
  ThreeWayReport rep{cfg.Qstar, {}, cf_side_rate(cf, cfg.Qstar, N), exponent_estimate(cf, cfg.Qstar, N),
                      std::nullopt, std::nullopt, std::nullopt, true};
  SweepConfig c = cfg;
  c.psi = PsiSpec::identity();
  rep.sweep = orbit_sweep(f, cf, c);
  rep.nu = nu_estimate(rep.exponent);
  if (auto t = rep.cf_side.tail()) rep.cf_side_value = Rational(1) + t->value();
  if (auto t = rep.exponent.tail()) rep.exponent_value = Rational(2) - t->value();
  const auto& a = rep.cf_side.history();
  const auto& b = rep.exponent.history();
  if (a.size() != b.size()) rep.per_index_identity = false;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (a[i].index != b[i].index || b[i].value.value() != Rational(1) - a[i].value.value())
      rep.per_index_identity = false;
  return rep;
}

std::vector<ThetaPoint> theta_profile(const SeriesSource& f, const std::vector<Polynomial>& cf, int L_max,
                                      int samples_per_degree, std::uint64_t seed) {
  if (L_max < 0) throw std::invalid_argument("log_s must be nonnegative");
  const auto& F = f.field();
  const int start = std::max(kDefaultPrecision, 6 * L_max + 16);
  const int base = with_precision(f, start, [&](int prec) {
    return delta_invariant(eta0_matrix(f.at(prec), LaurentSeries::known_zero(F)));
  });
  // best[d]: sup over sampled g of degree exactly d.
  std::vector<int> best(static_cast<std::size_t>(L_max) + 1, 0);
  auto consider = [&](const LaurentSeries& g, int prec) {
    const int deg = -g.valuation();
    if (deg < 0 || deg > L_max) return;
    const int v = std::abs(delta_invariant(eta0_matrix(f.at(prec), g)) - base);
    best[static_cast<std::size_t>(deg)] = std::max(best[static_cast<std::size_t>(deg)], v);
  };
  for (int d = 1; d <= L_max; ++d)
    for (int i = 0; i < samples_per_degree; ++i) {
      const auto g = random_parameter(F, d, 0, sample_seed(seed, d, i));
      with_precision(f, start, [&](int prec) {
        consider(g, prec);
        return 0;
      });
    }
  if (cf.size() >= 2) {
    const auto conv = convergents(cf, cf.size());
    for (std::size_t n = 1; n + 1 < conv.size(); ++n) {
      const int span = conv[n].Q.degree().value() + conv[n + 1].Q.degree().value();
      if (span > L_max + 2) break;
      if (conv[n].P.is_zero()) continue;
      with_precision(f, start + 4 * span, [&](int prec) {
        const auto g = extremal_parameter(f.at(prec), conv[n].P, conv[n].Q, prec);
        if (!g.lead()) throw PrecisionExhausted("extremal parameter not certified");
        consider(g, prec);
        return 0;
      });
    }
  }
  std::vector<ThetaPoint> out;
  int run = 0;
  for (int L = 0; L <= L_max; ++L) {
    run = std::max(run, best[static_cast<std::size_t>(L)]);
    out.push_back({L, Extended(std::int64_t{run})});
  }
  return out;
}

Extended theta_sup_estimate(const SeriesSource& f, const std::vector<Polynomial>& cf, int log_s,
                            int samples_per_degree, std::uint64_t seed) {
  return theta_profile(f, cf, log_s, samples_per_degree, seed).back().value;
}

}  // namespace artin
