#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "artin/bttree.hpp"
#include "artin/cf.hpp"
#include "artin/laurent.hpp"
#include "artin/polynomial.hpp"
#include "artin/series_source.hpp"

namespace artin {

using Rational = boost::rational<std::int64_t>;

// A value in [0, +inf] with +inf + t = +inf.
class Extended {
 public:
  Extended(Rational v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Extended(std::int64_t v) : v_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  static Extended infinity() { return Extended(); }

  bool is_infinite() const { return !v_.has_value(); }
  // Throws std::domain_error on +inf.
  Rational value() const;
  double to_double() const;
  std::string to_string() const;

  friend Extended operator+(const Extended& a, const Extended& b);
  friend bool operator==(const Extended& a, const Extended& b) { return a.v_ == b.v_; }
  friend bool operator<(const Extended& a, const Extended& b);
  friend bool operator<=(const Extended& a, const Extended& b) { return !(b < a); }
  friend bool operator>(const Extended& a, const Extended& b) { return b < a; }

 private:
  Extended() = default;
  std::optional<Rational> v_;
};

// Parses "3", "-1/2", "0.25".
Rational parse_rational_number(const std::string& text);

struct PsiSpec {
  enum class Kind { Identity, Power };
  Kind kind = Kind::Identity;
  Rational a = 1;
  Rational alpha = 1;

  static PsiSpec identity() { return {}; }
  static PsiSpec power(Rational a, Rational alpha);
  // "id" or "pow:a:alpha".
  static PsiSpec parse(const std::string& text);
  std::string describe() const;

  // lim t / psi(t): 1/a when alpha = 1, +inf when alpha < 1.
  Extended a_psi() const;
  bool exact() const { return kind == Kind::Identity || alpha == Rational(1); }
  // psi(t) for t >= 1; for alpha < 1 a dyadic upper bound (denominator 2^30).
  Rational value_upper(int t) const;
  // x / psi(t): exact when psi is linear, a lower bound otherwise.
  Rational ratio(std::int64_t x, int t) const;
};

struct RateRecord {
  int index;
  Extended value;
  bool operator==(const RateRecord& o) const { return index == o.index && value == o.value; }
};

// Exact running extremum of a history of (index, value) records, plus the
// same extremum restricted to a tail window index >= tail_from, which is
// the finite-horizon stand-in for limsup / liminf.
class RateEstimate {
 public:
  enum class Direction { Sup, Inf };
  explicit RateEstimate(Direction dir, int tail_from = 0) : dir_(dir), tail_from_(tail_from) {}

  void add(int index, const Extended& value);
  Direction direction() const { return dir_; }
  int horizon() const { return horizon_; }
  void set_horizon(int h) { horizon_ = h; }
  int tail_from() const { return tail_from_; }
  void set_tail_from(int t) { tail_from_ = t; }
  const std::vector<RateRecord>& history() const { return history_; }
  bool empty() const { return history_.empty(); }
  // Nullopt is the empty-history sentinel.
  std::optional<Extended> running() const;
  std::optional<Extended> tail() const;

  bool operator==(const RateEstimate& o) const {
    return dir_ == o.dir_ && horizon_ == o.horizon_ && tail_from_ == o.tail_from_ && history_ == o.history_;
  }

 private:
  std::optional<Extended> extremum(int from) const;

  Direction dir_;
  int tail_from_;
  int horizon_ = 0;
  std::vector<RateRecord> history_;
};

// deg of the i-th quotient, with deg 0 = 0 counted as 0.
int quotient_degree(const Polynomial& a);

// Indices n = 1..N with Q* | Q_n, computed from the quotients a0..a_{N+1}.
std::vector<int> congruent_indices(const std::vector<Polynomial>& cf, const Polynomial& Qstar, int N);

// Sup over n = 1..N with Q* | Q_n of deg a_{n+1} / (deg a_{n+1} + 2 sum_{i=1}^n deg a_i).
// Needs a0..a_{N+1}. Tail window n >= ceil(N/2).
RateEstimate cf_side_rate(const std::vector<Polynomial>& cf, const Polynomial& Qstar, int N);
// The same ratios with the other index convention, deg a_n / (deg a_n + 2 sum_{i=0}^{n-1} deg a_i)
// for n = 1..N with Q* | Q_{n-1}.
RateEstimate cf_side_rate_intro(const std::vector<Polynomial>& cf, const Polynomial& Qstar, int N);

// Inf over n = 1..N with Q* | Q_n of 2 deg Q_n / (deg Q_n + deg Q_{n+1}).
RateEstimate exponent_estimate(const std::vector<Polynomial>& cf, const Polynomial& Qstar, int N);
// 2 / (tail inf of exponent_estimate); +inf when that inf is 0, nullopt when empty.
std::optional<Extended> nu_estimate(const RateEstimate& exponent);

struct SweepConfig {
  Polynomial Qstar;
  int deg_min = 1;
  int deg_max = 8;
  int samples_per_degree = 4;
  int tail_depth = 4;
  bool include_extremal = true;
  std::uint64_t seed = 1;
  PsiSpec psi = PsiSpec::identity();
};

struct SweepRecord {
  LaurentSeries g;
  int deg_g;
  // Delta_{Q*}(u_g O^2) and Delta(u_g O^2).
  int delta;
  int delta_full;
  // Delta_{Q*}(u_g gamma_f O^2) = the congruence Delta at eta(0).
  int delta_eta0;
  // delta_*(u_g . 0, 0) from branch_time.
  int branch;
  Rational ratio;
  std::uint64_t tail_seed;
  std::optional<int> extremal_n;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  // Sup of delta / psi(deg g) indexed by deg g.
  RateEstimate ratio{RateEstimate::Direction::Sup};
  // max |Delta_{Q*}(u_g gamma_f O^2) - Delta_{Q*}(u_g O^2)| over the records.
  int c_prime_observed = 0;
  // min over extremal records of Delta_{Q*}(u_g O^2) - deg a_{n+1}.
  std::optional<int> extremal_min_excess;
  int branch_mismatches = 0;
  int precision_used = 0;
};

// The extremal parameter g = P_n f / (Q_n f - P_n), which satisfies
// u_g . 0 = P_n / Q_n; f must be known to `prec`.
LaurentSeries extremal_parameter(const LaurentSeries& f, const Polynomial& P, const Polynomial& Q, int prec);

// Samples g = c X^d + (random terms down to X^-tail_depth) for d in the
// range, plus the extremal parameters when asked, and computes
// Delta_{Q*}(u_g O^2) / psi(deg g).
SweepResult orbit_sweep(const SeriesSource& f, const std::vector<Polynomial>& cf, const SweepConfig& cfg);

struct ExcursionPoint {
  int t;
  int depth;    // Delta at the vertex B(f, t)
  int depth_q;  // Delta_{Q*} there (equal to depth when Q* = 1)
};

// Delta along the geodesic ray from x0 = B(f, 0), the exit vertex of HB_inf,
// toward f, for t = 0..T.
std::vector<ExcursionPoint> excursion_profile(const SeriesSource& f, int T,
                                              const std::optional<Polynomial>& Qstar = std::nullopt);

// The tent predicted by the convergents: on [2 deg Q_n, 2 deg Q_{n+1}] the
// depth is deg a_{n+1} - |t - deg Q_n - deg Q_{n+1}|. Returns the first t
// where the profile disagrees, or nullopt.
std::optional<int> excursion_mismatch(const std::vector<ExcursionPoint>& profile, const std::vector<Polynomial>& cf);

struct PeakRecord {
  int n;
  int position;  // deg Q_n + deg Q_{n+1}
  int height;    // deg a_{n+1}
};
// Peaks predicted by the convergent formulas with position <= T.
std::vector<PeakRecord> predicted_peaks(const std::vector<Polynomial>& cf, int T);

struct PsiRateReport {
  PsiSpec psi;
  Extended a_psi = 0;
  SweepResult sweep;
  // Sup of depth(t) / psi(t) over the excursion, t >= 1.
  RateEstimate excursion{RateEstimate::Direction::Sup};
  std::optional<Extended> lhs;  // running sup of the sweep ratios
  Extended rhs = 0;             // a_psi + tail sup of the excursion ratios
  std::optional<Extended> gap;  // |lhs - rhs| (+inf if exactly one side is infinite)
};

PsiRateReport psi_rate_check(const SeriesSource& f, const std::vector<Polynomial>& cf, const SweepConfig& cfg,
                                    int excursion_steps);

struct ThreeWayReport {
  Polynomial Qstar;
  SweepResult sweep;
  RateEstimate cf_side{RateEstimate::Direction::Sup};
  RateEstimate exponent{RateEstimate::Direction::Inf};
  std::optional<Extended> nu;
  // 1 + cf_side tail and 2 - 2/nu; nullopt when the filter is empty.
  std::optional<Rational> cf_side_value;
  std::optional<Rational> exponent_value;
  // 2 deg Q_n / (deg Q_n + deg Q_{n+1}) == 1 - cf_side ratio at every index.
  bool per_index_identity = true;
};

ThreeWayReport three_way_check(const SeriesSource& f, const std::vector<Polynomial>& cf, const SweepConfig& cfg,
                                int N);

struct ThetaPoint {
  int log_s;
  Extended value;
};

// Theta at s = q^L for L = 0..L_max: the sampled sup over g with deg g <= L
// of |Delta(u_g gamma_f O^2) - Delta(gamma_f O^2)|. Nondecreasing in L.
std::vector<ThetaPoint> theta_profile(const SeriesSource& f, const std::vector<Polynomial>& cf, int L_max,
                                      int samples_per_degree, std::uint64_t seed);
Extended theta_sup_estimate(const SeriesSource& f, const std::vector<Polynomial>& cf, int log_s,
                            int samples_per_degree, std::uint64_t seed);

}  // namespace artin
