#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "artin/errors.hpp"
#include "artin/laurent.hpp"
#include "artin/polynomial.hpp"
#include "artin/series_source.hpp"

namespace artin {

// Partial quotients a0; a1, a2, ... with an optional repeating tail. Every
// a_i with i >= 1 has degree >= 1; a0 is unrestricted.
struct CFSpec {
  Polynomial a0;
  std::vector<Polynomial> preperiod;
  std::optional<std::vector<Polynomial>> period;

  bool is_finite() const { return !period.has_value(); }
  // Number of quotients a0..a_k when finite.
  std::size_t finite_length() const { return 1 + preperiod.size(); }
  // a_i, repeating the period as needed. Throws std::out_of_range past the
  // end of a finite spec.
  const Polynomial& quotient(std::size_t i) const;
  // a0..a_{count-1} (fewer for a short finite spec).
  std::vector<Polynomial> quotients(std::size_t count) const;
  // Throws std::invalid_argument naming the first bad index.
  void validate() const;
  // The value of a finite spec.
  RationalFunction fold() const;
};

// P_n / Q_n together with the previous pair; P/Q is the n-th convergent.
struct ConvergentPair {
  std::size_t n;
  Polynomial P, Q, prevP, prevQ;
};

// (P_n, Q_n) for n = 0..count-1 by the three-term recurrence from
// P_{-1} = 1, Q_{-1} = 0, P_0 = a0, Q_0 = 1.
std::vector<ConvergentPair> convergents(const std::vector<Polynomial>& cf, std::size_t count);

struct ArtinStep {
  Polynomial quotient;        // [1/f]
  LaurentSeries remainder;    // {1/f}, in X^-1 O
};

// One application of f -> {1/f} on f in X^-1 O - {0}. Needs the horizon of f
// to reach 2*v(f) + 1; throws PrecisionExhausted otherwise.
ArtinStep artin_step(const LaurentSeries& f);

struct Expansion {
  enum class Status { Complete, Terminated };
  std::vector<Polynomial> quotients;  // a0..a_k
  Status status = Status::Complete;
  int precision_used = 0;             // 0 for exact rational expansions
};

// The expansion stopped at the precision cap; carries the certified prefix.
class ExpansionCapReached : public PrecisionCapReached {
 public:
  ExpansionCapReached(const std::string& what, std::vector<Polynomial> prefix)
      : PrecisionCapReached(what), prefix_(std::move(prefix)) {}
  const std::vector<Polynomial>& prefix() const { return prefix_; }

 private:
  std::vector<Polynomial> prefix_;
};

// a0..a_{n_max}, or fewer with Status::Terminated when f lies in K. Series
// sources are regenerated at doubled precision until the requested prefix
// is certified, up to kPrecisionCap (or the source's own limit).
Expansion cf_expand(const SeriesSource& src, std::size_t n_max);
// Exact Euclidean expansion of an element of K.
Expansion cf_expand(const RationalFunction& r, std::size_t n_max);

// The series of spec's value to horizon prec. Periodic specs use a
// convergent P_n/Q_n with deg Q_n + deg Q_{n+1} >= prec.
LaurentSeries cf_reconstruct(const CFSpec& spec, int prec);
SeriesSource cf_source(const CFSpec& spec);

// The root in X^-1 O of f^2 + b f + c = 0 (odd characteristic only). When
// the discriminant is a square in K the root is rational and the source is
// exact.
SeriesSource quadratic_from_equation(const RationalFunction& b, const RationalFunction& c,
                                     int prec = kDefaultPrecision);

// Square root of a series with even valuation and square leading
// coefficient, odd characteristic.
std::optional<LaurentSeries> series_sqrt(const LaurentSeries& s);

}  // namespace artin
