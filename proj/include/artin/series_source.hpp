#pragma once

#include <functional>
#include <optional>
#include <string>

#include "artin/laurent.hpp"
#include "artin/polynomial.hpp"

namespace artin {

// Where a series came from, so that consumers needing more digits can
// regenerate it at a higher precision.
class SeriesSource {
 public:
  enum class Kind { Rational, CfSpec, CoeffStream, Quadratic };
  using Generator = std::function<LaurentSeries(int prec)>;

  static SeriesSource rational(RationalFunction r);
  // Coefficient of X^{-i} for i >= first; `length` coefficients are available.
  static SeriesSource stream(FieldRef field, int first, std::function<Fq(int)> coeff, int length);
  // Generic regenerable source (used by the continued-fraction and
  // quadratic-equation constructions).
  static SeriesSource generated(Kind kind, FieldRef field, Generator gen, std::string description,
                                std::optional<int> max_prec = std::nullopt);

  Kind kind() const { return kind_; }
  const FieldRef& field() const { return field_; }
  const std::string& description() const { return description_; }
  // The exact value when it is known to lie in K.
  const std::optional<RationalFunction>& exact_value() const { return exact_; }
  // Largest precision the source can deliver (streams only).
  std::optional<int> max_precision() const { return max_prec_; }

  // The series to horizon at least min(prec, max_precision).
  LaurentSeries at(int prec) const;

 private:
  SeriesSource(Kind kind, FieldRef field, Generator gen, std::string description)
      : kind_(kind), field_(std::move(field)), gen_(std::move(gen)), description_(std::move(description)) {}

  Kind kind_;
  FieldRef field_;
  Generator gen_;
  std::string description_;
  std::optional<RationalFunction> exact_;
  std::optional<int> max_prec_;
};

}  // namespace artin
