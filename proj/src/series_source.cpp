#include "artin/series_source.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace artin {

SeriesSource SeriesSource::rational(RationalFunction r) {
  const FieldRef field = r.field();
  SeriesSource s(Kind::Rational, field, [r](int prec) { return series_from_rational(r, prec); }, r.to_string());
  s.exact_ = std::move(r);
  return s;
}

SeriesSource SeriesSource::stream(FieldRef field, int first, std::function<Fq(int)> coeff, int length) {
  if (length < 0) throw std::invalid_argument("negative stream length");
  auto gen = [field, first, coeff = std::move(coeff), length](int prec) {
    const int last = std::min(prec, first + length);
    std::vector<Fq> c;
    for (int i = first; i < last; ++i) c.push_back(coeff(i));
    return LaurentSeries::truncated(field, first, std::move(c), std::max(last, first));
  };
  SeriesSource s(Kind::CoeffStream, field, std::move(gen), "stream");
  s.max_prec_ = first + length;
  return s;
}

SeriesSource SeriesSource::generated(Kind kind, FieldRef field, Generator gen, std::string description,
                                     std::optional<int> max_prec) {
  SeriesSource s(kind, std::move(field), std::move(gen), std::move(description));
  s.max_prec_ = max_prec;
  return s;
}

LaurentSeries SeriesSource::at(int prec) const {
  if (max_prec_) prec = std::min(prec, *max_prec_);
  return gen_(prec);
}

}  // namespace artin
