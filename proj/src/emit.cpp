#include "artin/emit.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace artin {

Json to_json(const Rational& r) { return Json{{"num", r.numerator()}, {"den", r.denominator()}}; }

Json to_json(const Extended& e) { return e.is_infinite() ? Json("inf") : to_json(e.value()); }

Json to_json(const std::optional<Extended>& e) { return e ? to_json(*e) : Json(nullptr); }

Extended extended_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inf") throw std::invalid_argument("expected \"inf\" or {num, den}");
    return Extended::infinity();
  }
  const auto den = j.at("den").get<std::int64_t>();
  if (den <= 0) throw std::invalid_argument("rational with nonpositive denominator");
  return Rational(j.at("num").get<std::int64_t>(), den);
}

Json rate_to_json(const RateEstimate& r) {
  Json hist = Json::array();
  for (const auto& rec : r.history()) hist.push_back(Json{{"index", rec.index}, {"value", to_json(rec.value)}});
  return Json{{"direction", r.direction() == RateEstimate::Direction::Sup ? "sup" : "inf"},
              {"horizon", r.horizon()},
              {"tail_from", r.tail_from()},
              {"running", to_json(r.running())},
              {"tail", to_json(r.tail())},
              {"history", std::move(hist)}};
}

RateEstimate rate_from_json(const Json& j) {
  const auto dir = j.at("direction").get<std::string>();
  if (dir != "sup" && dir != "inf") throw std::invalid_argument("bad rate direction '" + dir + "'");
  RateEstimate r(dir == "sup" ? RateEstimate::Direction::Sup : RateEstimate::Direction::Inf,
                 j.at("tail_from").get<int>());
  for (const auto& rec : j.at("history")) r.add(rec.at("index").get<int>(), extended_from_json(rec.at("value")));
  r.set_horizon(j.at("horizon").get<int>());
  return r;
}

Json sweep_record_to_json(const SweepRecord& r) {
  Json j{{"deg_g", r.deg_g},
         {"tail_seed", r.tail_seed},
         {"delta", r.delta},
         {"delta_full", r.delta_full},
         {"delta_eta0", r.delta_eta0},
         {"branch_time", r.branch},
         {"ratio", to_json(r.ratio)}};
  j["extremal_n"] = r.extremal_n ? Json(*r.extremal_n) : Json(nullptr);
  return j;
}

Json constants_to_json(const SweepResult& s) {
  return Json{{"c_prime", s.c_prime_observed},
              {"extremal_min_excess", s.extremal_min_excess ? Json(*s.extremal_min_excess) : Json(nullptr)},
              {"branch_mismatches", s.branch_mismatches},
              {"precision_used", s.precision_used}};
}

namespace {

Json header(const RunInfo& info) {
  return Json{{"q", info.q}, {"f_spec", info.f_spec}, {"Qstar", info.Qstar}, {"psi", info.psi},
              {"horizon", info.horizon}};
}

Json records_json(const SweepResult& sweep) {
  Json recs = Json::array();
  for (const auto& r : sweep.records) recs.push_back(sweep_record_to_json(r));
  return recs;
}

}  // namespace

Json orbit_json(const RunInfo& info, const SweepResult& sweep) {
  Json j = header(info);
  j["records"] = records_json(sweep);
  j["running_sup"] = to_json(sweep.ratio.running());
  j["tail_sup"] = to_json(sweep.ratio.tail());
  j["cf_side"] = nullptr;
  j["nu_estimate"] = nullptr;
  j["constants_observed"] = constants_to_json(sweep);
  j["seed"] = info.seed;
  return j;
}

Json check_json(const RunInfo& info, const ThreeWayReport& rep) {
  Json j = header(info);
  j["records"] = records_json(rep.sweep);
  j["running_sup"] = to_json(rep.sweep.ratio.running());
  j["tail_sup"] = to_json(rep.sweep.ratio.tail());
  j["cf_side"] = rate_to_json(rep.cf_side);
  j["exponent"] = rate_to_json(rep.exponent);
  j["nu_estimate"] = to_json(rep.nu);
  j["cf_side_plus_one"] = rep.cf_side_value ? to_json(*rep.cf_side_value) : Json(nullptr);
  j["two_minus_two_over_nu"] = rep.exponent_value ? to_json(*rep.exponent_value) : Json(nullptr);
  j["per_index_identity"] = rep.per_index_identity;
  j["constants_observed"] = constants_to_json(rep.sweep);
  j["seed"] = info.seed;
  return j;
}

void write_orbit_csv(std::ostream& os, const SweepResult& sweep) {
  os << "deg_g,tail_seed,delta,ratio_num,ratio_den\n";
  for (const auto& r : sweep.records)
    os << r.deg_g << ',' << r.tail_seed << ',' << r.delta << ',' << r.ratio.numerator() << ','
       << r.ratio.denominator() << '\n';
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace artin
