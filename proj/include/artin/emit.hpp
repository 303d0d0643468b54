#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "artin/experiments.hpp"

namespace artin {

using Json = nlohmann::ordered_json;

// {num, den}, "inf", or null for the empty sentinel. No floats.
Json to_json(const Rational& r);
Json to_json(const Extended& e);
Json to_json(const std::optional<Extended>& e);
Extended extended_from_json(const Json& j);

Json rate_to_json(const RateEstimate& r);
RateEstimate rate_from_json(const Json& j);

// Shared run metadata.
struct RunInfo {
  std::string q;
  std::string f_spec;
  std::string Qstar;
  std::string psi;
  int horizon = 0;
  std::uint64_t seed = 0;
};

Json sweep_record_to_json(const SweepRecord& r);
Json constants_to_json(const SweepResult& s);

// Top level {q, f_spec, Qstar, psi, horizon, records, running_sup, cf_side,
// nu_estimate, constants_observed, seed}.
Json orbit_json(const RunInfo& info, const SweepResult& sweep);
Json check_json(const RunInfo& info, const ThreeWayReport& rep);

// deg_g,tail_seed,delta,ratio_num,ratio_den
void write_orbit_csv(std::ostream& os, const SweepResult& sweep);

// Writes text to path, or stdout when path is empty. Throws
// std::runtime_error for an unwritable path.
void write_text(const std::string& text, const std::string& path);

}  // namespace artin
