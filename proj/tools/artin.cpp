// artin: command-line front end for the continued-fraction, tree and
// experiment modules. Exit codes: 0 ok, 1 other error, 2 parse error,
// 3 precision cap, 4 budget refusal.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "artin/bttree.hpp"
#include "artin/cf.hpp"
#include "artin/emit.hpp"
#include "artin/errors.hpp"
#include "artin/experiments.hpp"
#include "artin/parse.hpp"
#include "artin/reduction.hpp"

using namespace artin;

namespace {

constexpr int kExitOther = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitBudget = 4;

// Bad user input found after CLI11 is done (mutually exclusive flags etc.).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::uint32_t q = 3;
  std::string modulus;
  std::string rational;
  std::string cf;
  int prec = kDefaultPrecision;
  std::string Qstar = "1";
  int deg_min = 1;
  int deg_max = 8;
  int samples = 4;
  int tail_depth = 4;
  bool extremal = false;
  std::string psi = "id";
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;
  int terms = 20;
  std::string matrix;
  int degcap = -1;
  std::string g;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--q", o.q, "Field size q (a prime power)");
  sub->add_option("--modulus", o.modulus, "Irreducible modulus for q = p^e, coefficients low to high, e.g. 1,0,1");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "Output path (default stdout)");
  sub->add_option("--seed", o.seed, "PRNG seed, recorded in the output");
  sub->add_option("--prec", o.prec, "Starting series precision (cap 16384)");
}

void add_f(CLI::App* sub, Options& o) {
  auto* r = sub->add_option("--rational", o.rational, "f as a rational function \"P/Q\"");
  auto* c = sub->add_option("--cf", o.cf, "f as a CF spec \"a0; a1, a2 | p1, p2\"");
  r->excludes(c);
}

void add_sweep(CLI::App* sub, Options& o) {
  sub->add_option("--Qstar", o.Qstar, "Congruence modulus Q*");
  sub->add_option("--deg-min", o.deg_min, "Smallest deg g");
  sub->add_option("--deg-max", o.deg_max, "Largest deg g");
  sub->add_option("--samples", o.samples, "Random g per degree");
  sub->add_option("--tail-depth", o.tail_depth, "Random X^-i digits of g below the constant term");
  sub->add_flag("--extremal", o.extremal, "Add the extremal g built from the convergents");
  sub->add_option("--psi", o.psi, "Rate function: id or pow:a:alpha");
}

FieldRef make_field(const Options& o) {
  std::vector<std::uint32_t> mod;
  if (!o.modulus.empty()) {
    std::stringstream ss(o.modulus);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t pos = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &pos);
      } catch (const std::exception&) {
        throw UsageError("--modulus: bad coefficient '" + tok + "'");
      }
      if (pos != tok.size()) throw UsageError("--modulus: bad coefficient '" + tok + "'");
      mod.push_back(static_cast<std::uint32_t>(v));
    }
  }
  try {
    return Field::make(o.q, mod);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void check_prec(const Options& o) {
  if (o.prec < 1) throw UsageError("--prec must be positive");
  if (o.prec > kPrecisionCap)
    throw PrecisionCapReached("--prec " + std::to_string(o.prec) + " exceeds the cap " + std::to_string(kPrecisionCap));
}

struct Target {
  SeriesSource src;
  std::string spec;
  std::optional<CFSpec> cf;
  std::optional<RationalFunction> rational;
};

Target read_f(const Options& o, const FieldRef& F) {
  if (!o.cf.empty()) {
    auto spec = parse_cf_spec(o.cf, F);
    return {cf_source(spec), o.cf, spec, std::nullopt};
  }
  if (!o.rational.empty()) {
    auto r = parse_rational(o.rational, F);
    return {SeriesSource::rational(r), o.rational, std::nullopt, r};
  }
  throw UsageError("one of --cf or --rational is required");
}

// a0..a_{count-1}, fewer for a rational f.
std::vector<Polynomial> quotients_of(const Target& t, std::size_t count) {
  if (t.cf) return t.cf->quotients(count);
  if (t.rational) return cf_expand(*t.rational, count - 1).quotients;
  return cf_expand(t.src, count - 1).quotients;
}

std::string frac(const Rational& r) {
  return std::to_string(r.numerator()) + "," + std::to_string(r.denominator());
}

std::string csv_header(const Options& o, const std::string& cmd) {
  return "# artin " + cmd + " q=" + std::to_string(o.q) + " seed=" + std::to_string(o.seed) + "\n";
}

Json info_json(const Options& o, const std::string& spec, int horizon) {
  Json j{{"q", std::to_string(o.q)}, {"f_spec", spec}, {"Qstar", o.Qstar}, {"psi", o.psi}, {"horizon", horizon}};
  if (!o.modulus.empty()) j["modulus"] = o.modulus;
  return j;
}

RunInfo run_info(const Options& o, const std::string& spec, int horizon) {
  return RunInfo{std::to_string(o.q), spec, o.Qstar, o.psi, horizon, o.seed};
}

void emit_json(const Options& o, Json j) {
  j["seed"] = o.seed;
  write_text(j.dump(2) + "\n", o.out);
}

SweepConfig sweep_config(const Options& o, const FieldRef& F) {
  SweepConfig c{parse_poly(o.Qstar, F)};
  c.deg_min = o.deg_min;
  c.deg_max = o.deg_max;
  c.samples_per_degree = o.samples;
  c.tail_depth = o.tail_depth;
  c.include_extremal = o.extremal;
  c.seed = o.seed;
  c.psi = PsiSpec::parse(o.psi);
  return c;
}

// Enough quotients for the extremal parameters up to deg g = deg_max, with
// a margin for the cf-side rates.
std::size_t sweep_quotients(const Options& o) { return static_cast<std::size_t>(std::max(o.deg_max, o.terms)) + 3; }

// ---- subcommands ----

void run_cf(const Options& o) {
  const auto F = make_field(o);
  const auto t = read_f(o, F);
  if (o.terms < 1) throw UsageError("--terms must be positive");
  Expansion ex;
  if (t.rational) ex = cf_expand(*t.rational, static_cast<std::size_t>(o.terms) - 1);
  else ex = cf_expand(t.src, static_cast<std::size_t>(o.terms) - 1);
  if (o.format == "csv") {
    std::string s = csv_header(o, "cf") + "n,a_n,deg\n";
    for (std::size_t i = 0; i < ex.quotients.size(); ++i)
      s += std::to_string(i) + "," + ex.quotients[i].to_string() + "," +
           std::to_string(quotient_degree(ex.quotients[i])) + "\n";
    write_text(s, o.out);
    return;
  }
  Json j = info_json(o, t.spec, o.terms);
  Json qs = Json::array();
  for (const auto& a : ex.quotients) qs.push_back(a.to_string());
  j["quotients"] = qs;
  j["status"] = ex.status == Expansion::Status::Complete ? "complete" : "terminated";
  j["precision_used"] = ex.precision_used;
  emit_json(o, j);
}

void run_convergents(const Options& o) {
  check_prec(o);
  const auto F = make_field(o);
  const auto t = read_f(o, F);
  if (o.terms < 1) throw UsageError("--terms must be positive");
  const auto cf = quotients_of(t, static_cast<std::size_t>(o.terms) + 1);
  const auto conv = convergents(cf, cf.size());
  const auto fs = t.src.at(o.prec);
  struct Row {
    std::size_t n;
    std::string P, Q, det;
    int degQ;
    std::optional<int> error_valuation;
  };
  std::vector<Row> rows;
  for (const auto& c : conv) {
    if (c.n + 1 > static_cast<std::size_t>(o.terms)) break;
    const auto diff = fs - series_from_rational(RationalFunction(c.P, c.Q), o.prec);
    std::optional<int> ev;
    if (auto l = diff.lead(); l && (!diff.horizon() || *l < *diff.horizon())) ev = *l;
    rows.push_back({c.n, c.P.to_string(), c.Q.to_string(), (c.P * c.prevQ - c.prevP * c.Q).to_string(),
                    c.Q.degree().value(), ev});
  }
  if (o.format == "csv") {
    std::string s = csv_header(o, "convergents") + "n,P,Q,deg_Q,error_valuation,det\n";
    for (const auto& r : rows)
      s += std::to_string(r.n) + ",\"" + r.P + "\",\"" + r.Q + "\"," + std::to_string(r.degQ) + "," +
           (r.error_valuation ? std::to_string(*r.error_valuation) : "") + ",\"" + r.det + "\"\n";
    write_text(s, o.out);
    return;
  }
  Json j = info_json(o, t.spec, o.terms);
  j["prec"] = o.prec;
  Json arr = Json::array();
  for (const auto& r : rows)
    arr.push_back(Json{{"n", r.n},
                       {"P", r.P},
                       {"Q", r.Q},
                       {"deg_Q", r.degQ},
                       {"error_valuation", r.error_valuation ? Json(*r.error_valuation) : Json(nullptr)},
                       {"det", r.det}});
  j["convergents"] = arr;
  emit_json(o, j);
}

void run_exponent(const Options& o) {
  const auto F = make_field(o);
  const auto t = read_f(o, F);
  if (o.terms < 1) throw UsageError("--terms must be positive");
  const auto Qstar = parse_poly(o.Qstar, F);
  const auto cf = quotients_of(t, static_cast<std::size_t>(o.terms) + 2);
  const int N = std::min(o.terms, static_cast<int>(cf.size()) - 2);
  if (N < 1) throw UsageError("f has too few partial quotients for an exponent estimate");
  const auto ex = exponent_estimate(cf, Qstar, N);
  const auto side = cf_side_rate(cf, Qstar, N);
  const auto nu = nu_estimate(ex);
  if (o.format == "csv") {
    std::string s = csv_header(o, "exponent") + "n,exponent_num,exponent_den,cf_side_num,cf_side_den\n";
    const auto& a = ex.history();
    const auto& b = side.history();
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
      s += std::to_string(a[i].index) + "," + frac(a[i].value.value()) + "," + frac(b[i].value.value()) + "\n";
    write_text(s, o.out);
    return;
  }
  Json j = info_json(o, t.spec, N);
  j["congruent_indices"] = congruent_indices(cf, Qstar, N);
  j["exponent"] = rate_to_json(ex);
  j["cf_side"] = rate_to_json(side);
  j["nu_estimate"] = to_json(nu);
  emit_json(o, j);
}

Mat2 parse_matrix(const std::string& text, const FieldRef& F, int prec) {
  // "a, b; c, d"
  const auto semi = text.find(';');
  if (semi == std::string::npos) throw ParseError("--matrix: expected 'a, b; c, d'", text.size());
  std::vector<LaurentSeries> e;
  std::size_t base = 0;
  for (const auto& row : {text.substr(0, semi), text.substr(semi + 1)}) {
    const auto comma = row.find(',');
    if (comma == std::string::npos) throw ParseError("--matrix: expected two entries per row", base + row.size());
    for (const auto& cell : {row.substr(0, comma), row.substr(comma + 1)}) {
      try {
        e.push_back(series_from_rational(parse_rational(cell, F), prec));
      } catch (const ParseError& err) {
        throw ParseError(std::string("--matrix entry: ") + err.what(), base);
      }
    }
    base = semi + 1;
  }
  return {e[0], e[1], e[2], e[3]};
}

void run_delta(const Options& o) {
  check_prec(o);
  const auto F = make_field(o);
  const auto Qstar = parse_poly(o.Qstar, F);
  if (Qstar.is_zero()) throw UsageError("--Qstar must be nonzero");
  const bool have_matrix = !o.matrix.empty();
  if (have_matrix == !o.g.empty()) throw UsageError("delta needs exactly one of --matrix or --g");
  std::string spec;
  std::optional<Target> t;
  if (!have_matrix) {
    t = read_f(o, F);
    spec = t->spec;
  }
  // Regenerate at doubled precision while the reduction needs more digits.
  for (int prec = o.prec;; prec = std::min(2 * prec, kPrecisionCap)) {
    try {
      Mat2 M = have_matrix ? parse_matrix(o.matrix, F, prec)
                           : unipotent_lattice(t->src, series_from_rational(parse_rational(o.g, F), prec), prec);
      const auto red = gauss_reduce(M);
      const auto rep = delta_congruence_report(M, Qstar);
      std::optional<BruteForceResult> bf;
      if (o.degcap >= 0) bf = brute_force(M, o.degcap, Qstar.is_constant() ? std::nullopt : std::optional(Qstar));
      if (o.format == "csv") {
        std::string s = csv_header(o, "delta") + "delta,delta_q,reachable,steps,brute_force_delta\n";
        s += std::to_string(rep.delta) + "," + std::to_string(rep.delta_q) + "," + (rep.reachable ? "1" : "0") +
             "," + std::to_string(red.steps) + "," + (bf ? std::to_string(bf->delta) : "") + "\n";
        write_text(s, o.out);
        return;
      }
      Json j = info_json(o, spec, prec);
      j["matrix"] = have_matrix ? o.matrix : "u_g with g = " + o.g;
      j["delta"] = rep.delta;
      j["delta_q"] = rep.delta_q;
      j["reachable"] = rep.reachable;
      j["gamma0"] = red.gamma0.to_string();
      j["steps"] = red.steps;
      j["certified"] = red.certified;
      if (bf) {
        Json b{{"degcap", o.degcap}, {"delta", bf->delta}, {"rows_enumerated", bf->rows_enumerated},
               {"witness", bf->witness.to_string()}};
        b["delta_q"] = bf->delta_q ? Json(*bf->delta_q) : Json(nullptr);
        j["brute_force"] = b;
      }
      emit_json(o, j);
      return;
    } catch (const PrecisionExhausted& e) {
      if (prec >= kPrecisionCap) throw PrecisionCapReached(std::string("precision cap reached: ") + e.what());
    }
  }
}

void run_orbit(const Options& o) {
  const auto F = make_field(o);
  const auto t = read_f(o, F);
  const auto cfg = sweep_config(o, F);
  const auto cf = quotients_of(t, sweep_quotients(o));
  const auto sweep = orbit_sweep(t.src, cf, cfg);
  if (o.format == "csv") {
    std::ostringstream s;
    s << csv_header(o, "orbit");
    write_orbit_csv(s, sweep);
    write_text(s.str(), o.out);
    return;
  }
  write_text(orbit_json(run_info(o, t.spec, o.deg_max), sweep).dump(2) + "\n", o.out);
}

void run_excursion(const Options& o) {
  const auto F = make_field(o);
  const auto t = read_f(o, F);
  if (o.terms < 0) throw UsageError("--terms must be nonnegative");
  const auto Qstar = parse_poly(o.Qstar, F);
  const auto psi = PsiSpec::parse(o.psi);
  const bool congruence = !Qstar.is_constant();
  const auto prof = excursion_profile(t.src, o.terms, congruence ? std::optional(Qstar) : std::nullopt);
  const auto cf = quotients_of(t, static_cast<std::size_t>(o.terms) + 3);
  if (o.format == "csv") {
    std::string s = csv_header(o, "excursion") + "t,depth,depth_q,ratio_num,ratio_den\n";
    for (const auto& p : prof) {
      s += std::to_string(p.t) + "," + std::to_string(p.depth) + "," + std::to_string(p.depth_q) + ",";
      s += p.t >= 1 ? frac(psi.ratio(p.depth_q, p.t)) : ",";
      s += "\n";
    }
    write_text(s, o.out);
    return;
  }
  RateEstimate rate(RateEstimate::Direction::Sup, (o.terms + 1) / 2);
  Json pts = Json::array();
  for (const auto& p : prof) {
    Json pj{{"t", p.t}, {"depth", p.depth}, {"depth_q", p.depth_q}};
    if (p.t >= 1) {
      const auto r = psi.ratio(p.depth_q, p.t);
      rate.add(p.t, r);
      pj["ratio"] = to_json(r);
    } else {
      pj["ratio"] = nullptr;
    }
    pts.push_back(pj);
  }
  rate.set_horizon(o.terms);
  Json j = info_json(o, t.spec, o.terms);
  j["points"] = pts;
  Json peaks = Json::array();
  for (const auto& pk : predicted_peaks(cf, o.terms))
    peaks.push_back(Json{{"n", pk.n}, {"position", pk.position}, {"height", pk.height}});
  j["predicted_peaks"] = peaks;
  if (cf.size() >= 3) {
    try {
      const auto mm = excursion_mismatch(prof, cf);
      j["tent_mismatch"] = mm ? Json(*mm) : Json(nullptr);
    } catch (const std::invalid_argument&) {
      j["tent_mismatch"] = "unavailable";
    }
  }
  j["ratio"] = rate_to_json(rate);
  emit_json(o, j);
}

void run_check(const Options& o) {
  const auto F = make_field(o);
  const auto t = read_f(o, F);
  const auto cfg = sweep_config(o, F);
  const auto cf = quotients_of(t, sweep_quotients(o));
  const int N = std::min(o.terms, static_cast<int>(cf.size()) - 2);
  if (N < 1) throw UsageError("f has too few partial quotients for the check");
  const auto rep = three_way_check(t.src, cf, cfg, N);
  if (o.format == "csv") {
    std::string s = csv_header(o, "check") + "n,cf_side_num,cf_side_den,exponent_num,exponent_den\n";
    const auto& a = rep.cf_side.history();
    const auto& b = rep.exponent.history();
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
      s += std::to_string(a[i].index) + "," + frac(a[i].value.value()) + "," + frac(b[i].value.value()) + "\n";
    write_text(s, o.out);
    return;
  }
  Json j = check_json(run_info(o, t.spec, N), rep);
  const auto cor = psi_rate_check(t.src, cf, cfg, std::max(o.terms, 2 * o.deg_max));
  j["psi_rate"] = Json{{"psi", cor.psi.describe()},
                        {"a_psi", to_json(cor.a_psi)},
                        {"lhs", to_json(cor.lhs)},
                        {"rhs", to_json(cor.rhs)},
                        {"gap", to_json(cor.gap)},
                        {"excursion", rate_to_json(cor.excursion)}};
  write_text(j.dump(2) + "\n", o.out);
}

void run_theta(const Options& o) {
  const auto F = make_field(o);
  const auto t = read_f(o, F);
  const auto cf = quotients_of(t, static_cast<std::size_t>(o.deg_max) + 3);
  const auto prof = theta_profile(t.src, cf, o.deg_max, o.samples, o.seed);
  if (o.format == "csv") {
    std::string s = csv_header(o, "theta") + "log_s,value_num,value_den\n";
    for (const auto& p : prof) s += std::to_string(p.log_s) + "," + frac(p.value.value()) + "\n";
    write_text(s, o.out);
    return;
  }
  Json j = info_json(o, t.spec, o.deg_max);
  Json pts = Json::array();
  for (const auto& p : prof) pts.push_back(Json{{"log_s", p.log_s}, {"value", to_json(p.value)}});
  j["theta"] = pts;
  emit_json(o, j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Artin continued fractions, Bruhat-Tits tree geometry and cusp-depth experiments over F_q(X)"};
  app.require_subcommand(1);
  Options o;

  auto* cf = app.add_subcommand("cf", "Partial quotients a0..a_{terms-1} of f");
  add_common(cf, o);
  add_f(cf, o);
  cf->add_option("--terms", o.terms, "Number of partial quotients");

  auto* conv = app.add_subcommand("convergents", "Convergents P_n/Q_n with v(f - P_n/Q_n) and the determinant");
  add_common(conv, o);
  add_f(conv, o);
  conv->add_option("--terms", o.terms, "Number of convergents");

  auto* expo = app.add_subcommand("exponent", "Approximation exponent estimate and cf-side rate");
  add_common(expo, o);
  add_f(expo, o);
  expo->add_option("--Qstar", o.Qstar, "Congruence modulus Q*");
  expo->add_option("--terms", o.terms, "Horizon N");

  auto* delta = app.add_subcommand("delta", "Cusp-depth invariant of a lattice");
  add_common(delta, o);
  add_f(delta, o);
  delta->add_option("--matrix", o.matrix, "Basis matrix \"a, b; c, d\" with rational-function entries");
  delta->add_option("--g", o.g, "Use u_g O^2 for this rational g (needs --cf or --rational for f)");
  delta->add_option("--Qstar", o.Qstar, "Congruence modulus Q*");
  delta->add_option("--degcap", o.degcap, "Also run the brute-force oracle with this degree cap");

  auto* orbit = app.add_subcommand("orbit", "Sweep Delta(u_g O^2) / psi(deg g) over sampled g");
  add_common(orbit, o);
  add_f(orbit, o);
  add_sweep(orbit, o);

  auto* exc = app.add_subcommand("excursion", "Delta along the geodesic ray toward f");
  add_common(exc, o);
  add_f(exc, o);
  exc->add_option("--Qstar", o.Qstar, "Congruence modulus Q*");
  exc->add_option("--psi", o.psi, "Rate function: id or pow:a:alpha");
  exc->add_option("--terms", o.terms, "Number of steps T");

  auto* check = app.add_subcommand("check", "Three-way report: orbit sweep, cf-side rate, exponent");
  add_common(check, o);
  add_f(check, o);
  add_sweep(check, o);
  check->add_option("--terms", o.terms, "Horizon N for the cf-side and exponent rates");

  auto* theta = app.add_subcommand("theta", "Sampled Theta(q^L) for L = 0..deg-max");
  add_common(theta, o);
  add_f(theta, o);
  theta->add_option("--deg-max", o.deg_max, "Largest L");
  theta->add_option("--samples", o.samples, "Random g per degree");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*cf) run_cf(o);
    else if (*conv) run_convergents(o);
    else if (*expo) run_exponent(o);
    else if (*delta) run_delta(o);
    else if (*orbit) run_orbit(o);
    else if (*exc) run_excursion(o);
    else if (*check) run_check(o);
    else if (*theta) run_theta(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitParse;
  } catch (const PrecisionCapReached& e) {
    std::cerr << e.what() << "\n";
    return kExitPrecision;
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return 0;
}
