#include "forge/io.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace forge {

namespace {

void require_keys(const Json& j, const std::string& what,
                  std::initializer_list<const char*> allowed) {
  if (!j.is_object())
    throw ParameterError(what + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
          return key == a;
        }) == allowed.end())
      throw ParameterError(what + ": unknown key '" + key + "'");
  }
}

double get_number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number())
    throw ParameterError(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw ParameterError("unknown verdict '" + s + "'");
}

}  // namespace

Json json_of(const ExponentSpec& spec) {
  Json j;
  j["dim"] = spec.dim;
  switch (spec.family) {
    case ExponentFamily::isotropic_stable:
      j["family"] = "isotropic_stable";
      j["alpha"] = spec.alpha;
      break;
    case ExponentFamily::relativistic_stable:
      j["family"] = "relativistic_stable";
      j["alpha"] = spec.alpha;
      j["mass"] = spec.mass;
      break;
    case ExponentFamily::truncated_stable:
      j["family"] = "truncated_stable";
      j["alpha"] = spec.alpha;
      j["mass"] = spec.mass;
      break;
    case ExponentFamily::homographic:
      j["family"] = "homographic";
      j["lambda"] = spec.lambda;
      break;
    case ExponentFamily::generic: {
      if (!spec.triplet)
        throw ParameterError("generic exponent without a triplet");
      const auto& t = *spec.triplet;
      if (t.has_jumps())
        throw CapabilityError(
            "generic triplets with jump callables are not serializable");
      j["family"] = "generic";
      j["drift"] = std::vector<double>(t.drift.data(),
                                       t.drift.data() + t.drift.size());
      std::vector<std::vector<double>> q;
      for (Eigen::Index r = 0; r < t.diffusion.rows(); ++r)
        q.emplace_back(t.diffusion.row(r).begin(), t.diffusion.row(r).end());
      j["diffusion"] = q;
      break;
    }
  }
  return j;
}

ExponentSpec exponent_from_json(const Json& j) {
  require_keys(j, "exponent",
               {"family", "dim", "alpha", "mass", "lambda", "drift",
                "diffusion"});
  if (!j.contains("family")) throw ParameterError("exponent: missing 'family'");
  std::string family = j.at("family").get<std::string>();
  int dim = static_cast<int>(get_number(j, "dim", 1.0));
  if (family == "isotropic_stable")
    return ExponentSpec::isotropic_stable(get_number(j, "alpha", 2.0), dim);
  if (family == "relativistic_stable")
    return ExponentSpec::relativistic_stable(get_number(j, "alpha", 2.0),
                                             get_number(j, "mass", 1.0), dim);
  if (family == "truncated_stable")
    return ExponentSpec::truncated_stable(get_number(j, "alpha", 1.0),
                                          get_number(j, "mass", 1.0));
  if (family == "homographic")
    return ExponentSpec::homographic(get_number(j, "lambda", 1.0), dim);
  if (family == "generic") {
    auto drift = j.at("drift").get<std::vector<double>>();
    auto q = j.at("diffusion").get<std::vector<std::vector<double>>>();
    LevyTriplet t;
    t.drift = Eigen::Map<const Vec>(drift.data(),
                                    static_cast<Eigen::Index>(drift.size()));
    t.diffusion.resize(static_cast<Eigen::Index>(q.size()),
                       static_cast<Eigen::Index>(q.empty() ? 0 : q[0].size()));
    for (std::size_t r = 0; r < q.size(); ++r) {
      if (q[r].size() != q.size())
        throw ParameterError("diffusion matrix must be square");
      for (std::size_t c = 0; c < q[r].size(); ++c)
        t.diffusion(static_cast<Eigen::Index>(r),
                    static_cast<Eigen::Index>(c)) = q[r][c];
    }
    return ExponentSpec::generic(std::move(t));
  }
  throw ParameterError("unknown exponent family '" + family + "'");
}

Json json_of(const StateCoefficient& c) {
  Json j;
  switch (c.form()) {
    case StateCoefficient::Form::constant:
      j["form"] = "constant";
      j["value"] = c.param();
      break;
    case StateCoefficient::Form::power:
      j["form"] = "power";
      j["gamma"] = c.param();
      break;
    case StateCoefficient::Form::bounded_trig:
      j["form"] = "bounded_trig";
      j["amplitude"] = c.param();
      break;
    case StateCoefficient::Form::exponential:
      j["form"] = "exponential";
      break;
    case StateCoefficient::Form::expression:
      j["form"] = "expression";
      j["text"] = c.expression_text();
      j["growth"] = c.growth_exponent();
      break;
    case StateCoefficient::Form::tabulated:
      j["form"] = "tabulated";
      j["xs"] = c.table_xs();
      j["values"] = c.table_values();
      j["growth"] = c.growth_exponent();
      break;
    case StateCoefficient::Form::custom:
      throw CapabilityError("custom coefficients are not serializable");
  }
  return j;
}

StateCoefficient coefficient_from_json(const Json& j) {
  if (j.is_string())  // shorthand: a bare expression string
    return StateCoefficient::from_expression(j.get<std::string>(), 0.0);
  if (j.is_number()) return StateCoefficient::constant(j.get<double>());
  require_keys(j, "coefficient",
               {"form", "value", "gamma", "amplitude", "text", "growth", "xs",
                "values"});
  if (!j.contains("form")) throw ParameterError("coefficient: missing 'form'");
  std::string form = j.at("form").get<std::string>();
  if (form == "constant")
    return StateCoefficient::constant(get_number(j, "value", 1.0));
  if (form == "power")
    return StateCoefficient::power(get_number(j, "gamma", 1.0));
  if (form == "bounded_trig")
    return StateCoefficient::bounded_trig(get_number(j, "amplitude", 0.5));
  if (form == "exponential") return StateCoefficient::exponential();
  if (form == "expression")
    return StateCoefficient::from_expression(j.at("text").get<std::string>(),
                                             get_number(j, "growth", 0.0));
  if (form == "tabulated")
    return StateCoefficient::tabulated(j.at("xs").get<std::vector<double>>(),
                                       j.at("values").get<std::vector<double>>(),
                                       get_number(j, "growth", 0.0));
  throw ParameterError("unknown coefficient form '" + form + "'");
}

Json json_of(const StateSymbol& sym) {
  Json terms = Json::array();
  for (const auto& term : sym.terms()) {
    if (!std::holds_alternative<ExponentSpec>(term.base))
      throw CapabilityError(
          "symbols over callable characteristics are not serializable");
    Json t;
    t["phi"] = json_of(term.phi);
    t["base"] = json_of(std::get<ExponentSpec>(term.base));
    terms.push_back(std::move(t));
  }
  Json j;
  j["terms"] = std::move(terms);
  return j;
}

StateSymbol symbol_from_json(const Json& j) {
  require_keys(j, "symbol", {"terms"});
  if (!j.contains("terms") || !j.at("terms").is_array() ||
      j.at("terms").empty())
    throw ParameterError("symbol: needs a nonempty 'terms' array");
  std::optional<StateSymbol> sym;
  for (const auto& t : j.at("terms")) {
    require_keys(t, "symbol term", {"phi", "base"});
    auto phi = coefficient_from_json(t.at("phi"));
    auto base = exponent_from_json(t.at("base"));
    if (!sym)
      sym.emplace(std::move(phi), std::move(base));
    else
      sym->add_term(std::move(phi), std::move(base));
  }
  return *sym;
}

Json json_of(const MCConfig& mc) {
  Json j;
  j["n_paths"] = mc.n_paths;
  j["dt"] = mc.dt;
  j["horizon"] = mc.horizon;
  j["seed"] = mc.seed;
  j["escape_radius"] = mc.escape_radius;
  return j;
}

MCConfig mc_from_json(const Json& j) {
  require_keys(j, "mc",
               {"n_paths", "dt", "horizon", "seed", "escape_radius"});
  MCConfig mc;
  mc.n_paths = static_cast<int>(get_number(j, "n_paths", 1.0));
  mc.dt = get_number(j, "dt", 0.0);
  mc.horizon = get_number(j, "horizon", 1.0);
  if (j.contains("seed")) mc.seed = j.at("seed").get<std::uint64_t>();
  mc.escape_radius = get_number(j, "escape_radius", 1e8);
  return mc;
}

Json json_of(const ConditionReport& r) {
  Json j;
  j["condition_id"] = r.condition_id;
  j["verdict"] = to_string(r.verdict);
  Json trace = Json::array();
  for (const auto& t : r.trace) trace.push_back({t.grid, t.value});
  j["trace"] = std::move(trace);
  j["tolerance"] = r.tolerance;
  j["notes"] = r.notes;
  if (std::isfinite(r.fitted_constant)) j["fitted_constant"] = r.fitted_constant;
  Json subs = Json::array();
  for (const auto& s : r.subreports) subs.push_back(json_of(s));
  j["subreports"] = std::move(subs);
  return j;
}

ConditionReport condition_report_from_json(const Json& j) {
  require_keys(j, "condition report",
               {"condition_id", "verdict", "trace", "tolerance", "notes",
                "fitted_constant", "subreports"});
  ConditionReport r;
  r.condition_id = j.at("condition_id").get<std::string>();
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  for (const auto& t : j.at("trace"))
    r.trace.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
  r.tolerance = get_number(j, "tolerance", 0.0);
  if (j.contains("notes")) r.notes = j.at("notes").get<std::string>();
  r.fitted_constant =
      get_number(j, "fitted_constant", std::numeric_limits<double>::quiet_NaN());
  if (j.contains("subreports"))
    for (const auto& s : j.at("subreports"))
      r.subreports.push_back(condition_report_from_json(s));
  return r;
}

Json json_of(const VerifyReport& r) {
  Json j;
  j["id"] = r.id;
  j["metrics"] = r.metrics;
  j["thresholds"] = r.thresholds;
  j["verdict"] = to_string(r.verdict);
  j["seed"] = r.seed;
  j["config_hash"] = r.config_hash;
  j["notes"] = r.notes;
  return j;
}

VerifyReport verify_report_from_json(const Json& j) {
  require_keys(j, "verify report",
               {"id", "metrics", "thresholds", "verdict", "seed",
                "config_hash", "notes"});
  VerifyReport r;
  r.id = j.at("id").get<std::string>();
  if (j.contains("metrics"))
    r.metrics = j.at("metrics").get<std::map<std::string, double>>();
  if (j.contains("thresholds"))
    r.thresholds = j.at("thresholds").get<std::map<std::string, double>>();
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  if (j.contains("seed")) r.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("config_hash"))
    r.config_hash = j.at("config_hash").get<std::string>();
  if (j.contains("notes")) r.notes = j.at("notes").get<std::string>();
  return r;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {
std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}
}  // namespace

void write_ensemble_csv(std::ostream& os,
                        const std::vector<PathSkeleton>& paths) {
  int d = paths.empty() ? 1 : paths.front().dim();
  os << "path_id,t";
  for (int k = 1; k <= d; ++k) os << ",state_" << k;
  os << ",flag\r\n";
  for (const auto& p : paths) {
    const char* flag = p.exploded ? "exploded"
                       : p.horizon_censored ? "censored"
                                            : "ok";
    for (std::size_t i = 0; i < p.times.size(); ++i) {
      os << p.stream_id << ',' << num(p.times[i]);
      for (Eigen::Index c = 0; c < p.states.cols(); ++c)
        os << ',' << num(p.states(static_cast<Eigen::Index>(i), c));
      os << ',' << flag << "\r\n";
    }
  }
}

void write_clock_csv(std::ostream& os, const ClockResult& clock) {
  os << "u,A_of_u\r\n";
  for (std::size_t i = 0; i < clock.knot_times.size(); ++i)
    os << num(clock.knot_times[i]) << ',' << num(clock.A_values[i]) << "\r\n";
}

void write_cf_csv(std::ostream& os, const CFEstimate& est) {
  os << "xi,re,im,se\r\n";
  for (std::size_t i = 0; i < est.xi_grid.size(); ++i)
    os << num(est.xi_grid[i]) << ',' << num(est.values[i].real()) << ','
       << num(est.values[i].imag()) << ',' << num(est.std_errors[i]) << "\r\n";
}

void write_samples_csv(std::ostream& os, const std::vector<double>& xs) {
  os << "value\r\n";
  for (double x : xs) os << num(x) << "\r\n";
}

}  // namespace forge
