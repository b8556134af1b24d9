// forge: numerical verification engine for time-changed Levy processes.
//
// Exit codes: 0 pass/success, 1 usage or config error, 2 verdict fail,
// 3 inconclusive, 4 numerical-accuracy error. Errors are also emitted as
// JSON on standard error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "forge/conditions.hpp"
#include "forge/io.hpp"
#include "forge/parallel.hpp"
#include "forge/rng.hpp"
#include "forge/sde.hpp"
#include "forge/stats.hpp"
#include "forge/timechange.hpp"

namespace {

using forge::Json;

int verdict_code(forge::Verdict v) {
  switch (v) {
    case forge::Verdict::pass: return 0;
    case forge::Verdict::fail: return 2;
    default: return 3;
  }
}

struct CommandResult {
  Json output;          // wrapper written to --out (or stdout)
  std::string csv;      // non-empty for CSV-producing commands
  int code = 0;
};

double get_num(const Json& cfg, const char* key, double fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg.at(key).is_number())
    throw forge::ParameterError(std::string("'") + key + "' must be a number");
  return cfg.at(key).get<double>();
}

std::string get_str(const Json& cfg, const char* key, const std::string& fb) {
  if (!cfg.contains(key)) return fb;
  return cfg.at(key).get<std::string>();
}

std::vector<double> get_list(const Json& cfg, const char* key,
                             std::vector<double> fallback) {
  if (!cfg.contains(key)) return fallback;
  return cfg.at(key).get<std::vector<double>>();
}

void reject_unknown(const Json& cfg, const std::string& command,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : cfg.items()) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw forge::ParameterError("command '" + command + "': unknown key '" +
                                  key + "'");
  }
}

forge::ExponentSpec exponent_from_cfg(const Json& cfg) {
  if (cfg.contains("exponent"))
    return forge::exponent_from_json(cfg.at("exponent"));
  std::string family = get_str(cfg, "family", "isotropic_stable");
  if (family == "stable") family = "isotropic_stable";
  if (family == "relativistic") family = "relativistic_stable";
  if (family == "truncated") family = "truncated_stable";
  Json j;
  j["family"] = family;
  for (const char* k : {"alpha", "mass", "lambda"})
    if (cfg.contains(k)) j[k] = cfg.at(k);
  return forge::exponent_from_json(j);
}

forge::StateCoefficient coefficient_from_cfg(const Json& cfg, const char* key,
                                             const char* fallback_expr) {
  if (!cfg.contains(key))
    return forge::coefficient_from_json(Json(fallback_expr));
  return forge::coefficient_from_json(cfg.at(key));
}

forge::MCConfig mc_from_cfg(const Json& cfg, double horizon) {
  forge::MCConfig mc;
  mc.n_paths = static_cast<int>(get_num(cfg, "n", 1000.0));
  mc.dt = get_num(cfg, "dt", 0.0);
  mc.horizon = horizon;
  mc.seed = static_cast<std::uint64_t>(get_num(cfg, "seed", 0.0));
  mc.escape_radius = get_num(cfg, "escape_radius", 1e8);
  return mc;
}

// The frozen-x Levy triplet of a builtin exponent (for the corollary checks).
forge::LevyTriplet triplet_of(const forge::ExponentSpec& spec) {
  using forge::ExponentFamily;
  if (spec.family == ExponentFamily::generic && spec.triplet)
    return *spec.triplet;
  auto chars = forge::StateCharacteristics::from_spec(spec);
  return chars.at(forge::scalar_vec(0.0));
}

CommandResult run_sample(const Json& cfg) {
  reject_unknown(cfg, "sample",
                 {"family", "alpha", "mass", "lambda", "exponent", "t", "n",
                  "seed"});
  auto spec = exponent_from_cfg(cfg);
  double t = get_num(cfg, "t", 1.0);
  int n = static_cast<int>(get_num(cfg, "n", 1000.0));
  if (n < 1) throw forge::ParameterError("n must be >= 1");
  auto seed = static_cast<std::uint64_t>(get_num(cfg, "seed", 0.0));
  forge::RngStream rng(seed, 0);
  forge::Mat inc = forge::sample_increments(spec, t, n, rng);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = inc(i, 0);
  std::ostringstream os;
  forge::write_samples_csv(os, xs);
  CommandResult r;
  r.csv = os.str();
  return r;
}

CommandResult run_simulate_sde(const Json& cfg) {
  reject_unknown(cfg, "simulate-sde",
                 {"sigma", "family", "alpha", "mass", "lambda", "exponent",
                  "x0", "t", "n", "dt", "seed", "escape_radius", "final_only"});
  auto sigma = coefficient_from_cfg(cfg, "sigma", "1");
  auto driver = exponent_from_cfg(cfg);
  double x0 = get_num(cfg, "x0", 0.0);
  auto mc = mc_from_cfg(cfg, get_num(cfg, "t", 1.0));
  auto paths = forge::euler_maruyama(sigma, driver, forge::scalar_vec(x0), mc);
  std::ostringstream os;
  if (cfg.contains("final_only") && cfg.at("final_only").get<bool>())
    forge::write_samples_csv(os, forge::horizon_states(paths));
  else
    forge::write_ensemble_csv(os, paths);
  CommandResult r;
  r.csv = os.str();
  return r;
}

CommandResult run_time_change(const Json& cfg) {
  reject_unknown(cfg, "time-change",
                 {"phi", "family", "alpha", "mass", "lambda", "exponent", "x0",
                  "t", "n", "dt", "seed", "escape_radius", "final_only"});
  auto phi = coefficient_from_cfg(cfg, "phi", "1");
  auto base = exponent_from_cfg(cfg);
  double x0 = get_num(cfg, "x0", 0.0);
  double t = get_num(cfg, "t", 1.0);
  auto mc = mc_from_cfg(cfg, t);
  auto paths =
      forge::simulate_timechanged(base, phi, forge::scalar_vec(x0), t, mc);
  std::ostringstream os;
  if (cfg.contains("final_only") && cfg.at("final_only").get<bool>())
    forge::write_samples_csv(os, forge::horizon_states(paths));
  else
    forge::write_ensemble_csv(os, paths);
  CommandResult r;
  r.csv = os.str();
  return r;
}

CommandResult run_check(const Json& cfg) {
  reject_unknown(cfg, "check",
                 {"condition", "phi", "f", "symbol", "exponent", "family",
                  "alpha", "mass", "lambda", "beta", "phi2", "exponent2"});
  std::string condition = get_str(cfg, "condition", "");
  if (condition.empty())
    throw forge::ParameterError("check: missing 'condition'");
  auto grids = forge::ProbeGrids::standard();
  forge::ConditionReport report;
  if (condition == "time-eq5" || condition == "growth") {
    auto phi = coefficient_from_cfg(cfg, "phi", "1");
    forge::StateSymbol sym =
        cfg.contains("symbol")
            ? forge::symbol_from_json(cfg.at("symbol"))
            : forge::StateSymbol(forge::StateCoefficient::constant(1.0),
                                 exponent_from_cfg(cfg));
    report = forge::check_growth_timechange(phi, sym, grids);
  } else if (condition == "time-eq6" || condition == "perpetual") {
    auto f = coefficient_from_cfg(cfg, "f", "1");
    report = forge::check_perpetual(f, exponent_from_cfg(cfg), grids);
  } else if (condition == "thm13") {
    auto phi = coefficient_from_cfg(cfg, "phi", "1");
    auto chars = forge::StateCharacteristics::from_spec(exponent_from_cfg(cfg));
    report = forge::check_thm13(phi, chars, forge::CutoffSpec::standard(), grids);
  } else if (condition == "cor15") {
    auto phi = coefficient_from_cfg(cfg, "phi", "1");
    report = forge::check_cor15(phi, triplet_of(exponent_from_cfg(cfg)), grids);
  } else if (condition == "cor17") {
    auto phi = coefficient_from_cfg(cfg, "phi", "1");
    double beta = get_num(cfg, "beta", 2.0);
    report = forge::check_stable_dominated(phi, triplet_of(exponent_from_cfg(cfg)),
                                           beta);
  } else if (condition == "pair" || condition == "app5") {
    if (!cfg.contains("exponent") || !cfg.contains("exponent2"))
      throw forge::ParameterError(
          "check pair: needs 'exponent' and 'exponent2'");
    auto phi1 = coefficient_from_cfg(cfg, "phi", "1");
    auto phi2 = coefficient_from_cfg(cfg, "phi2", "1");
    report = forge::check_decomposable_pair(
        phi1, forge::exponent_from_json(cfg.at("exponent")), phi2,
        forge::exponent_from_json(cfg.at("exponent2")), grids);
  } else {
    throw forge::ParameterError("unknown condition '" + condition + "'");
  }
  CommandResult r;
  r.output["report"] = forge::json_of(report);
  r.code = verdict_code(report.verdict);
  return r;
}

CommandResult run_cross_validate(const Json& cfg) {
  reject_unknown(cfg, "cross-validate",
                 {"sigma", "alpha", "x0", "t", "n", "dt", "seed"});
  auto sigma = coefficient_from_cfg(cfg, "sigma", "1");
  double alpha = get_num(cfg, "alpha", 2.0);
  double x0 = get_num(cfg, "x0", 0.0);
  double t = get_num(cfg, "t", 1.0);
  auto mc = mc_from_cfg(cfg, t);
  auto report = forge::cross_validate_weak(sigma, alpha, x0, t, mc);
  CommandResult r;
  r.output["report"] = forge::json_of(report);
  r.code = verdict_code(report.verdict);
  return r;
}

CommandResult run_perpetual(const Json& cfg) {
  reject_unknown(cfg, "perpetual",
                 {"f", "family", "alpha", "mass", "lambda", "exponent",
                  "horizons", "n", "dt", "seed"});
  auto f = coefficient_from_cfg(cfg, "f", "1");
  auto driver = exponent_from_cfg(cfg);
  auto horizons = get_list(cfg, "horizons", {10.0, 100.0, 1000.0});
  auto mc = mc_from_cfg(cfg, horizons.empty() ? 1.0 : horizons.back());
  auto report = forge::perpetual_integral_mc(driver, f, horizons, mc);
  CommandResult r;
  r.output["report"] = forge::json_of(report);
  r.code = verdict_code(report.verdict);
  return r;
}

CommandResult run_probe(const std::string& kind, const Json& cfg) {
  forge::VerifyReport report;
  if (kind == "maximal-inequality") {
    reject_unknown(cfg, "probe maximal-inequality",
                   {"sigma", "alpha", "x0", "t", "n", "dt", "seed", "radii"});
    auto sigma = coefficient_from_cfg(cfg, "sigma", "1");
    double alpha = get_num(cfg, "alpha", 2.0);
    double x0 = get_num(cfg, "x0", 0.0);
    double t = get_num(cfg, "t", 1.0);
    auto mc = mc_from_cfg(cfg, t);
    auto radii = get_list(cfg, "radii", {1.0, 10.0, 100.0});
    auto paths = forge::euler_maruyama(
        sigma, forge::ExponentSpec::isotropic_stable(alpha),
        forge::scalar_vec(x0), mc);
    forge::StateSymbol sym(sigma.to_power(alpha),
                           forge::ExponentSpec::isotropic_stable(alpha));
    report = forge::maximal_inequality_probe(paths, x0, t, radii, sym);
  } else if (kind == "moment-scaling") {
    reject_unknown(cfg, "probe moment-scaling",
                   {"sigma", "alpha", "kappa", "x0", "n", "dt", "seed",
                    "t_points"});
    auto sigma = coefficient_from_cfg(cfg, "sigma", "1");
    double alpha = get_num(cfg, "alpha", 2.0);
    double kappa = get_num(cfg, "kappa", 1.0);
    double x0 = get_num(cfg, "x0", 0.0);
    std::vector<double> t_grid = get_list(cfg, "t_points", {});
    if (t_grid.empty())
      for (int i = 0; i < 8; ++i) t_grid.push_back(std::pow(2.0, i - 7));
    auto mc = mc_from_cfg(cfg, t_grid.back());
    report = forge::moment_scaling_probe(sigma, alpha, kappa, x0, t_grid, mc);
  } else if (kind == "martingale") {
    reject_unknown(cfg, "probe martingale",
                   {"sigma", "alpha", "x0", "t_grid", "n", "dt", "seed"});
    auto sigma = coefficient_from_cfg(cfg, "sigma", "1");
    double alpha = get_num(cfg, "alpha", 2.0);
    double x0 = get_num(cfg, "x0", 0.0);
    auto t_grid = get_list(cfg, "t_grid", {0.5, 1.0});
    auto mc = mc_from_cfg(cfg, t_grid.back());
    auto paths = forge::euler_maruyama(
        sigma, forge::ExponentSpec::isotropic_stable(alpha),
        forge::scalar_vec(x0), mc);
    forge::StateSymbol sym(sigma.to_power(alpha),
                           forge::ExponentSpec::isotropic_stable(alpha));
    auto bump = [](double x) { return std::exp(-x * x); };
    report = forge::martingale_residual(paths, bump, sym, t_grid);
  } else if (kind == "continuity") {
    reject_unknown(cfg, "probe continuity",
                   {"exponent", "family", "alpha", "mass", "lambda", "lo",
                    "hi"});
    auto chars = forge::StateCharacteristics::from_spec(exponent_from_cfg(cfg));
    auto cond = forge::continuity_probe(chars, get_num(cfg, "lo", -5.0),
                                        get_num(cfg, "hi", 5.0),
                                        forge::ProbeGrids::standard());
    CommandResult r;
    r.output["report"] = forge::json_of(cond);
    r.code = verdict_code(cond.verdict);
    return r;
  } else {
    throw forge::ParameterError("unknown probe '" + kind + "'");
  }
  CommandResult r;
  r.output["report"] = forge::json_of(report);
  r.code = verdict_code(report.verdict);
  return r;
}

CommandResult dispatch(const std::string& command, const Json& cfg) {
  if (command == "sample") return run_sample(cfg);
  if (command == "simulate-sde") return run_simulate_sde(cfg);
  if (command == "time-change") return run_time_change(cfg);
  if (command == "check") return run_check(cfg);
  if (command == "cross-validate") return run_cross_validate(cfg);
  if (command == "perpetual") return run_perpetual(cfg);
  if (command.rfind("probe:", 0) == 0)
    return run_probe(command.substr(6), cfg);
  throw forge::ParameterError("unknown command '" + command + "'");
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw forge::ParameterError("cannot open '" + path + "'");
  Json j;
  in >> j;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw forge::ParameterError("cannot write '" + path + "'");
  out << text;
}

// Merge report JSON files into one summary table.
CommandResult run_report_merge(const std::vector<std::string>& files) {
  std::ostringstream os;
  os << "file,id,verdict,notes\r\n";
  for (const auto& f : files) {
    Json j = load_json_file(f);
    Json rep = j.contains("report") ? j.at("report") : j;
    std::string id = rep.contains("condition_id")
                         ? rep.at("condition_id").get<std::string>()
                         : rep.value("id", std::string("?"));
    os << forge::csv_escape(f) << ',' << forge::csv_escape(id) << ','
       << rep.value("verdict", std::string("?")) << ','
       << forge::csv_escape(rep.value("notes", std::string())) << "\r\n";
  }
  CommandResult r;
  r.csv = os.str();
  return r;
}

int emit_error(const std::string& type, const std::string& message, int code) {
  Json err;
  err["error"]["type"] = type;
  err["error"]["message"] = message;
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: simulation and verification of time-changed Levy processes"};
  app.require_subcommand(0, 1);

  int threads = 0;
  std::string replay_path, out_path, config_path;
  std::uint64_t seed_flag = 0;
  app.add_option("--threads", threads, "worker thread cap");
  app.add_option("--replay", replay_path, "re-run a saved report wrapper");

  // Per-subcommand flag values keyed by config name.
  struct Flag {
    std::string value;
    CLI::Option* opt = nullptr;
    bool is_flag = false;
  };
  std::map<std::string, std::map<std::string, Flag>> flags;
  auto add = [&flags](CLI::App* sub, const std::string& cmd, const char* flag,
                      const char* key, const char* help) {
    auto& f = flags[cmd][key];
    f.opt = sub->add_option(flag, f.value, help);
  };

  std::map<std::string, CLI::App*> subs;
  auto make_sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--config", config_path, "JSON config file");
    s->add_option("--out", out_path, "output path");
    s->add_option("--seed", seed_flag, "RNG seed");
    s->add_option("--threads", threads, "worker thread cap");
    subs[name] = s;
    return s;
  };

  auto* sample = make_sub("sample", "draw exact increments of a Levy process");
  add(sample, "sample", "--family", "family", "exponent family");
  add(sample, "sample", "--alpha", "alpha", "stability index");
  add(sample, "sample", "--mass", "mass", "mass parameter");
  add(sample, "sample", "--lambda", "lambda", "homographic parameter");
  add(sample, "sample", "--t", "t", "time horizon");
  add(sample, "sample", "--n", "n", "sample count");

  auto* sde = make_sub("simulate-sde", "Euler-Maruyama for dX = sigma(X-) dL");
  add(sde, "simulate-sde", "--sigma", "sigma", "dispersion expression");
  add(sde, "simulate-sde", "--alpha", "alpha", "driver stability index");
  add(sde, "simulate-sde", "--x0", "x0", "initial state");
  add(sde, "simulate-sde", "--t", "t", "horizon");
  add(sde, "simulate-sde", "--n", "n", "path count");
  add(sde, "simulate-sde", "--dt", "dt", "step size");
  add(sde, "simulate-sde", "--final-only", "final_only", "write only horizon states");

  auto* tc = make_sub("time-change", "time-changed base process Y = X o alpha");
  add(tc, "time-change", "--phi", "phi", "clock coefficient expression");
  add(tc, "time-change", "--family", "family", "base family");
  add(tc, "time-change", "--alpha", "alpha", "base stability index");
  add(tc, "time-change", "--x0", "x0", "initial state");
  add(tc, "time-change", "--t", "t", "horizon");
  add(tc, "time-change", "--n", "n", "path count");
  add(tc, "time-change", "--dt", "dt", "step size");
  add(tc, "time-change", "--final-only", "final_only", "write only horizon states");

  auto* check = make_sub("check", "evaluate a growth-condition checklist");
  add(check, "check", "--condition", "condition", "condition id");
  add(check, "check", "--phi", "phi", "coefficient expression");
  add(check, "check", "--f", "f", "integrand expression");
  add(check, "check", "--family", "family", "exponent family");
  add(check, "check", "--alpha", "alpha", "stability index");
  add(check, "check", "--beta", "beta", "dominating index");

  auto* cv = make_sub("cross-validate", "SDE vs time-change law comparison");
  add(cv, "cross-validate", "--sigma", "sigma", "dispersion expression");
  add(cv, "cross-validate", "--alpha", "alpha", "driver stability index");
  add(cv, "cross-validate", "--x0", "x0", "initial state");
  add(cv, "cross-validate", "--t", "t", "horizon");
  add(cv, "cross-validate", "--n", "n", "paths per method");
  add(cv, "cross-validate", "--dt", "dt", "step size");

  auto* perp = make_sub("perpetual", "perpetual integral divergence probe");
  add(perp, "perpetual", "--f", "f", "integrand expression");
  add(perp, "perpetual", "--alpha", "alpha", "driver stability index");
  add(perp, "perpetual", "--horizons", "horizons", "comma-separated horizons");
  add(perp, "perpetual", "--n", "n", "path count");

  auto* probe = make_sub("probe", "statistical probes");
  probe->require_subcommand(1);
  for (const char* kind :
       {"maximal-inequality", "moment-scaling", "martingale", "continuity"}) {
    std::string cmd = std::string("probe:") + kind;
    CLI::App* ps = probe->add_subcommand(kind, kind);
    ps->add_option("--config", config_path, "JSON config file");
    ps->add_option("--out", out_path, "output path");
    ps->add_option("--seed", seed_flag, "RNG seed");
    subs[cmd] = ps;
    add(ps, cmd, "--sigma", "sigma", "dispersion expression");
    add(ps, cmd, "--alpha", "alpha", "stability index");
    add(ps, cmd, "--kappa", "kappa", "moment order");
    add(ps, cmd, "--x0", "x0", "initial state");
    add(ps, cmd, "--t", "t", "horizon");
    add(ps, cmd, "--n", "n", "path count");
    add(ps, cmd, "--dt", "dt", "step size");
    add(ps, cmd, "--radii", "radii", "comma-separated radii");
    add(ps, cmd, "--t-grid", "t_grid", "comma-separated times");
    add(ps, cmd, "--family", "family", "exponent family");
    add(ps, cmd, "--lo", "lo", "probe box lower edge");
    add(ps, cmd, "--hi", "hi", "probe box upper edge");
  }

  auto* merge = make_sub("report", "merge report JSON files into a CSV table");
  std::vector<std::string> merge_files;
  merge->add_option("files", merge_files, "report JSON files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return emit_error("usage", e.what(), 1);
  }

  if (threads > 0) forge::set_thread_count(threads);

  auto list_keys = std::set<std::string>{"horizons", "radii", "t_grid",
                                         "t_points"};
  auto interpret = [&](const std::string& key, const std::string& raw) -> Json {
    if (list_keys.count(key)) {
      std::vector<double> vals;
      std::stringstream ss(raw);
      std::string tok;
      while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
      return Json(vals);
    }
    if (raw == "true") return Json(true);
    if (raw == "false") return Json(false);
    try {
      std::size_t pos = 0;
      double v = std::stod(raw, &pos);
      if (pos == raw.size()) return Json(v);
    } catch (...) {
    }
    return Json(raw);
  };

  try {
    if (!replay_path.empty()) {
      Json wrapper = load_json_file(replay_path);
      std::string command = wrapper.at("command").get<std::string>();
      auto result = dispatch(command, wrapper.at("config"));
      if (wrapper.contains("report") &&
          result.output.value("report", Json()) != wrapper.at("report"))
        return emit_error("replay-mismatch",
                          "replay did not reproduce the stored report", 4);
      std::cout << result.output.dump(2) << "\n";
      return result.code;
    }

    // find the selected command
    std::string command;
    for (auto& [name, sub] : subs)
      if (sub->parsed() && sub->get_subcommands().empty()) command = name;
    if (command.empty()) {
      std::cout << app.help() << "\n";
      return 1;
    }

    if (command == "report") {
      if (merge_files.empty())
        throw forge::ParameterError("report: no input files");
      auto result = run_report_merge(merge_files);
      if (out_path.empty())
        std::cout << result.csv;
      else
        write_text(out_path, result.csv);
      return 0;
    }

    Json cfg = config_path.empty() ? Json::object()
                                   : load_json_file(config_path);
    for (auto& [key, flag] : flags[command])
      if (flag.opt && flag.opt->count() > 0)
        cfg[key] = interpret(key, flag.value);
    if (subs[command]->count("--seed") > 0)
      cfg["seed"] = seed_flag;

    auto result = dispatch(command, cfg);
    if (!result.csv.empty()) {
      if (out_path.empty())
        std::cout << result.csv;
      else
        write_text(out_path, result.csv);
      return result.code;
    }
    result.output["command"] = command;
    result.output["config"] = cfg;
    if (out_path.empty())
      std::cout << result.output.dump(2) << "\n";
    else
      write_text(out_path, result.output.dump(2) + "\n");
    return result.code;
  } catch (const forge::AccuracyError& e) {
    return emit_error("accuracy", e.what(), 4);
  } catch (const forge::BudgetError& e) {
    return emit_error("budget", e.what(), 2);
  } catch (const forge::ParameterError& e) {
    return emit_error("config", e.what(), 1);
  } catch (const forge::DomainError& e) {
    return emit_error("domain", e.what(), 1);
  } catch (const forge::CapabilityError& e) {
    return emit_error("capability", e.what(), 1);
  } catch (const Json::exception& e) {
    return emit_error("config", e.what(), 1);
  } catch (const std::exception& e) {
    return emit_error("internal", e.what(), 1);
  }
}
