#include "renyibet/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "renyibet/betting.hpp"
#include "renyibet/divergences.hpp"
#include "renyibet/gpt.hpp"
#include "renyibet/json_io.hpp"
#include "renyibet/oracles.hpp"
#include "renyibet/verify.hpp"

namespace renyibet::cli {
namespace {

using io::json;

// Raised when a report is produced but one of its checks fails.
struct PropertyViolation {
  std::string text;
};

struct Common {
  std::string out_path;
  bool bits = false;
  std::optional<std::uint64_t> seed;
  std::string format;
  double tolerance = kCompareTolerance;

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("RENYI_BET_SEED")) {
      try {
        return std::stoull(env);
      } catch (const std::exception&) {
        throw ValidationError("RENYI_BET_SEED is not an unsigned integer");
      }
    }
    return 42;
  }
  // Log-quantities in nats, or bits when requested.
  double log_unit(double nats) const { return bits ? nats / std::numbers::ln2 : nats; }
  json log_json(double nats) const { return io::number_json(log_unit(nats)); }
};

json read_json_file(const std::string& path) {
  try {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
}

void check_version(const json& spec) {
  if (spec.contains("version") && spec.at("version") != 1) throw ValidationError("unsupported spec version");
}

std::vector<Pmf> pmf_list(const json& j, const std::string& context) {
  if (!j.is_array()) throw ValidationError(context + ": expected an array of PMFs");
  std::vector<Pmf> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(io::pmf_from_json(j[i], context + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<CondPmf> cond_list(const json& j, const std::string& context) {
  if (!j.is_array()) throw ValidationError(context + ": expected an array of conditional PMFs");
  std::vector<CondPmf> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(io::cond_from_json(j[i], context + "[" + std::to_string(i) + "]"));
  return out;
}

std::optional<Index> optional_index(const json& spec, const char* key) {
  if (!spec.contains(key) || spec.at(key).is_null()) return std::nullopt;
  if (!spec.at(key).is_number_integer()) throw ValidationError(std::string(key) + " must be an integer");
  return spec.at(key).get<Index>();
}

const char* case_name(const OrderVector& o) { return o.order_case() == OrderCase::I ? "I" : "II"; }

Index used_pivot(const OrderVector& o, const std::optional<Index>& override_pivot) {
  return override_pivot ? *override_pivot : o.pivot();
}

json pmfs_json(const std::vector<Pmf>& pmfs) {
  json out = json::array();
  for (const auto& p : pmfs) out.push_back(io::pmf_json(p));
  return out;
}

json conds_json(const std::vector<CondPmf>& conds) {
  json out = json::array();
  for (const auto& c : conds) out.push_back(io::cond_json(c));
  return out;
}

bool is_joint(const json& p0) { return p0.is_object() && p0.contains("conditions"); }

// --- divergences ----------------------------------------------------------

json cmd_div(const Common& c, const json& spec) {
  io::check_keys(spec, {"version", "alphas", "pmfs", "pivot"}, "div spec");
  check_version(spec);
  const OrderVector orders(io::numbers(io::require(spec, "alphas", "div spec"), "alphas"));
  const auto pmfs = pmf_list(io::require(spec, "pmfs", "div spec"), "pmfs");
  const auto pivot = optional_index(spec, "pivot");
  const double value = renyi_multivariate(orders, pmfs, pivot);
  return json{{"divergence", c.log_json(value)}, {"case", case_name(orders)}, {"pivot", used_pivot(orders, pivot)}};
}

json cmd_cond_div(const Common& c, const json& spec) {
  io::check_keys(spec, {"version", "alphas", "beta", "conditionals", "p_g", "pivot"}, "cond-div spec");
  check_version(spec);
  const OrderVector orders(io::numbers(io::require(spec, "alphas", "cond-div spec"), "alphas"));
  const double beta = io::number(io::require(spec, "beta", "cond-div spec"), "beta");
  const auto conds = cond_list(io::require(spec, "conditionals", "cond-div spec"), "conditionals");
  const Pmf p_g = io::pmf_from_json(io::require(spec, "p_g", "cond-div spec"), "p_g");
  const auto pivot = optional_index(spec, "pivot");
  const double value = renyi_conditional(orders, beta, conds, p_g, pivot);
  return json{{"divergence", c.log_json(value)},
              {"case", case_name(orders)},
              {"pivot", used_pivot(orders, pivot)},
              {"beta", io::number_json(beta)}};
}

json dpi_json(const Common& c, double before, double after, bool holds) {
  return json{{"before", c.log_json(before)}, {"after", c.log_json(after)}, {"holds", holds}};
}

json cmd_dpi(const Common& c, const json& spec) {
  io::check_keys(spec,
                 {"version", "mode", "alphas", "beta", "pmfs", "kernel", "kernels", "conditionals", "p_g",
                  "p0_given_g", "references"},
                 "dpi-check spec");
  check_version(spec);
  const std::string mode = spec.value("mode", std::string("unconditional"));
  const OrderVector orders(io::numbers(io::require(spec, "alphas", "dpi-check spec"), "alphas"));
  json report;
  bool holds = true;
  if (mode == "unconditional") {
    const auto pmfs = pmf_list(io::require(spec, "pmfs", "dpi-check spec"), "pmfs");
    const auto op = io::kernel_from_json(io::require(spec, "kernel", "dpi-check spec"));
    const auto rep = dpi_check(orders, pmfs, op);
    holds = rep.before >= rep.after - c.tolerance;
    report = dpi_json(c, rep.before, rep.after, holds);
  } else if (mode == "main") {
    const double beta = io::number(io::require(spec, "beta", "dpi-check spec"), "beta");
    const auto conds = cond_list(io::require(spec, "conditionals", "dpi-check spec"), "conditionals");
    const Pmf p_g = io::pmf_from_json(io::require(spec, "p_g", "dpi-check spec"), "p_g");
    std::vector<StochasticOp> kernels;
    for (const auto& k : io::require(spec, "kernels", "dpi-check spec")) kernels.push_back(io::kernel_from_json(k));
    const auto rep = main_system_dpi_check(orders, beta, conds, p_g, kernels);
    holds = rep.before >= rep.after - c.tolerance;
    report = dpi_json(c, rep.before, rep.after, holds);
  } else if (mode == "conditioning") {
    const CondPmf p0 = io::cond_from_json(io::require(spec, "p0_given_g", "dpi-check spec"), "p0_given_g");
    const auto refs = pmf_list(io::require(spec, "references", "dpi-check spec"), "references");
    const Pmf p_g = io::pmf_from_json(io::require(spec, "p_g", "dpi-check spec"), "p_g");
    const auto op = io::kernel_from_json(io::require(spec, "kernel", "dpi-check spec"));
    const auto rep = conditioning_dpi_check(orders, p0, refs, p_g, op);
    holds = rep.before >= rep.after - c.tolerance;
    const bool corollary = rep.before >= rep.unconditional - c.tolerance;
    report = dpi_json(c, rep.before, rep.after, holds);
    report["unconditional"] = c.log_json(rep.unconditional);
    report["corollary_holds"] = corollary;
    holds = holds && corollary;
  } else {
    throw ValidationError("dpi-check mode must be unconditional, main or conditioning");
  }
  report["mode"] = mode;
  if (!holds) throw PropertyViolation{report.dump(2)};
  return report;
}

std::string sweep_csv(const Common& c, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "lambda,divergence,kl_limit,tropical_limit\n";
  for (const auto& r : rows) {
    out << r.lambda << ',' << c.log_unit(r.divergence) << ',' << c.log_unit(r.kl_limit) << ','
        << c.log_unit(r.tropical_limit) << '\n';
  }
  return out.str();
}

// --- betting --------------------------------------------------------------

struct Game {
  json spec;
  OddsProfile odds;
  RiskVector risk;
};

Game read_game(const json& spec, std::initializer_list<const char*> extra = {}) {
  std::vector<std::string> allowed{"version", "p0", "odds", "risk", "bets", "oracle"};
  for (const char* e : extra) allowed.push_back(e);
  for (const auto& item : spec.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ValidationError("game spec: unknown field \"" + item.key() + "\"");
    }
  }
  check_version(spec);
  return Game{spec, io::odds_from_json(io::require(spec, "odds", "game spec")),
              io::risk_from_json(io::require(spec, "risk", "game spec"))};
}

json cmd_ice(const Common& c, const json& spec) {
  Game g = read_game(spec);
  const json& p0 = io::require(spec, "p0", "game spec");
  const json& bets = io::require(spec, "bets", "game spec");
  double log_ice = 0.0;
  if (is_joint(p0)) {
    log_ice = log_multi_ice_conditional(io::joint_from_json(p0, "p0"), g.odds, cond_list(bets, "bets"), g.risk);
  } else {
    log_ice = log_multi_ice_unconditional(io::pmf_from_json(p0, "p0"), g.odds, pmf_list(bets, "bets"), g.risk);
  }
  return json{{"ice", io::number_json(std::exp(log_ice))}, {"log_ice", c.log_json(log_ice)}};
}

json cmd_optimize(const Common& c, const json& spec) {
  Game g = read_game(spec);
  const json& p0 = io::require(spec, "p0", "game spec");
  if (is_joint(p0)) {
    const auto opt = optimal_bets_conditional(io::joint_from_json(p0, "p0"), g.odds, g.risk);
    return json{{"max_log_ice", c.log_json(opt.max_log_ice)},
                {"max_ice", io::number_json(std::exp(opt.max_log_ice))},
                {"bets", conds_json(opt.bets)}};
  }
  const auto opt = optimal_bets_unconditional(io::pmf_from_json(p0, "p0"), g.odds, g.risk);
  return json{{"max_log_ice", c.log_json(opt.max_log_ice)},
              {"max_ice", io::number_json(std::exp(opt.max_log_ice))},
              {"bets", pmfs_json(opt.bets)}};
}

json terms_json(const Common& c, const DecompositionTerms& t) {
  json penalties = json::array();
  for (size_t k = 0; k < t.penalties.size(); ++k) {
    const auto& p = t.penalties[k];
    penalties.push_back(json{{"lottery", k + 1},
                             {"order", io::number_json(p.order)},
                             {"coefficient", io::number_json(p.coefficient)},
                             {"penalty", c.log_json(p.penalty)},
                             {"fairness", c.log_json(t.fairness_terms[k])},
                             {"log_constant", c.log_json(p.log_constant)}});
  }
  json out{{"log_ice", c.log_json(t.log_ice)},
           {"divergence_term", c.log_json(t.divergence_term)},
           {"recomposed", c.log_json(t.recomposed())},
           {"terms", penalties}};
  out["divergence_term_default_pivot"] =
      t.divergence_term_default_pivot ? c.log_json(*t.divergence_term_default_pivot) : json(nullptr);
  return out;
}

std::string terms_csv(const Common& c, const DecompositionTerms& t) {
  std::ostringstream out;
  out.precision(12);
  out << "lottery,order,coefficient,penalty,fairness,log_constant\n";
  for (size_t k = 0; k < t.penalties.size(); ++k) {
    const auto& p = t.penalties[k];
    out << k + 1 << ',' << p.order << ',' << p.coefficient << ',' << c.log_unit(p.penalty) << ','
        << c.log_unit(t.fairness_terms[k]) << ',' << c.log_unit(p.log_constant) << '\n';
  }
  return out.str();
}

// Returns JSON, or CSV text when requested.
std::string cmd_decompose(const Common& c, const json& spec) {
  Game g = read_game(spec);
  const json& p0 = io::require(spec, "p0", "game spec");
  const json& bets = io::require(spec, "bets", "game spec");
  if (is_joint(p0)) {
    const auto rep =
        decompose_ice_conditional(io::joint_from_json(p0, "p0"), g.odds, cond_list(bets, "bets"), g.risk);
    if (c.format == "csv") return terms_csv(c, rep);
    json out = terms_json(c, rep);
    out["kind"] = "conditional";
    out["bound_holds"] = rep.log_ice <= rep.recomposed() + c.tolerance;
    out["optimal_bets"] = conds_json(rep.optimal_bets);
    return out.dump(2) + "\n";
  }
  const auto rep = decompose_ice(io::pmf_from_json(p0, "p0"), g.odds, pmf_list(bets, "bets"), g.risk);
  if (c.format == "csv") return terms_csv(c, rep);
  json out = terms_json(c, rep);
  out["kind"] = "unconditional";
  out["optimal_bets"] = pmfs_json(rep.optimal_bets);
  out["targets"] = pmfs_json(rep.targets);
  return out.dump(2) + "\n";
}

json cmd_side_info(const Common& c, const json& spec) {
  Game g = read_game(spec);
  const JointPmf joint = io::joint_from_json(io::require(spec, "p0", "game spec"), "p0");
  const double gain = side_info_gain(joint, g.odds, g.risk);
  const double conditional = optimal_bets_conditional(joint, g.odds, g.risk).max_log_ice;
  return json{{"gain", c.log_json(gain)},
              {"conditional_optimum", c.log_json(conditional)},
              {"unconditional_optimum", c.log_json(conditional - gain)}};
}

// --- GPT ------------------------------------------------------------------

void check_gpt_keys(const json& spec) {
  io::check_keys(spec,
                 {"version", "model", "ensemble", "measurement", "odds", "risk", "eta", "alphas", "references",
                  "constant_odds"},
                 "gpt spec");
  check_version(spec);
}

json cmd_gpt_bet(const Common& c, const json& spec) {
  check_gpt_keys(spec);
  const auto g = io::gpt_from_json(spec);
  const OddsProfile odds = io::odds_from_json(io::require(spec, "odds", "gpt spec"));
  const RiskVector risk = io::risk_from_json(io::require(spec, "risk", "gpt spec"));
  const double value = sb_optimal_log_ice(g.measurement, g.ensemble, odds, risk);
  json out{{"optimal_log_ice", c.log_json(value)},
           {"optimal_ice", io::number_json(std::exp(value))},
           {"joint", io::joint_json(outcome_joint(g.measurement, g.ensemble))}};
  const OrderVector orders = risk_to_orders(risk);
  if (orders[0] == orders.max_order()) {
    std::optional<Pmf> eta;
    if (spec.contains("eta")) eta = io::pmf_from_json(spec.at("eta"), "eta");
    out["advantage_ratio"] = io::number_json(advantage_ratio(g.model, g.measurement, g.ensemble, odds, risk, eta));
    out["monotone"] = c.log_json(informativeness_monotone(g.measurement, g.ensemble, odds.induced_pmfs(), orders));
  } else {
    out["advantage_ratio"] = nullptr;
    out["monotone"] = nullptr;
  }
  return out;
}

json cmd_sd(const Common&, const json& spec) {
  check_gpt_keys(spec);
  const auto g = io::gpt_from_json(spec);
  json guesses = json::array();
  for (Index x : map_guesses(g.measurement, g.ensemble)) guesses.push_back(x);
  json out{{"success", io::number_json(sd_success(g.measurement, g.ensemble))}, {"guesses", guesses}};
  if (spec.contains("constant_odds")) {
    const double cst = io::number(spec.at("constant_odds"), "constant_odds");
    const OddsProfile odds({Vector::Constant(g.ensemble.prior().size(), cst)});
    out["risk_neutral_ce"] = io::number_json(sb_risk_neutral_optimal_ce(g.measurement, g.ensemble, odds));
  }
  return out;
}

json cmd_monotone(const Common& c, const json& spec) {
  check_gpt_keys(spec);
  const auto g = io::gpt_from_json(spec);
  const OrderVector orders(io::numbers(io::require(spec, "alphas", "gpt spec"), "alphas"));
  const auto refs = pmf_list(io::require(spec, "references", "gpt spec"), "references");
  return json{{"monotone", c.log_json(informativeness_monotone(g.measurement, g.ensemble, refs, orders))}};
}

// --- oracle and verification ----------------------------------------------

oracle::OracleConfig oracle_config(const Common& c, const json& spec, std::optional<double> grid,
                                   std::optional<Index> mc) {
  oracle::OracleConfig cfg;
  cfg.seed = c.resolved_seed();
  if (spec.contains("oracle")) {
    const json& o = spec.at("oracle");
    io::check_keys(o, {"seed", "grid_resolution", "dirichlet_samples", "mc_samples"}, "oracle config");
    if (o.contains("seed") && !c.seed) cfg.seed = o.at("seed").get<std::uint64_t>();
    if (o.contains("grid_resolution")) cfg.grid_resolution = io::number(o.at("grid_resolution"), "grid_resolution");
    if (o.contains("dirichlet_samples")) cfg.dirichlet_samples = o.at("dirichlet_samples").get<Index>();
    if (o.contains("mc_samples")) cfg.mc_samples = o.at("mc_samples").get<Index>();
  }
  if (grid) cfg.grid_resolution = *grid;
  if (mc) cfg.mc_samples = *mc;
  cfg.validate();
  return cfg;
}

json cmd_oracle(const Common& c, const json& spec, const std::string& check, std::optional<double> grid,
                std::optional<Index> mc) {
  Game g = read_game(spec);
  const auto cfg = oracle_config(c, spec, grid, mc);
  const json& p0 = io::require(spec, "p0", "game spec");
  json out{{"check", check}, {"seed", cfg.seed}};
  bool ok = true;
  if (check == "optimize") {
    double closed = 0.0;
    double found = 0.0;
    if (is_joint(p0)) {
      const JointPmf joint = io::joint_from_json(p0, "p0");
      closed = optimal_bets_conditional(joint, g.odds, g.risk).max_log_ice;
      const auto r = oracle::brute_force_optimal_bets(joint, g.odds, g.risk, cfg);
      found = r.log_ice;
      out["oracle_bets"] = conds_json(r.bets);
    } else {
      const Pmf p = io::pmf_from_json(p0, "p0");
      closed = optimal_bets_unconditional(p, g.odds, g.risk).max_log_ice;
      const auto r = oracle::brute_force_optimal_bets(p, g.odds, g.risk, cfg);
      found = r.log_ice;
      out["oracle_bets"] = pmfs_json(r.bets);
    }
    out["closed_form_log_ice"] = c.log_json(closed);
    out["oracle_log_ice"] = c.log_json(found);
    ok = found <= closed + 1e-6 && std::abs(found - closed) <= 1e-4;
  } else if (check == "mc") {
    const json& bets = io::require(spec, "bets", "game spec");
    double analytic = 0.0;
    oracle::MonteCarloEstimate est{};
    if (is_joint(p0)) {
      const JointPmf joint = io::joint_from_json(p0, "p0");
      const auto b = cond_list(bets, "bets");
      analytic = multi_ice_conditional(joint, g.odds, b, g.risk);
      est = oracle::monte_carlo_ice(joint, g.odds, b, g.risk, cfg);
    } else {
      const Pmf p = io::pmf_from_json(p0, "p0");
      const auto b = pmf_list(bets, "bets");
      analytic = multi_ice_unconditional(p, g.odds, b, g.risk);
      est = oracle::monte_carlo_ice(p, g.odds, b, g.risk, cfg);
    }
    out["analytic_ice"] = io::number_json(analytic);
    out["mc_ice"] = io::number_json(est.estimate);
    out["mc_stderr"] = io::number_json(est.stderr_);
    ok = std::abs(analytic - est.estimate) <= 4.0 * est.stderr_ + 1e-12;
  } else {
    throw ValidationError("oracle --check must be optimize or mc");
  }
  out["agrees"] = ok;
  if (!ok) throw PropertyViolation{out.dump(2)};
  return out;
}

json cmd_verify_all(const Common& c, std::optional<Index> mc, std::ostream& err) {
  verify::SuiteOptions opts;
  opts.seed = c.resolved_seed();
  if (mc) opts.mc_samples = *mc;
  json checks = json::array();
  int passed = 0;
  int failed = 0;
  verify::run_all(opts, [&](const verify::CheckResult& r) {
    err << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << '\n';
    (r.passed ? passed : failed)++;
    checks.push_back(json{{"id", r.id},
                          {"name", r.name},
                          {"passed", r.passed},
                          {"detail", r.detail},
                          {"seconds", io::number_json(r.seconds)}});
  });
  json out{{"seed", opts.seed}, {"passed", passed}, {"failed", failed}, {"checks", checks}};
  if (failed > 0) throw PropertyViolation{out.dump(2)};
  return out;
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out_path);
  if (!file) throw ValidationError("cannot write " + c.out_path);
  file << text;
}

void error_json(std::ostream& err, const char* kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multivariate Renyi divergences and isoelastic betting games", "renyibet"};
  app.require_subcommand(1);
  Common common;
  std::uint64_t seed_value = 0;
  app.add_option("--out", common.out_path, "write the report to PATH");
  app.add_flag("--bits", common.bits, "report log-quantities in bits");
  auto* seed_opt = app.add_option("--seed", seed_value, "random seed (falls back to RENYI_BET_SEED, then 42)");
  app.add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tolerance", common.tolerance, "slack for inequality checks");
  app.fallthrough();

  std::string spec_path;
  std::string pmfs_path;
  std::vector<double> alphas;
  std::optional<Index> pivot;
  std::string check = "optimize";
  std::optional<double> grid;
  std::optional<Index> mc;

  auto with_spec = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--spec", spec_path, "JSON input file ('-' for stdin)");
    if (required) opt->required();
    return sub;
  };

  auto* div = with_spec(app.add_subcommand("div", "unconditional multivariate divergence"), false);
  div->add_option("--alphas", alphas, "orders, comma separated")->delimiter(',');
  div->add_option("--pmfs", pmfs_path, "JSON array of PMFs");
  div->add_option("--pivot", pivot, "pivot index override");
  with_spec(app.add_subcommand("cond-div", "conditional multivariate divergence"));
  with_spec(app.add_subcommand("dpi-check", "both sides of a data processing inequality"));
  with_spec(app.add_subcommand("sweep", "divergence along the order path (CSV)"));
  with_spec(app.add_subcommand("ice", "isoelastic certainty equivalent"));
  with_spec(app.add_subcommand("optimize", "optimal bets and value"));
  with_spec(app.add_subcommand("decompose", "divergence/penalty/fairness decomposition"));
  with_spec(app.add_subcommand("side-info", "value of side information"));
  with_spec(app.add_subcommand("gpt-bet", "state-betting game in a GPT"));
  with_spec(app.add_subcommand("sd", "state discrimination success probability"));
  with_spec(app.add_subcommand("monotone", "measurement informativeness monotone"));
  auto* orc = with_spec(app.add_subcommand("oracle", "brute-force or Monte-Carlo cross-check"));
  orc->add_option("--check", check, "optimize or mc")->check(CLI::IsMember({"optimize", "mc"}));
  orc->add_option("--grid-res", grid, "lattice resolution");
  orc->add_option("--mc-samples", mc, "Monte-Carlo sample count");
  auto* va = app.add_subcommand("verify-all", "run every property suite");
  va->add_option("--mc-samples", mc, "Monte-Carlo sample count");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    error_json(err, "usage", e.what());
    return kValidation;
  }
  if (seed_opt->count() > 0) common.seed = seed_value;

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    std::string text;
    auto as_json = [](const json& j) { return j.dump(2) + "\n"; };
    if (common.format == "csv" && name != "sweep" && name != "decompose") {
      throw ValidationError("--format csv is only available for sweep and decompose");
    }
    if (name == "verify-all") {
      text = as_json(cmd_verify_all(common, mc, err));
    } else if (name == "div" && spec_path.empty()) {
      if (alphas.empty() || pmfs_path.empty()) throw ValidationError("div needs --spec, or --alphas with --pmfs");
      json spec{{"alphas", alphas}, {"pmfs", read_json_file(pmfs_path)}};
      if (pivot) spec["pivot"] = *pivot;
      text = as_json(cmd_div(common, spec));
    } else {
      const json spec = read_json_file(spec_path);
      if (name == "div") {
        text = as_json(cmd_div(common, spec));
      } else if (name == "cond-div") {
        text = as_json(cmd_cond_div(common, spec));
      } else if (name == "dpi-check") {
        text = as_json(cmd_dpi(common, spec));
      } else if (name == "sweep") {
        io::check_keys(spec, {"version", "gammas", "pmfs", "lambdas"}, "sweep spec");
        check_version(spec);
        const auto gammas = io::numbers(io::require(spec, "gammas", "sweep spec"), "gammas");
        const auto lambdas = io::numbers(io::require(spec, "lambdas", "sweep spec"), "lambdas");
        const auto rows = sweep(gammas, pmf_list(io::require(spec, "pmfs", "sweep spec"), "pmfs"), lambdas);
        if (common.format == "json") {
          json arr = json::array();
          for (const auto& r : rows) {
            arr.push_back(json{{"lambda", io::number_json(r.lambda)},
                               {"divergence", common.log_json(r.divergence)},
                               {"kl_limit", common.log_json(r.kl_limit)},
                               {"tropical_limit", common.log_json(r.tropical_limit)}});
          }
          text = as_json(json{{"rows", arr}});
        } else {
          text = sweep_csv(common, rows);
        }
      } else if (name == "ice") {
        text = as_json(cmd_ice(common, spec));
      } else if (name == "optimize") {
        text = as_json(cmd_optimize(common, spec));
      } else if (name == "decompose") {
        text = cmd_decompose(common, spec);
      } else if (name == "side-info") {
        text = as_json(cmd_side_info(common, spec));
      } else if (name == "gpt-bet") {
        text = as_json(cmd_gpt_bet(common, spec));
      } else if (name == "sd") {
        text = as_json(cmd_sd(common, spec));
      } else if (name == "monotone") {
        text = as_json(cmd_monotone(common, spec));
      } else if (name == "oracle") {
        text = as_json(cmd_oracle(common, spec, check, grid, mc));
      }
    }
    emit(common, text, out);
    return kOk;
  } catch (const PropertyViolation& v) {
    try {
      emit(common, v.text + "\n", out);
    } catch (const ValidationError&) {
    }
    error_json(err, "property_violation", name + ": a checked property does not hold");
    return kPropertyViolation;
  } catch (const SingularityError& e) {
    error_json(err, "singularity", e.what());
    return kSingularity;
  } catch (const ValidationError& e) {
    error_json(err, "validation", e.what());
    return kValidation;
  } catch (const json::exception& e) {
    error_json(err, "validation", e.what());
    return kValidation;
  } catch (const std::invalid_argument& e) {
    error_json(err, "validation", e.what());
    return kValidation;
  }
}

}  // namespace renyibet::cli
