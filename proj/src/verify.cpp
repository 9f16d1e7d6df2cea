#include "renyibet/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "renyibet/betting.hpp"
#include "renyibet/divergences.hpp"
#include "renyibet/oracles.hpp"

namespace renyibet::verify {
namespace {

using oracle::Rng;

constexpr double kIdentityTol = 1e-9;
constexpr double kInequalityTol = 1e-9;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Rng suite_rng(const SuiteOptions& opts, int id) { return Rng(opts.seed * 1000003ULL + static_cast<std::uint64_t>(id)); }

Index draw_index(Rng& rng, Index lo, Index hi) {
  std::uniform_int_distribution<Index> dist(lo, hi);
  return dist(rng);
}

double draw_real(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

std::vector<Pmf> random_bets(Rng& rng, Index n, Index d) {
  std::vector<Pmf> bets;
  for (Index k = 0; k < d; ++k) bets.push_back(oracle::random_pmf(rng, n));
  return bets;
}

std::vector<CondPmf> random_conditional_bets(Rng& rng, Index nx, Index ng, Index d) {
  std::vector<CondPmf> bets;
  for (Index k = 0; k < d; ++k) bets.push_back(CondPmf(oracle::random_kernel(rng, ng, nx).kernel()));
  return bets;
}

// Risk vector whose orders have α_0 as their maximum (all R_k ≤ 2 in case (i)).
RiskVector pivot_zero_risk(Rng& rng, Index d) {
  while (true) {
    RiskVector risk = oracle::random_risk(rng, d);
    const OrderVector orders = risk_to_orders(risk);
    if (orders[0] == orders.max_order()) return risk;
  }
}

OrderVector pivot_zero_orders(Rng& rng, Index d) { return risk_to_orders(pivot_zero_risk(rng, d)); }

bool is_case_ii(const RiskVector& risk) { return risk[0] < 1.0; }

CheckResult finish(int id, const std::string& name, bool passed, const std::ostringstream& detail,
                   const Timer& timer, double budget) {
  const double secs = timer.seconds();
  std::ostringstream out;
  out << detail.str() << "; " << std::setprecision(3) << secs << " s (budget " << budget << " s)";
  return CheckResult{id, name, passed && secs < budget, out.str(), secs};
}

std::ostringstream make_detail() {
  std::ostringstream s;
  s.precision(3);
  return s;
}

// Random ensemble and measurement on a classical model with n states.
struct GptInstance {
  GptModel model;
  StateEnsemble ensemble;
  Measurement measurement;
};

GptInstance random_classical_instance(Rng& rng) {
  const Index n = draw_index(rng, 2, 4);
  const Index nx = draw_index(rng, 2, 4);
  const Index na = draw_index(rng, 2, 4);
  GptModel model = GptModel::build_classical(n);
  std::vector<Vector> states;
  for (Index x = 0; x < nx; ++x) states.push_back(oracle::random_pmf(rng, n).mass());
  StateEnsemble ensemble(model, oracle::random_pmf(rng, nx), std::move(states));
  // m_a(i) = K(a|i) for a random response kernel K.
  const Matrix k = oracle::random_kernel(rng, n, na).kernel();
  std::vector<Vector> effects;
  for (Index a = 0; a < na; ++a) effects.push_back(k.row(a).transpose());
  Measurement m(model, std::move(effects));
  return GptInstance{std::move(model), std::move(ensemble), std::move(m)};
}

GptInstance random_qubit_instance(Rng& rng) {
  const Index nx = draw_index(rng, 2, 4);
  const Index na = draw_index(rng, 2, 4);
  GptModel model = GptModel::build_quantum(2);
  std::vector<Vector> states;
  for (Index x = 0; x < nx; ++x) states.push_back(model.state_from_density(oracle::random_density(rng, 2)));
  StateEnsemble ensemble(model, oracle::random_pmf(rng, nx), std::move(states));
  std::vector<Vector> effects;
  for (const auto& e : oracle::random_povm(rng, 2, na)) effects.push_back(model.effect_from_operator(e));
  Measurement m(model, std::move(effects));
  return GptInstance{std::move(model), std::move(ensemble), std::move(m)};
}

struct Worst {
  double value = 0.0;
  void track(double v) { value = std::max(value, v); }
};

}  // namespace

QubitFixture qubit_fixture() {
  GptModel model = GptModel::build_quantum(2);
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  ComplexMatrix one = ComplexMatrix::Zero(2, 2);
  one(1, 1) = 1.0;
  ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
  StateEnsemble ensemble(model, Pmf(Vector::Constant(2, 0.5)),
                         {model.state_from_density(zero), model.state_from_density(plus)});
  Measurement z(model, {model.effect_from_operator(zero), model.effect_from_operator(one)});
  return QubitFixture{std::move(model), std::move(z), std::move(ensemble)};
}

// 1. Exact decomposition of the unconditional certainty equivalent.
CheckResult check_decomposition_identity(const SuiteOptions& opts) {
  Timer timer;
  Rng rng = suite_rng(opts, 1);
  Worst gap;
  int case_i = 0;
  int case_ii = 0;
  for (int i = 0; i < 500; ++i) {
    const Index n = draw_index(rng, 2, 4);
    const Index d = draw_index(rng, 1, 3);
    const Pmf p0 = oracle::random_pmf(rng, n);
    const OddsProfile odds = oracle::random_odds(rng, n, d);
    const RiskVector risk = oracle::random_risk(rng, d);
    const auto bets = random_bets(rng, n, d);
    const auto rep = decompose_ice(p0, odds, bets, risk);
    gap.track(std::abs(rep.log_ice - rep.recomposed()));
    (is_case_ii(risk) ? case_ii : case_i)++;
  }
  auto detail = make_detail();
  detail << "500 instances (" << case_i << " case i, " << case_ii << " case ii), max |log ICE - recomposed| = "
         << gap.value << " (tol 1e-9)";
  return finish(1, "decomposition identity", gap.value <= kIdentityTol && case_i > 0 && case_ii > 0, detail,
                timer, 10.0);
}

// 2. Closed-form optima against the lattice + Dirichlet search.
CheckResult check_optimality(const SuiteOptions& opts) {
  Timer timer;
  Rng rng = suite_rng(opts, 2);
  oracle::OracleConfig cfg;
  cfg.dirichlet_samples = opts.dirichlet_samples;
  double worst_beaten = -std::numeric_limits<double>::infinity();  // oracle - closed
  Worst recovery;                                                   // |oracle - closed|
  Worst conditional_recovery;
  double worst_cond_beaten = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const Index n = draw_index(rng, 2, 4);
    const Index d = draw_index(rng, 1, 3);
    const Pmf p0 = oracle::random_pmf(rng, n);
    const OddsProfile odds = oracle::random_odds(rng, n, d);
    const RiskVector risk = oracle::random_risk(rng, d);
    cfg.seed = opts.seed + static_cast<std::uint64_t>(i);
    const auto closed = optimal_bets_unconditional(p0, odds, risk);
    const auto found = oracle::brute_force_optimal_bets(p0, odds, risk, cfg);
    worst_beaten = std::max(worst_beaten, found.log_ice - closed.max_log_ice);
    recovery.track(std::abs(found.log_ice - closed.max_log_ice));
  }
  for (int i = 0; i < 100; ++i) {
    const Index nx = draw_index(rng, 2, 4);
    const Index ng = draw_index(rng, 2, 3);
    const Index d = draw_index(rng, 1, 3);
    const JointPmf p0 = oracle::random_joint(rng, nx, ng);
    const OddsProfile odds = oracle::random_odds(rng, nx, d);
    const RiskVector risk = oracle::random_risk(rng, d);
    cfg.seed = opts.seed + 1000 + static_cast<std::uint64_t>(i);
    const auto closed = optimal_bets_conditional(p0, odds, risk);
    const auto found = oracle::brute_force_optimal_bets(p0, odds, risk, cfg);
    worst_cond_beaten = std::max(worst_cond_beaten, found.log_ice - closed.max_log_ice);
    conditional_recovery.track(std::abs(found.log_ice - closed.max_log_ice));
  }
  auto detail = make_detail();
  detail << "unconditional: max(oracle - closed) = " << worst_beaten << ", max gap = " << recovery.value
         << "; conditional: max(oracle - closed) = " << worst_cond_beaten
         << ", max gap = " << conditional_recovery.value << " (tol 1e-6 / 1e-4)";
  const bool ok = worst_beaten <= 1e-6 && recovery.value <= 1e-4 && worst_cond_beaten <= 1e-6 &&
                  conditional_recovery.value <= 1e-4;
  return finish(2, "optimality vs search oracle", ok, detail, timer, 60.0);
}

// 3. Fixtures, first from the 50-digit evaluator, then from the library.
CheckResult check_fixtures(const SuiteOptions&) {
  Timer timer;
  struct Row {
    std::string name;
    double expected;
    double reference;
    double library;
  };
  std::vector<Row> rows;

  {
    const std::vector<double> alphas{2.0, -1.0};
    const double reference = oracle::hp_renyi_multivariate(alphas, {{"0.75", "0.25"}, {"0.5", "0.5"}});
    const double library = renyi_bivariate(2.0, Pmf(Vector{{0.75, 0.25}}), Pmf(Vector{{0.5, 0.5}}));
    rows.push_back({"D_2((0.75,0.25)||(0.5,0.5))", 0.223144, reference, library});
  }
  {
    const std::vector<double> alphas{0.5, 0.25, 0.25};
    const double reference =
        oracle::hp_renyi_multivariate(alphas, {{"0.75", "0.25"}, {"0.5", "0.5"}, {"0.5", "0.5"}});
    const Pmf p0(Vector{{0.75, 0.25}});
    const Pmf u(Vector{{0.5, 0.5}});
    const std::vector<Pmf> pmfs{p0, u, u};
    const double library = renyi_multivariate(OrderVector(alphas), pmfs);
    rows.push_back({"D_(0.5,0.25,0.25)", 0.069336, reference, library});
  }
  {
    const std::vector<double> alphas{0.5, 0.5};
    const double reference = oracle::hp_renyi_conditional(
        alphas, 0.5, {{{"2/3", "1/3"}, {"0", "1"}}, {{"0.5", "0.5"}, {"0.5", "0.5"}}}, {"0.75", "0.25"});
    // Library route: the qubit state-betting game at R = 2 with fair odds.
    const auto fx = qubit_fixture();
    const Pmf u(Vector{{0.5, 0.5}});
    const std::vector<Pmf> refs{u};
    const double monotone = informativeness_monotone(fx.measurement, fx.ensemble, refs, OrderVector(alphas));
    const double sb = sb_optimal_log_ice(fx.measurement, fx.ensemble, OddsProfile::fair(refs), RiskVector({2.0}));
    if (std::abs(monotone - sb) > 1e-12) {
      rows.push_back({"qubit monotone vs optimal log-ICE", 0.0, 0.0, monotone - sb});
    }
    rows.push_back({"qubit conditional divergence", 0.158358, reference, monotone});
  }

  bool ok = true;
  auto detail = make_detail();
  detail.precision(10);
  for (const auto& r : rows) {
    const bool ref_ok = std::abs(r.reference - r.expected) <= 1e-6;
    const bool lib_ok = std::abs(r.library - r.expected) <= 1e-6;
    ok = ok && ref_ok && lib_ok;
    detail << r.name << ": expected " << r.expected << ", oracle " << r.reference << (ref_ok ? "" : " [MISMATCH]")
           << ", library " << r.library << (lib_ok ? "" : " [MISMATCH]") << "; ";
  }
  std::string text = detail.str();
  text.resize(text.size() - 2);
  std::ostringstream trimmed;
  trimmed << text;
  return finish(3, "fixture agreement", ok, trimmed, timer, 10.0);
}

// 4. Data processing inequalities.
CheckResult check_dpi(const SuiteOptions& opts) {
  Timer timer;
  Rng rng = suite_rng(opts, 4);
  double worst_plain = std::numeric_limits<double>::infinity();
  double worst_tropical = std::numeric_limits<double>::infinity();
  double worst_main = std::numeric_limits<double>::infinity();
  double worst_cond = std::numeric_limits<double>::infinity();
  double worst_corollary = std::numeric_limits<double>::infinity();
  int failures = 0;

  for (int i = 0; i < 200; ++i) {
    const Index n = draw_index(rng, 2, 4);
    const Index m = draw_index(rng, 2, 4);
    const Index d = draw_index(rng, 1, 3);
    const OrderVector orders = oracle::random_orders(rng, d);
    std::vector<Pmf> pmfs;
    for (Index k = 0; k <= d; ++k) pmfs.push_back(oracle::random_pmf(rng, n));
    const StochasticOp op = oracle::random_kernel(rng, n, m);
    const auto rep = dpi_check(orders, pmfs, op);
    worst_plain = std::min(worst_plain, rep.before - rep.after);
    failures += rep.holds ? 0 : 1;

    std::vector<double> gammas(orders.alphas().begin() + 1, orders.alphas().end());
    Vector g = Eigen::Map<const Vector>(gammas.data(), d).cwiseAbs();
    g /= g.sum();
    const std::vector<double> weights(g.data(), g.data() + d);
    std::vector<Pmf> images;
    for (const auto& p : pmfs) images.push_back(apply_stochastic(op, p));
    worst_tropical = std::min(worst_tropical, tropical_limit(weights, pmfs) - tropical_limit(weights, images));
  }

  for (int i = 0; i < 200; ++i) {
    const Index nx = draw_index(rng, 2, 4);
    const Index ny = draw_index(rng, 2, 4);
    const Index ng = draw_index(rng, 2, 3);
    const Index d = draw_index(rng, 1, 3);
    const OrderVector orders = oracle::random_orders(rng, d);
    const double beta = std::exp(draw_real(rng, std::log(0.25), std::log(4.0)));
    std::vector<CondPmf> conds;
    for (Index k = 0; k <= d; ++k) conds.push_back(CondPmf(oracle::random_kernel(rng, ng, nx).kernel()));
    std::vector<StochasticOp> kernels;
    for (Index g = 0; g < ng; ++g) kernels.push_back(oracle::random_kernel(rng, nx, ny));
    const auto rep = main_system_dpi_check(orders, beta, conds, oracle::random_pmf(rng, ng), kernels);
    worst_main = std::min(worst_main, rep.before - rep.after);
    failures += rep.holds ? 0 : 1;
  }

  for (int i = 0; i < 200; ++i) {
    const Index nx = draw_index(rng, 2, 4);
    const Index ng = draw_index(rng, 2, 4);
    const Index nh = draw_index(rng, 2, 4);
    const Index d = draw_index(rng, 1, 3);
    const OrderVector orders = pivot_zero_orders(rng, d);
    const CondPmf p0(oracle::random_kernel(rng, ng, nx).kernel());
    std::vector<Pmf> refs;
    for (Index k = 0; k < d; ++k) refs.push_back(oracle::random_pmf(rng, nx));
    const auto rep = conditioning_dpi_check(orders, p0, refs, oracle::random_pmf(rng, ng),
                                            oracle::random_kernel(rng, ng, nh));
    worst_cond = std::min(worst_cond, rep.before - rep.after);
    worst_corollary = std::min(worst_corollary, rep.before - rep.unconditional);
    failures += (rep.holds && rep.corollary_holds) ? 0 : 1;
  }

  auto detail = make_detail();
  detail << "min slack: unconditional " << worst_plain << ", tropical " << worst_tropical << ", main system "
         << worst_main << ", conditioning system " << worst_cond << ", conditional vs unconditional "
         << worst_corollary << " (200 instances each, slack >= -1e-9)";
  const bool ok = failures == 0 && worst_plain >= -kInequalityTol && worst_tropical >= -kInequalityTol &&
                  worst_main >= -kInequalityTol && worst_cond >= -kInequalityTol &&
                  worst_corollary >= -kInequalityTol;
  return finish(4, "data processing inequalities", ok, detail, timer, 30.0);
}

// 5. Order-path monotonicity, KL limit and tropical dominance.
CheckResult check_order_sweep(const SuiteOptions& opts) {
  Timer timer;
  Rng rng = suite_rng(opts, 5);
  double worst_step = 0.0;
  Worst kl_error;
  double worst_dominance = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 20; ++i) {
    const Index n = draw_index(rng, 2, 4);
    const Index d = 2;
    std::vector<Pmf> pmfs;
    for (Index k = 0; k <= d; ++k) pmfs.push_back(oracle::random_pmf(rng, n));
    const Pmf gamma_pmf = oracle::random_pmf(rng, d);
    const std::vector<double> gammas(gamma_pmf.mass().data(), gamma_pmf.mass().data() + d);
    const double lambda_min = gamma_pmf.mass().maxCoeff() / (gamma_pmf.mass().maxCoeff() + 1.0);

    std::vector<double> grid;
    for (int j = 0; j < 25; ++j) grid.push_back(lambda_min + (0.99 - lambda_min) * j / 24.0);
    for (int j = 0; j < 25; ++j) grid.push_back(std::exp(std::log(1.01) + (std::log(50.0) - std::log(1.01)) * j / 24.0));
    const auto rows = sweep(gammas, pmfs, grid);
    for (size_t j = 1; j < rows.size(); ++j) {
      worst_step = std::min(worst_step, rows[j].divergence - rows[j - 1].divergence);
    }
    for (const auto& r : rows) worst_dominance = std::min(worst_dominance, r.tropical_limit - r.divergence);

    // Symmetric extrapolation to λ = 1 from both sides.
    const double h = 1e-3;
    const std::vector<double> near{1.0 - h, 1.0 + h};
    const auto pair = sweep(gammas, pmfs, near);
    const double extrapolated = 0.5 * (pair[0].divergence + pair[1].divergence);
    kl_error.track(std::abs(extrapolated - kl_mixture_limit(gammas, pmfs)));
  }
  auto detail = make_detail();
  detail << "20 instances x 50 lambdas: worst step " << worst_step << " (>= -1e-10), KL extrapolation error "
         << kl_error.value << " (<= 1e-4), min(tropical - D) " << worst_dominance;
  const bool ok = worst_step >= -1e-10 && kl_error.value <= 1e-4 && worst_dominance >= -kInequalityTol;
  return finish(5, "order-path monotonicity", ok, detail, timer, 30.0);
}

// 6. Analytic certainty equivalent against utility inversion by sampling.
CheckResult check_monte_carlo(const SuiteOptions& opts) {
  Timer timer;
  Rng rng = suite_rng(opts, 6);
  oracle::OracleConfig cfg;
  cfg.mc_samples = opts.mc_samples;
  double worst_z = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Index n = draw_index(rng, 2, 4);
    const Index d = draw_index(rng, 1, 3);
    const OddsProfile odds = oracle::random_odds(rng, n, d);
    const RiskVector risk = oracle::random_risk(rng, d);
    cfg.seed = opts.seed + 77 + static_cast<std::uint64_t>(i);
    double analytic = 0.0;
    oracle::MonteCarloEstimate mc{};
    if (i % 2 == 0) {
      const Pmf p0 = oracle::random_pmf(rng, n);
      const auto bets = random_bets(rng, n, d);
      analytic = multi_ice_unconditional(p0, odds, bets, risk);
      mc = oracle::monte_carlo_ice(p0, odds, bets, risk, cfg);
    } else {
      const Index ng = draw_index(rng, 2, 3);
      const JointPmf p0 = oracle::random_joint(rng, n, ng);
      const auto bets = random_conditional_bets(rng, n, ng, d);
      analytic = multi_ice_conditional(p0, odds, bets, risk);
      mc = oracle::monte_carlo_ice(p0, odds, bets, risk, cfg);
    }
    const double z = mc.stderr_ > 0.0 ? std::abs(analytic - mc.estimate) / mc.stderr_
                                      : (analytic == mc.estimate ? 0.0 : std::numeric_limits<double>::infinity());
    worst_z = std::max(worst_z, z);
  }
  auto detail = make_detail();
  detail << "20 instances, " << opts.mc_samples << " samples each: max |analytic - MC| / stderr = " << worst_z
         << " (<= 4)";
  return finish(6, "Monte-Carlo certainty equivalent", worst_z <= 4.0, detail, timer, 120.0);
}

// 7. Informativeness monotone: nonnegative, zero on uninformative
// measurements, non-increasing under postprocessing.
CheckResult check_resource_axioms(const SuiteOptions& opts) {
  Timer timer;
  Rng rng = suite_rng(opts, 7);
  double min_value = std::numeric_limits<double>::infinity();
  Worst free_value;
  double worst_monotonicity = std::numeric_limits<double>::infinity();
  Worst ratio_error;
  Worst eta_error;
  int models_checked = 0;
  for (int model_kind = 0; model_kind < 2; ++model_kind) {
    for (int i = 0; i < 200; ++i) {
      GptInstance inst = model_kind == 0 ? random_classical_instance(rng) : random_qubit_instance(rng);
      const Index nx = inst.ensemble.prior().size();
      const Index d = draw_index(rng, 1, 2);
      const RiskVector risk = pivot_zero_risk(rng, d);
      const OrderVector orders = risk_to_orders(risk);
      const OddsProfile odds = oracle::random_odds(rng, nx, d);
      const auto refs = odds.induced_pmfs();

      const double value = informativeness_monotone(inst.measurement, inst.ensemble, refs, orders);
      min_value = std::min(min_value, value);

      const Measurement processed = postprocess_measurement(
          inst.model, inst.measurement, oracle::random_kernel(rng, inst.measurement.size(), draw_index(rng, 1, 4)));
      worst_monotonicity = std::min(
          worst_monotonicity, value - informativeness_monotone(processed, inst.ensemble, refs, orders));

      const Measurement free = uninformative(oracle::random_pmf(rng, draw_index(rng, 1, 4)), inst.model);
      free_value.track(std::abs(informativeness_monotone(free, inst.ensemble, refs, orders)));

      const double ratio = advantage_ratio(inst.model, inst.measurement, inst.ensemble, odds, risk);
      ratio_error.track(std::abs(std::log(ratio) - value));
      const double other = advantage_ratio(inst.model, inst.measurement, inst.ensemble, odds, risk,
                                           oracle::random_pmf(rng, 3));
      eta_error.track(std::abs(std::log(other) - std::log(ratio)));
      ++models_checked;
    }
  }
  auto detail = make_detail();
  detail << models_checked << " classical+qubit instances: min monotone " << min_value << ", max on free set "
         << free_value.value << ", min(D(M) - D(T(M))) " << worst_monotonicity << ", |log ratio - monotone| "
         << ratio_error.value << ", eta dependence " << eta_error.value;
  const bool ok = min_value >= -kInequalityTol && free_value.value <= 1e-9 &&
                  worst_monotonicity >= -kInequalityTol && ratio_error.value <= 1e-9 && eta_error.value <= 1e-9;
  return finish(7, "resource-measure axioms", ok, detail, timer, 60.0);
}

// 8. Risk-neutral state betting reduces to state discrimination.
CheckResult check_sd_reduction(const SuiteOptions& opts) {
  Timer timer;
  Rng rng = suite_rng(opts, 8);
  const auto fx = qubit_fixture();
  const OddsProfile constant2({Vector::Constant(2, 2.0)});
  const double fixture_sd = sd_success(fx.measurement, fx.ensemble);
  const double fixture_ce = sb_risk_neutral_optimal_ce(fx.measurement, fx.ensemble, constant2);
  const double fixture_oracle =
      oracle::exhaustive_risk_neutral_ce(outcome_joint(fx.measurement, fx.ensemble).mass(), constant2.odds(0));
  Worst fixture_error;
  fixture_error.track(std::abs(2.0 * fixture_sd - fixture_ce));
  fixture_error.track(std::abs(fixture_ce - 1.5));
  fixture_error.track(std::abs(fixture_oracle - fixture_ce));

  Worst random_error;
  for (int i = 0; i < 50; ++i) {
    GptInstance inst = i % 2 == 0 ? random_classical_instance(rng) : random_qubit_instance(rng);
    const double c = draw_real(rng, 1.0, 4.0);
    const OddsProfile odds({Vector::Constant(inst.ensemble.prior().size(), c)});
    const double sd = sd_success(inst.measurement, inst.ensemble);
    const double ce = sb_risk_neutral_optimal_ce(inst.measurement, inst.ensemble, odds);
    const double brute =
        oracle::exhaustive_risk_neutral_ce(outcome_joint(inst.measurement, inst.ensemble).mass(), odds.odds(0));
    random_error.track(std::abs(c * sd - ce));
    random_error.track(std::abs(brute - ce));
  }
  auto detail = make_detail();
  detail.precision(12);
  detail << "qubit fixture: 2*sd = " << 2.0 * fixture_sd << ", optimal CE = " << fixture_ce << ", exhaustive "
         << fixture_oracle;
  detail.precision(3);
  detail << "; 50 random instances max error " << random_error.value << " (tol 1e-9)";
  const bool ok = fixture_error.value <= 1e-9 && random_error.value <= 1e-9;
  return finish(8, "state-discrimination reduction", ok, detail, timer, 30.0);
}

// 9. Side information never hurts.
CheckResult check_side_information(const SuiteOptions& opts) {
  Timer timer;
  Rng rng = suite_rng(opts, 9);
  double min_gain = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 500; ++i) {
    const Index nx = draw_index(rng, 2, 4);
    const Index ng = draw_index(rng, 2, 4);
    const Index d = draw_index(rng, 1, 3);
    const JointPmf joint = oracle::random_joint(rng, nx, ng);
    min_gain = std::min(min_gain, side_info_gain(joint, oracle::random_odds(rng, nx, d), oracle::random_risk(rng, d)));
  }
  const double eps = 1e-6;
  Matrix correlated = Matrix::Constant(2, 2, eps);
  correlated.diagonal().array() += 0.5;
  correlated /= correlated.sum();
  const OddsProfile fair2({Vector::Constant(2, 2.0)});
  const double fixture_gain = side_info_gain(JointPmf(correlated), fair2, RiskVector({2.0}));
  auto detail = make_detail();
  detail << "500 random joints: min gain " << min_gain << " (>= -1e-9); correlated fixture gain " << fixture_gain
         << " (> 1e-3)";
  return finish(9, "side-information gain", min_gain >= -kInequalityTol && fixture_gain > 1e-3, detail, timer, 30.0);
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {1, "decomposition identity", check_decomposition_identity},
      {2, "optimality vs search oracle", check_optimality},
      {3, "fixture agreement", check_fixtures},
      {4, "data processing inequalities", check_dpi},
      {5, "order-path monotonicity", check_order_sweep},
      {6, "Monte-Carlo certainty equivalent", check_monte_carlo},
      {7, "resource-measure axioms", check_resource_axioms},
      {8, "state-discrimination reduction", check_sd_reduction},
      {9, "side-information gain", check_side_information},
  };
  return all;
}

std::vector<CheckResult> run_all(const SuiteOptions& opts, const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> results;
  for (const auto& s : suites()) {
    CheckResult r;
    try {
      r = s.run(opts);
    } catch (const std::exception& e) {
      r = CheckResult{s.id, s.name, false, std::string("exception: ") + e.what(), 0.0};
    }
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace renyibet::verify
