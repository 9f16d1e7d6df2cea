#include "renyibet/betting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace renyibet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_game(const OddsProfile& odds, const RiskVector& risk, Index outcomes) {
  if (odds.lotteries() != risk.size()) {
    throw ValidationError("odds and risk vector disagree on the number of lotteries");
  }
  if (odds.outcomes() != outcomes) {
    throw ValidationError("odds and PMF disagree on the outcome set");
  }
}

// Partial sums A_k = α_0 + … + α_k.
std::vector<double> partial_order_sums(const OrderVector& orders) {
  std::vector<double> sums(static_cast<size_t>(orders.size()));
  double acc = 0.0;
  for (Index k = 0; k < orders.size(); ++k) {
    acc += orders[k];
    sums[static_cast<size_t>(k)] = acc;
  }
  return sums;
}

// Unnormalized log-weights of the k-th cascade target for one column of
// main-system masses:
//   α_0 log p(x) - Σ_{l≤k} α_l log o_l(x) - Σ_{m>k} α_m log(b_m(x) o_m(x)).
// `bet_column(m)` returns the bet vector of lottery m (1-based).
template <typename BetColumn>
Vector cascade_log_weights(const OrderVector& orders, const OddsProfile& odds, const Vector& main,
                           Index k, BetColumn&& bet_column) {
  const Index d = orders.lotteries();
  Vector w(main.size());
  for (Index x = 0; x < main.size(); ++x) {
    if (main(x) <= 0.0) {
      w(x) = -kInf;
      continue;
    }
    double v = orders[0] * std::log(main(x));
    for (Index l = 1; l <= d; ++l) {
      const double log_odds = std::log(odds.odds(l - 1)(x));
      if (l <= k) {
        v -= orders[l] * log_odds;
      } else {
        v -= orders[l] * (std::log(bet_column(l)(x)) + log_odds);
      }
    }
    w(x) = v;
  }
  return w;
}

struct NormalizedTarget {
  Vector mass;
  double log_constant;  // log of the normalizer c_k
};

NormalizedTarget normalize_exponent(const Vector& log_weights, double partial_sum) {
  const Vector scaled = log_weights / partial_sum;
  const double lc = log_sum_exp(scaled);
  Vector mass = (scaled.array() - lc).exp().matrix();
  return NormalizedTarget{std::move(mass), lc};
}

std::vector<double> fairness_terms(const OrderVector& orders, const OddsProfile& odds) {
  std::vector<double> out;
  for (Index k = 1; k <= orders.lotteries(); ++k) {
    out.push_back(orders[k] / (orders[0] - 1.0) * std::log(odds.fairness(k - 1)));
  }
  return out;
}

std::optional<double> default_pivot_or_empty(const std::function<double()>& eval) {
  try {
    return eval();
  } catch (const SingularityError&) {
    return std::nullopt;
  }
}

// Optimal per-column bets by backward recursion; all targets share the
// main-system column `main`.
std::vector<Vector> backward_recursion(const OrderVector& orders, const OddsProfile& odds,
                                       const Vector& main) {
  const Index d = orders.lotteries();
  const auto sums = partial_order_sums(orders);
  std::vector<Vector> bets(static_cast<size_t>(d));
  for (Index k = d; k >= 1; --k) {
    const Vector w = cascade_log_weights(orders, odds, main, k,
                                         [&](Index m) -> const Vector& { return bets[static_cast<size_t>(m - 1)]; });
    bets[static_cast<size_t>(k - 1)] = normalize_exponent(w, sums[static_cast<size_t>(k)]).mass;
  }
  return bets;
}

// Bets are checked for strict positivity rather than the 1e-12 support
// floor: optimal bets on rare outcomes can be far smaller than that.
template <typename Derived>
bool strictly_positive(const Eigen::MatrixBase<Derived>& m) {
  return (m.array() > 0.0).all();
}

std::vector<Index> positive_columns(const Vector& pg) {
  std::vector<Index> idx;
  for (Index g = 0; g < pg.size(); ++g) {
    if (pg(g) > 0.0) idx.push_back(g);
  }
  return idx;
}

}  // namespace

// --- risk vectors ---------------------------------------------------------

RiskVector::RiskVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("risk vector is empty");
  const double d = static_cast<double>(values_.size());
  double total = 0.0;
  bool all_ge_one = true;
  bool all_open_unit = true;
  for (double r : values_) {
    if (!std::isfinite(r) || r < 0.0) throw ValidationError("risk-aversion values must be finite and >= 0");
    total += r;
    all_ge_one = all_ge_one && r >= 1.0;
    all_open_unit = all_open_unit && r > 0.0 && r < 1.0;
  }
  if (all_ge_one) {
    if (std::all_of(values_.begin(), values_.end(), [](double r) { return r == 1.0; })) {
      throw SingularityError(
          "risk vector with sum(1-R_k) = 0 (all R_k = 1) is the excluded logarithmic limit; use R_k = 1+eps");
    }
    return;
  }
  if (all_open_unit && total > d - 1.0) return;
  throw ValidationError(
      "inadmissible risk vector: need all R_k >= 1, or all 0 < R_k < 1 with sum R_k > d-1");
}

double RiskVector::exponent_sum() const {
  double s = 0.0;
  for (double r : values_) s += 1.0 - r;
  return s;
}

OrderVector risk_to_orders(const RiskVector& risk) {
  double excess = 0.0;
  for (double r : risk.values()) excess += r - 1.0;
  const double a0 = 1.0 / (1.0 + excess);
  std::vector<double> alphas{a0};
  for (double r : risk.values()) alphas.push_back((r - 1.0) * a0);
  return OrderVector(std::move(alphas));
}

RiskVector orders_to_risk(const OrderVector& orders) {
  if (orders.size() < 2) throw ValidationError("orders_to_risk: need at least one lottery");
  std::vector<double> risk;
  for (Index k = 1; k < orders.size(); ++k) risk.push_back(1.0 + orders[k] / orders[0]);
  return RiskVector(std::move(risk));
}

double isoelastic_utility(double R, double w) {
  if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("isoelastic_utility: wealth must be positive");
  if (R == 1.0) return std::log(w);
  return std::pow(w, 1.0 - R) / (1.0 - R);
}

double multi_isoelastic_utility(const RiskVector& risk, std::span<const double> wealth) {
  if (static_cast<Index>(wealth.size()) != risk.size()) {
    throw ValidationError("multi_isoelastic_utility: one wealth per lottery");
  }
  double u = 1.0;
  for (Index k = 0; k < risk.size(); ++k) {
    const double w = wealth[static_cast<size_t>(k)];
    if (!(w > 0.0)) throw ValidationError("multi_isoelastic_utility: wealth must be positive");
    const double e = 1.0 - risk[k];
    if (e == 0.0) return 0.0;
    u *= std::pow(w, e) / e;
  }
  return u;
}

// --- odds -----------------------------------------------------------------

OddsProfile::OddsProfile(std::vector<Vector> odds) : odds_(std::move(odds)) {
  if (odds_.empty()) throw ValidationError("odds profile is empty");
  const Index n = odds_.front().size();
  if (n == 0) throw ValidationError("odds profile has no outcomes");
  for (const auto& o : odds_) {
    if (o.size() != n) throw ValidationError("odds functions must share one outcome set");
    for (Index x = 0; x < n; ++x) {
      if (!std::isfinite(o(x)) || !(o(x) > 0.0)) {
        throw ValidationError("odds must be strictly positive and finite");
      }
    }
  }
}

OddsProfile OddsProfile::fair(std::span<const Pmf> references) {
  std::vector<Vector> odds;
  for (const auto& p : references) {
    if (!p.full_support()) throw ValidationError("fair odds need full-support reference PMFs");
    odds.push_back(p.mass().cwiseInverse());
  }
  return OddsProfile(std::move(odds));
}

double OddsProfile::fairness(Index k) const { return odds(k).cwiseInverse().sum(); }

Fairness OddsProfile::classify(Index k) const {
  const double f = fairness(k);
  if (std::abs(f - 1.0) <= kNormTolerance) return Fairness::Fair;
  return f > 1.0 ? Fairness::SubFair : Fairness::SuperFair;
}

Pmf OddsProfile::induced_pmf(Index k) const {
  const Vector inv = odds(k).cwiseInverse();
  return Pmf(inv / inv.sum());
}

std::vector<Pmf> OddsProfile::induced_pmfs() const {
  std::vector<Pmf> out;
  for (Index k = 0; k < lotteries(); ++k) out.push_back(induced_pmf(k));
  return out;
}

OddsProfile OddsProfile::scaled(std::span<const double> factors) const {
  if (static_cast<Index>(factors.size()) != lotteries()) throw ValidationError("one factor per lottery");
  std::vector<Vector> out = odds_;
  for (size_t k = 0; k < out.size(); ++k) out[k] *= factors[k];
  return OddsProfile(std::move(out));
}

// --- bets -----------------------------------------------------------------

void check_bets(std::span<const Pmf> bets, Index outcomes, Index lotteries) {
  if (static_cast<Index>(bets.size()) != lotteries) throw ValidationError("need one bet per lottery");
  for (const auto& b : bets) {
    if (b.size() != outcomes) throw ValidationError("bet and game disagree on the outcome set");
    if (!strictly_positive(b.mass())) throw ValidationError("bets must have full support");
  }
}

void check_conditional_bets(std::span<const CondPmf> bets, Index outcomes, Index conditions,
                            Index lotteries) {
  if (static_cast<Index>(bets.size()) != lotteries) throw ValidationError("need one bet per lottery");
  for (const auto& b : bets) {
    if (b.outcomes_size() != outcomes || b.conditions_size() != conditions) {
      throw ValidationError("conditional bet and game disagree on alphabets");
    }
    if (!strictly_positive(b.mass())) throw ValidationError("bets must have full support");
  }
}

// --- certainty equivalents -------------------------------------------------

double log_multi_ice_unconditional(const Pmf& p0, const OddsProfile& odds, std::span<const Pmf> bets,
                                   const RiskVector& risk) {
  check_game(odds, risk, p0.size());
  check_bets(bets, p0.size(), risk.size());
  Vector terms(p0.size());
  for (Index x = 0; x < p0.size(); ++x) {
    if (p0(x) <= 0.0) {
      terms(x) = -kInf;
      continue;
    }
    double v = std::log(p0(x));
    for (Index k = 0; k < risk.size(); ++k) {
      v += (1.0 - risk[k]) * (std::log(bets[static_cast<size_t>(k)](x)) + std::log(odds.odds(k)(x)));
    }
    terms(x) = v;
  }
  return log_sum_exp(terms) / risk.exponent_sum();
}

double multi_ice_unconditional(const Pmf& p0, const OddsProfile& odds, std::span<const Pmf> bets,
                               const RiskVector& risk) {
  return std::exp(log_multi_ice_unconditional(p0, odds, bets, risk));
}

double log_multi_ice_conditional(const JointPmf& p0, const OddsProfile& odds,
                                 std::span<const CondPmf> bets, const RiskVector& risk) {
  check_game(odds, risk, p0.outcomes_size());
  if (static_cast<Index>(bets.size()) != risk.size()) throw ValidationError("need one bet per lottery");
  const Index nx = p0.outcomes_size();
  const Index ng = p0.conditions_size();
  for (const auto& b : bets) {
    if (b.outcomes_size() != nx || b.conditions_size() != ng) {
      throw ValidationError("conditional bet and game disagree on alphabets");
    }
  }
  const Vector pg = p0.mass().colwise().sum().transpose();
  Vector terms(nx * ng);
  for (Index g = 0; g < ng; ++g) {
    for (Index x = 0; x < nx; ++x) {
      if (pg(g) > 0.0) {
        for (const auto& b : bets) {
          if (!(b(x, g) > 0.0)) throw ValidationError("bets must have full support");
        }
      }
      const Index i = g * nx + x;
      if (p0(x, g) <= 0.0) {
        terms(i) = -kInf;
        continue;
      }
      double v = std::log(p0(x, g));
      for (Index k = 0; k < risk.size(); ++k) {
        v += (1.0 - risk[k]) * (std::log(bets[static_cast<size_t>(k)](x, g)) + std::log(odds.odds(k)(x)));
      }
      terms(i) = v;
    }
  }
  return log_sum_exp(terms) / risk.exponent_sum();
}

double multi_ice_conditional(const JointPmf& p0, const OddsProfile& odds, std::span<const CondPmf> bets,
                             const RiskVector& risk) {
  return std::exp(log_multi_ice_conditional(p0, odds, bets, risk));
}

// --- decompositions -------------------------------------------------------

double DecompositionTerms::recomposed() const {
  double total = divergence_term;
  for (size_t k = 0; k < penalties.size(); ++k) {
    total += penalties[k].coefficient * penalties[k].penalty + fairness_terms[k];
  }
  return total;
}

DecompositionReport decompose_ice(const Pmf& p0, const OddsProfile& odds, std::span<const Pmf> bets,
                                  const RiskVector& risk) {
  check_game(odds, risk, p0.size());
  if (static_cast<Index>(bets.size()) != risk.size()) throw ValidationError("need one bet per lottery");
  for (const auto& b : bets) {
    if (b.size() != p0.size()) throw ValidationError("bet and game disagree on the outcome set");
    if (!strictly_positive(b.mass())) {
      throw SingularityError("decompose_ice: a bet has zero mass, the peeling cascade is singular");
    }
  }
  const OrderVector orders = risk_to_orders(risk);
  const Index d = orders.lotteries();
  const auto sums = partial_order_sums(orders);

  DecompositionReport rep;
  rep.log_ice = log_multi_ice_unconditional(p0, odds, bets, risk);

  std::vector<Pmf> all{p0};
  for (const auto& p : odds.induced_pmfs()) all.push_back(p);
  rep.divergence_term = renyi_multivariate(orders, all, Index{0});
  rep.divergence_term_default_pivot = default_pivot_or_empty([&] { return renyi_multivariate(orders, all); });
  rep.fairness_terms = fairness_terms(orders, odds);

  for (Index k = 1; k <= d; ++k) {
    const Vector w = cascade_log_weights(orders, odds, p0.mass(), k,
                                         [&](Index m) -> const Vector& { return bets[static_cast<size_t>(m - 1)].mass(); });
    auto target = normalize_exponent(w, sums[static_cast<size_t>(k)]);
    const double order = sums[static_cast<size_t>(k)] / sums[static_cast<size_t>(k - 1)];
    Pmf q(p0.outcomes(), std::move(target.mass));
    const double penalty = renyi_bivariate(order, q, bets[static_cast<size_t>(k - 1)]);
    rep.penalties.push_back(PenaltyTerm{order, orders[k] / (orders[0] - 1.0), penalty, target.log_constant});
    rep.targets.push_back(std::move(q));
  }
  for (auto& b : backward_recursion(orders, odds, p0.mass())) rep.optimal_bets.emplace_back(p0.outcomes(), std::move(b));
  return rep;
}

ConditionalDecompositionReport decompose_ice_conditional(const JointPmf& p0, const OddsProfile& odds,
                                                         std::span<const CondPmf> bets,
                                                         const RiskVector& risk) {
  check_game(odds, risk, p0.outcomes_size());
  const Index nx = p0.outcomes_size();
  const Index ng = p0.conditions_size();
  if (static_cast<Index>(bets.size()) != risk.size()) throw ValidationError("need one bet per lottery");
  const Vector pg_full = p0.mass().colwise().sum().transpose();
  const std::vector<Index> support = positive_columns(pg_full);
  for (const auto& b : bets) {
    if (b.outcomes_size() != nx || b.conditions_size() != ng) {
      throw ValidationError("conditional bet and game disagree on alphabets");
    }
    for (Index g : support) {
      if (!strictly_positive(b.mass().col(g))) {
        throw SingularityError("decompose_ice_conditional: a bet has zero mass, the peeling cascade is singular");
      }
    }
  }
  const OrderVector orders = risk_to_orders(risk);
  const Index d = orders.lotteries();
  const auto sums = partial_order_sums(orders);
  const Index ns = static_cast<Index>(support.size());

  // Restrict everything to the positive-probability conditioning outcomes.
  Matrix cond(nx, ns);
  Vector pg(ns);
  for (Index j = 0; j < ns; ++j) {
    const Index g = support[static_cast<size_t>(j)];
    pg(j) = pg_full(g);
    cond.col(j) = p0.mass().col(g) / pg_full(g);
  }
  Labels support_labels;
  for (Index g : support) support_labels.push_back(p0.conditions()[static_cast<size_t>(g)]);
  const Pmf p_g(support_labels, pg);

  ConditionalDecompositionReport rep;
  rep.support = support;
  rep.log_ice = log_multi_ice_conditional(p0, odds, bets, risk);

  std::vector<CondPmf> conds{CondPmf(p0.outcomes(), support_labels, cond)};
  for (const auto& p : odds.induced_pmfs()) conds.push_back(CondPmf::constant(p, ns));
  rep.divergence_term = renyi_conditional(orders, orders[0], conds, p_g, Index{0});
  rep.divergence_term_default_pivot =
      default_pivot_or_empty([&] { return renyi_conditional(orders, orders[0], conds, p_g); });
  rep.fairness_terms = fairness_terms(orders, odds);

  for (Index k = 1; k <= d; ++k) {
    const double a_k = sums[static_cast<size_t>(k)];
    Matrix q_cond(nx, ns);
    Vector log_c(ns);
    for (Index j = 0; j < ns; ++j) {
      const Index g = support[static_cast<size_t>(j)];
      const Vector w = cascade_log_weights(orders, odds, Vector(cond.col(j)), k, [&](Index m) -> Vector {
        return bets[static_cast<size_t>(m - 1)].mass().col(g);
      });
      auto target = normalize_exponent(w, a_k);
      q_cond.col(j) = target.mass;
      log_c(j) = target.log_constant;
    }
    // q_G(g) ∝ p_G(g) c_k(g)^{A_k/α_0}
    const Vector log_weights = pg.array().log().matrix() + (a_k / orders[0]) * log_c;
    const double log_constant = log_sum_exp(log_weights);
    const Vector q_g = (log_weights.array() - log_constant).exp().matrix();

    Matrix bet_restricted(nx, ns);
    for (Index j = 0; j < ns; ++j) bet_restricted.col(j) = bets[static_cast<size_t>(k - 1)].mass().col(support[static_cast<size_t>(j)]);
    const Matrix q_joint = q_cond * q_g.asDiagonal();
    const Matrix r_joint = bet_restricted * q_g.asDiagonal();
    const Pmf q_flat(Eigen::Map<const Vector>(q_joint.data(), q_joint.size()));
    const Pmf r_flat(Eigen::Map<const Vector>(r_joint.data(), r_joint.size()));

    const double order = a_k / sums[static_cast<size_t>(k - 1)];
    rep.penalties.push_back(PenaltyTerm{order, orders[k] / (orders[0] - 1.0), renyi_bivariate(order, q_flat, r_flat),
                                        log_constant});
    rep.targets.emplace_back(p0.outcomes(), support_labels, std::move(q_cond));
    rep.target_marginals.emplace_back(support_labels, q_g);
  }
  rep.optimal_bets = optimal_bets_conditional(p0, odds, risk).bets;
  return rep;
}

// --- optima ---------------------------------------------------------------

OptimalBets optimal_bets_unconditional(const Pmf& p0, const OddsProfile& odds, const RiskVector& risk) {
  check_game(odds, risk, p0.size());
  if (!p0.full_support()) throw ValidationError("optimal_bets_unconditional: p0 must have full support");
  const OrderVector orders = risk_to_orders(risk);
  OptimalBets out;
  for (auto& b : backward_recursion(orders, odds, p0.mass())) out.bets.emplace_back(p0.outcomes(), std::move(b));
  std::vector<Pmf> all{p0};
  for (const auto& p : odds.induced_pmfs()) all.push_back(p);
  out.max_log_ice = renyi_multivariate(orders, all, Index{0});
  for (double f : fairness_terms(orders, odds)) out.max_log_ice += f;
  return out;
}

ConditionalOptimalBets optimal_bets_conditional(const JointPmf& p0, const OddsProfile& odds,
                                                const RiskVector& risk) {
  check_game(odds, risk, p0.outcomes_size());
  const OrderVector orders = risk_to_orders(risk);
  const Index nx = p0.outcomes_size();
  const Index ng = p0.conditions_size();
  const Index d = orders.lotteries();
  const Vector pg_full = p0.mass().colwise().sum().transpose();
  const std::vector<Index> support = positive_columns(pg_full);

  std::vector<Matrix> bets(static_cast<size_t>(d), Matrix::Constant(nx, ng, 1.0 / static_cast<double>(nx)));
  for (Index g : support) {
    const Vector main = p0.mass().col(g) / pg_full(g);
    const auto column_bets = backward_recursion(orders, odds, main);
    for (Index k = 0; k < d; ++k) bets[static_cast<size_t>(k)].col(g) = column_bets[static_cast<size_t>(k)];
  }

  const Index ns = static_cast<Index>(support.size());
  Matrix cond(nx, ns);
  Vector pg(ns);
  for (Index j = 0; j < ns; ++j) {
    const Index g = support[static_cast<size_t>(j)];
    pg(j) = pg_full(g);
    cond.col(j) = p0.mass().col(g) / pg_full(g);
  }
  std::vector<CondPmf> conds{CondPmf(cond)};
  for (const auto& p : odds.induced_pmfs()) conds.push_back(CondPmf::constant(p, ns));

  ConditionalOptimalBets out;
  for (auto& b : bets) out.bets.emplace_back(p0.outcomes(), p0.conditions(), std::move(b));
  out.max_log_ice = renyi_conditional(orders, orders[0], conds, Pmf(pg), Index{0});
  for (double f : fairness_terms(orders, odds)) out.max_log_ice += f;
  return out;
}

double side_info_gain(const JointPmf& p0, const OddsProfile& odds, const RiskVector& risk) {
  const auto parts = marginals_and_conditionals(p0);
  const OrderVector orders = risk_to_orders(risk);
  std::vector<Pmf> all{parts.x_marginal};
  for (const auto& p : odds.induced_pmfs()) all.push_back(p);
  // Same closed form as optimal_bets_unconditional, without requiring a
  // full-support marginal.
  const auto fair = fairness_terms(orders, odds);
  const double unconditional =
      renyi_multivariate(orders, all, Index{0}) + std::accumulate(fair.begin(), fair.end(), 0.0);
  return optimal_bets_conditional(p0, odds, risk).max_log_ice - unconditional;
}

}  // namespace renyibet
