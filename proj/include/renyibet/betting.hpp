#pragma once

#include <optional>
#include <span>
#include <vector>

#include "renyibet/divergences.hpp"
#include "renyibet/prob.hpp"

namespace renyibet {

/// Risk-aversion vector (R_1, …, R_d). Admissible when either all R_k ≥ 1,
/// or all 0 < R_k < 1 with Σ R_k > d - 1. The Kelly corner Σ(1 - R_k) = 0 is
/// excluded because the certainty equivalent has no closed form there.
class RiskVector {
 public:
  explicit RiskVector(std::vector<double> values);

  Index size() const { return static_cast<Index>(values_.size()); }
  double operator[](Index k) const { return values_[static_cast<size_t>(k)]; }
  std::span<const double> values() const { return values_; }
  /// Σ_k (1 - R_k), the exponent that turns expected utility back into wealth.
  double exponent_sum() const;

 private:
  std::vector<double> values_;
};

/// α_0 = (1 + Σ(R_k - 1))^{-1}, α_k = (R_k - 1) α_0.
OrderVector risk_to_orders(const RiskVector& risk);
/// R_k = 1 + α_k / α_0.
RiskVector orders_to_risk(const OrderVector& orders);

/// w^{1-R}/(1-R), and log w at R = 1.
double isoelastic_utility(double R, double w);
/// Π_k w_k^{1-R_k}/(1-R_k). Zero whenever some R_k = 1.
double multi_isoelastic_utility(const RiskVector& risk, std::span<const double> wealth);

enum class Fairness { Fair, SubFair, SuperFair };

/// Odds functions o^{(1)}, …, o^{(d)} on a common outcome set, all strictly
/// positive and finite.
class OddsProfile {
 public:
  explicit OddsProfile(std::vector<Vector> odds);

  /// Fair odds o^{(k)} = 1 / p^{(k)}.
  static OddsProfile fair(std::span<const Pmf> references);

  Index lotteries() const { return static_cast<Index>(odds_.size()); }
  Index outcomes() const { return odds_.front().size(); }
  const Vector& odds(Index k) const { return odds_[static_cast<size_t>(k)]; }
  /// F^{(k)} = Σ_x 1/o^{(k)}(x).
  double fairness(Index k) const;
  Fairness classify(Index k) const;
  /// p^{(k)} = 1/(F^{(k)} o^{(k)}).
  Pmf induced_pmf(Index k) const;
  std::vector<Pmf> induced_pmfs() const;
  /// Every entry of lottery k multiplied by factors[k].
  OddsProfile scaled(std::span<const double> factors) const;

 private:
  std::vector<Vector> odds_;
};

/// Bets must be strictly positive; the certainty equivalent of a zero bet on
/// a reachable outcome is either 0 or undefined depending on R.
void check_bets(std::span<const Pmf> bets, Index outcomes, Index lotteries);
void check_conditional_bets(std::span<const CondPmf> bets, Index outcomes, Index conditions,
                            Index lotteries);

/// Isoelastic certainty equivalent of d simultaneous lotteries
///   (Σ_x p0(x) Π_k (b_k(x) o_k(x))^{1-R_k})^{1/Σ(1-R_k)}.
double multi_ice_unconditional(const Pmf& p0, const OddsProfile& odds, std::span<const Pmf> bets,
                               const RiskVector& risk);
double log_multi_ice_unconditional(const Pmf& p0, const OddsProfile& odds, std::span<const Pmf> bets,
                                   const RiskVector& risk);

/// Same game with side information: bets are b_k(x|g) and the sum runs over
/// (x, g) under the joint PMF.
double multi_ice_conditional(const JointPmf& p0, const OddsProfile& odds, std::span<const CondPmf> bets,
                             const RiskVector& risk);
double log_multi_ice_conditional(const JointPmf& p0, const OddsProfile& odds,
                                 std::span<const CondPmf> bets, const RiskVector& risk);

/// One lottery's share of the decomposition.
struct PenaltyTerm {
  double order;        ///< S_k = (α_0+…+α_k)/(α_0+…+α_{k-1})
  double coefficient;  ///< α_k/(α_0 - 1), never positive
  double penalty;      ///< D_{S_k}(target‖bet) ≥ 0
  double log_constant; ///< log C_k of the peeling cascade
};

struct DecompositionTerms {
  double log_ice = 0.0;
  /// Multivariate (or conditional) divergence with α_0 as pivot.
  double divergence_term = 0.0;
  /// The same divergence with the default max-order pivot. Differs from
  /// divergence_term when some α_k > α_0; empty when that pivot is singular.
  std::optional<double> divergence_term_default_pivot;
  std::vector<PenaltyTerm> penalties;
  /// (α_k/(α_0 - 1)) log F^{(k)}
  std::vector<double> fairness_terms;

  /// divergence_term + Σ_k (coefficient·penalty + fairness).
  double recomposed() const;
};

struct DecompositionReport : DecompositionTerms {
  /// q^{(k)}: the bet that zeroes penalty k given the later bets.
  std::vector<Pmf> targets;
  std::vector<Pmf> optimal_bets;
};

struct ConditionalDecompositionReport : DecompositionTerms {
  /// Restricted to the conditioning outcomes with positive probability.
  std::vector<Index> support;
  std::vector<CondPmf> targets;         ///< q^{(k)}_{X|G}
  std::vector<Pmf> target_marginals;    ///< q^{(k)}_G
  std::vector<CondPmf> optimal_bets;    ///< on the full conditioning alphabet
};

/// Exact identity log ICE = recomposed(); throws SingularityError when a bet
/// has a zero entry.
DecompositionReport decompose_ice(const Pmf& p0, const OddsProfile& odds, std::span<const Pmf> bets,
                                  const RiskVector& risk);

/// log ICE ≤ recomposed(), with equality at the optimal bets.
ConditionalDecompositionReport decompose_ice_conditional(const JointPmf& p0, const OddsProfile& odds,
                                                         std::span<const CondPmf> bets,
                                                         const RiskVector& risk);

struct OptimalBets {
  std::vector<Pmf> bets;
  double max_log_ice;
};

struct ConditionalOptimalBets {
  std::vector<CondPmf> bets;
  double max_log_ice;
};

/// Bets from the backward recursion b_d = q_d, …, b_1 = q_1, and the value
/// D_α(p0, p_1, …, p_d) + Σ_k (α_k/(α_0-1)) log F^{(k)}.
OptimalBets optimal_bets_unconditional(const Pmf& p0, const OddsProfile& odds, const RiskVector& risk);

/// Per-g backward recursion; value D_{α,α_0}(p_{X|G}, p_1, … | p_G) plus the
/// fairness terms. Conditioning outcomes with zero mass get uniform bets.
ConditionalOptimalBets optimal_bets_conditional(const JointPmf& p0, const OddsProfile& odds,
                                                const RiskVector& risk);

/// Optimal conditional log-ICE minus optimal log-ICE on the X-marginal.
double side_info_gain(const JointPmf& p0, const OddsProfile& odds, const RiskVector& risk);

}  // namespace renyibet
