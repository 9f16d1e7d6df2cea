#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "renyibet/betting.hpp"
#include "renyibet/gpt.hpp"
#include "renyibet/prob.hpp"

// Brute-force reference implementations. Nothing here calls the closed forms
// of the divergences or betting modules; every value is computed straight
// from the definition of the certainty equivalent.
namespace renyibet::oracle {

struct OracleConfig {
  std::uint64_t seed = 42;
  double grid_resolution = 1e-3;
  Index dirichlet_samples = 20000;
  Index mc_samples = 1000000;

  void validate() const;
};

// --- random instances -----------------------------------------------------

using Rng = std::mt19937_64;

Pmf random_pmf(Rng& rng, Index n);
JointPmf random_joint(Rng& rng, Index nx, Index ng);
StochasticOp random_kernel(Rng& rng, Index inputs, Index outputs);
/// Case (i) or (ii) chosen by a fair coin.
RiskVector random_risk(Rng& rng, Index d);
/// Fair odds from random PMFs, each lottery scaled by a factor in [0.8, 1.25].
OddsProfile random_odds(Rng& rng, Index n, Index d, bool fair_only = false);
OrderVector random_orders(Rng& rng, Index d);
ComplexMatrix random_density(Rng& rng, Index n);
/// POVM elements S^{-1/2} A_a S^{-1/2} from random PSD A_a with S = Σ A_a.
std::vector<ComplexMatrix> random_povm(Rng& rng, Index n, Index outcomes);

// --- direct evaluation ----------------------------------------------------

/// ICE evaluated as u_R^{-1}(E[u_R(W)]) with plain sums over outcomes.
double naive_log_ice(const Pmf& p0, const OddsProfile& odds, std::span<const Pmf> bets,
                     const RiskVector& risk);
double naive_log_ice_conditional(const JointPmf& p0, const OddsProfile& odds,
                                 std::span<const CondPmf> bets, const RiskVector& risk);

// --- optimal bets by search -----------------------------------------------

struct SearchResult {
  std::vector<Pmf> bets;
  double log_ice;
};

/// Lattice search over the interior of the simplex followed by Dirichlet
/// refinement around the incumbent. Guard: outcomes ≤ 4, lotteries ≤ 3.
SearchResult brute_force_optimal_bets(const Pmf& p0, const OddsProfile& odds, const RiskVector& risk,
                                      const OracleConfig& cfg);

struct ConditionalSearchResult {
  std::vector<CondPmf> bets;
  double log_ice;
};

/// The conditional game separates over g; each column is searched
/// independently and the values recombined through the definition.
ConditionalSearchResult brute_force_optimal_bets(const JointPmf& p0, const OddsProfile& odds,
                                                 const RiskVector& risk, const OracleConfig& cfg);

// --- Monte Carlo ----------------------------------------------------------

struct MonteCarloEstimate {
  double estimate;
  double stderr_;
};

/// Samples outcomes, averages the multi-commodity utility and inverts it on
/// the diagonal. Standard error by batch means and the delta method.
MonteCarloEstimate monte_carlo_ice(const Pmf& p0, const OddsProfile& odds, std::span<const Pmf> bets,
                                   const RiskVector& risk, const OracleConfig& cfg);
MonteCarloEstimate monte_carlo_ice(const JointPmf& p0, const OddsProfile& odds, std::span<const CondPmf> bets,
                                   const RiskVector& risk, const OracleConfig& cfg);

// --- postprocessing -------------------------------------------------------

struct PostprocessingResult {
  std::vector<Index> guess;  ///< guessed state for each outcome
  double success;
};

/// Enumerates every deterministic map 𝒜 → 𝒳 (guard |𝒳|^|𝒜| ≤ 10^6).
PostprocessingResult exhaustive_postprocessing(const Matrix& joint);

/// Best risk-neutral wealth over every deterministic bet-and-postprocess
/// strategy of a single lottery: Σ_a p(x_a, a) o(x_a) maximized over maps.
double exhaustive_risk_neutral_ce(const Matrix& joint, const Vector& odds);

// --- high-precision fixtures ----------------------------------------------

/// 50-digit evaluation of the multivariate and conditional definitions.
/// Masses are exact strings, either decimals ("0.75") or ratios ("2/3").
double hp_renyi_multivariate(std::span<const double> alphas, const std::vector<std::vector<std::string>>& pmfs);
double hp_renyi_conditional(std::span<const double> alphas, double beta,
                            const std::vector<std::vector<std::vector<std::string>>>& conditionals,
                            const std::vector<std::string>& p_g);

}  // namespace renyibet::oracle
