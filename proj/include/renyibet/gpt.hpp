#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "renyibet/betting.hpp"
#include "renyibet/divergences.hpp"
#include "renyibet/prob.hpp"

namespace renyibet {

using ComplexMatrix = Eigen::MatrixXcd;

/// Tolerance for effect bounds, unit normalization and operator inequalities.
inline constexpr double kGptTolerance = 1e-9;

enum class ModelKind { Classical, Quantum, Custom };

/// Orthonormal basis of n×n Hermitian matrices under Tr[A B]:
///   I/√n;
///   for j < k in lexicographic order, (E_jk + E_kj)/√2 then i(E_kj - E_jk)/√2;
///   for l = 1, …, n-1, (Σ_{j<l} E_jj - l E_ll)/√(l(l+1)).
std::vector<ComplexMatrix> hermitian_basis(Index n);

/// A GPT embedded in R^dim with unit effect u. Reference states are used to
/// validate effects; quantum models additionally carry the Hermitian basis.
class GptModel {
 public:
  GptModel(Vector unit_effect, std::vector<Vector> reference_states);

  static GptModel build_classical(Index n);
  static GptModel build_quantum(Index n);

  Index dim() const { return unit_effect_.size(); }
  const Vector& unit_effect() const { return unit_effect_; }
  const std::vector<Vector>& reference_states() const { return reference_states_; }
  ModelKind kind() const { return kind_; }
  /// n for classical(n) and quantum(n), 0 for custom models.
  Index level() const { return level_; }

  /// Coordinates Tr[B_i A] of a Hermitian operator (quantum models only).
  Vector embed(const ComplexMatrix& op) const;
  ComplexMatrix unembed(const Vector& v) const;
  /// Embeds a density matrix after checking Hermiticity, trace one and PSD.
  Vector state_from_density(const ComplexMatrix& rho) const;
  /// Embeds a POVM element after checking 0 ≤ E ≤ I.
  Vector effect_from_operator(const ComplexMatrix& e) const;

  /// ⟨u, ω⟩ = 1 and, for quantum models, PSD.
  void check_state(const Vector& omega) const;
  /// 0 ≤ ⟨m, ω⟩ ≤ 1 on every reference state, and 0 ≤ E ≤ I for quantum models.
  void check_effect(const Vector& m) const;

 private:
  Vector unit_effect_;
  std::vector<Vector> reference_states_;
  ModelKind kind_ = ModelKind::Custom;
  Index level_ = 0;
  std::vector<ComplexMatrix> basis_;
};

/// Family of effects {m_a} summing to the unit effect.
class Measurement {
 public:
  Measurement(const GptModel& model, std::vector<Vector> effects, Labels outcomes = {});

  Index size() const { return static_cast<Index>(effects_.size()); }
  const std::vector<Vector>& effects() const { return effects_; }
  const Vector& effect(Index a) const { return effects_[static_cast<size_t>(a)]; }
  const Labels& outcomes() const { return outcomes_; }
  const Vector& unit_effect() const { return unit_effect_; }

 private:
  std::vector<Vector> effects_;
  Labels outcomes_;
  Vector unit_effect_;
};

/// Ensemble {p(x), ω_x} with a full-support prior.
class StateEnsemble {
 public:
  StateEnsemble(const GptModel& model, Pmf prior, std::vector<Vector> states);

  const Pmf& prior() const { return prior_; }
  const std::vector<Vector>& states() const { return states_; }
  const Vector& state(Index x) const { return states_[static_cast<size_t>(x)]; }

 private:
  Pmf prior_;
  std::vector<Vector> states_;
};

/// p(x, a) = p(x) ⟨m_a, ω_x⟩ over 𝒳 × 𝒜.
JointPmf outcome_joint(const Measurement& m, const StateEnsemble& ensemble);

/// Σ_a max_x p(x) ⟨m_a, ω_x⟩, the MAP guessing probability.
double sd_success(const Measurement& m, const StateEnsemble& ensemble);

/// MAP guess for each outcome, lowest state index on ties.
std::vector<Index> map_guesses(const Measurement& m, const StateEnsemble& ensemble);

/// n_b = η(b) u.
Measurement uninformative(const Pmf& eta, const GptModel& model);

/// m'_b = Σ_a t(b|a) m_a.
Measurement postprocess_measurement(const GptModel& model, const Measurement& m, const StochasticOp& op);

/// Optimal log-ICE over bets and postprocessings of the outcome:
/// D_{α,α_0}(p_{X|A}, p^{(1)}, … | p_A) + Σ_k (α_k/(α_0-1)) log F^{(k)}.
/// Outcomes with zero probability are dropped.
double sb_optimal_log_ice(const Measurement& m, const StateEnsemble& ensemble, const OddsProfile& odds,
                          const RiskVector& risk);

/// Risk-neutral optimal CE of a single lottery, Σ_a max_x p(x, a) o(x).
double sb_risk_neutral_optimal_ce(const Measurement& m, const StateEnsemble& ensemble,
                                  const OddsProfile& odds);

/// D_{α,α_0}(p_{X|A}, r… | p_A) - D_α(p_X, r…). Orders need α_0 as maximum.
double informativeness_monotone(const Measurement& m, const StateEnsemble& ensemble,
                                std::span<const Pmf> references, const OrderVector& orders);

/// Optimal ICE under m over optimal ICE under an uninformative measurement
/// (uniform on two outcomes unless eta is given).
double advantage_ratio(const GptModel& model, const Measurement& m, const StateEnsemble& ensemble,
                       const OddsProfile& odds, const RiskVector& risk,
                       const std::optional<Pmf>& eta = std::nullopt);

}  // namespace renyibet
