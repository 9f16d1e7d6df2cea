#include "renyibet/gpt.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace renyibet {
namespace {

using Complex = std::complex<double>;

void check_hermitian(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) throw ValidationError(std::string(what) + ": matrix is not square");
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > kGptTolerance) {
    throw ValidationError(std::string(what) + ": matrix is not Hermitian");
  }
}

Vector eigenvalues_of(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Matrix restricted_conditionals(const JointDecomposition& parts, const std::vector<Index>& support) {
  Matrix cond(parts.x_given_g.outcomes_size(), static_cast<Index>(support.size()));
  for (size_t j = 0; j < support.size(); ++j) cond.col(static_cast<Index>(j)) = parts.x_given_g.mass().col(support[j]);
  return cond;
}

}  // namespace

std::vector<ComplexMatrix> hermitian_basis(Index n) {
  if (n < 1) throw ValidationError("hermitian_basis: n must be positive");
  std::vector<ComplexMatrix> basis;
  basis.push_back(ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  const double r2 = std::sqrt(2.0);
  for (Index j = 0; j < n; ++j) {
    for (Index k = j + 1; k < n; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(j, k) = sym(k, j) = 1.0 / r2;
      basis.push_back(sym);
      ComplexMatrix anti = ComplexMatrix::Zero(n, n);
      anti(k, j) = Complex(0.0, 1.0 / r2);
      anti(j, k) = Complex(0.0, -1.0 / r2);
      basis.push_back(anti);
    }
  }
  for (Index l = 1; l < n; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    const double norm = std::sqrt(static_cast<double>(l * (l + 1)));
    for (Index j = 0; j < l; ++j) diag(j, j) = 1.0 / norm;
    diag(l, l) = -static_cast<double>(l) / norm;
    basis.push_back(diag);
  }
  return basis;
}

// --- models ---------------------------------------------------------------

GptModel::GptModel(Vector unit_effect, std::vector<Vector> reference_states)
    : unit_effect_(std::move(unit_effect)), reference_states_(std::move(reference_states)) {
  if (unit_effect_.size() == 0) throw ValidationError("GptModel: empty unit effect");
  for (const auto& omega : reference_states_) {
    if (omega.size() != dim()) throw ValidationError("GptModel: reference state has wrong dimension");
    if (std::abs(unit_effect_.dot(omega) - 1.0) > kGptTolerance) {
      throw ValidationError("GptModel: reference state is not normalized by the unit effect");
    }
  }
}

GptModel GptModel::build_classical(Index n) {
  if (n < 2) throw ValidationError("build_classical: n must be at least 2");
  std::vector<Vector> vertices;
  for (Index x = 0; x < n; ++x) vertices.push_back(Vector::Unit(n, x));
  GptModel model(Vector::Ones(n), std::move(vertices));
  model.kind_ = ModelKind::Classical;
  model.level_ = n;
  return model;
}

GptModel GptModel::build_quantum(Index n) {
  if (n < 2) throw ValidationError("build_quantum: Hilbert dimension must be at least 2");
  auto basis = hermitian_basis(n);
  auto embed_with = [&](const ComplexMatrix& op) {
    Vector v(static_cast<Index>(basis.size()));
    for (size_t i = 0; i < basis.size(); ++i) v(static_cast<Index>(i)) = (basis[i] * op).trace().real();
    return v;
  };
  std::vector<Vector> refs;
  for (Index j = 0; j < n; ++j) {
    ComplexMatrix proj = ComplexMatrix::Zero(n, n);
    proj(j, j) = 1.0;
    refs.push_back(embed_with(proj));
  }
  for (Index j = 0; j < n; ++j) {
    for (Index k = j + 1; k < n; ++k) {
      for (Complex phase : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n);
        psi(j) = 1.0 / std::sqrt(2.0);
        psi(k) = phase / std::sqrt(2.0);
        refs.push_back(embed_with(psi * psi.adjoint()));
      }
    }
  }
  GptModel model(embed_with(ComplexMatrix::Identity(n, n)), std::move(refs));
  model.kind_ = ModelKind::Quantum;
  model.level_ = n;
  model.basis_ = std::move(basis);
  return model;
}

Vector GptModel::embed(const ComplexMatrix& op) const {
  if (kind_ != ModelKind::Quantum) throw ValidationError("embed: model is not quantum");
  if (op.rows() != level_ || op.cols() != level_) throw ValidationError("embed: operator has wrong size");
  check_hermitian(op, "embed");
  Vector v(dim());
  for (Index i = 0; i < dim(); ++i) v(i) = (basis_[static_cast<size_t>(i)] * op).trace().real();
  return v;
}

ComplexMatrix GptModel::unembed(const Vector& v) const {
  if (kind_ != ModelKind::Quantum) throw ValidationError("unembed: model is not quantum");
  if (v.size() != dim()) throw ValidationError("unembed: vector has wrong dimension");
  ComplexMatrix op = ComplexMatrix::Zero(level_, level_);
  for (Index i = 0; i < dim(); ++i) op += v(i) * basis_[static_cast<size_t>(i)];
  return op;
}

Vector GptModel::state_from_density(const ComplexMatrix& rho) const {
  Vector v = embed(rho);
  check_state(v);
  return v;
}

Vector GptModel::effect_from_operator(const ComplexMatrix& e) const {
  Vector v = embed(e);
  check_effect(v);
  return v;
}

void GptModel::check_state(const Vector& omega) const {
  if (omega.size() != dim()) throw ValidationError("state has wrong dimension");
  if (std::abs(unit_effect_.dot(omega) - 1.0) > kGptTolerance) {
    throw ValidationError("state is not normalized: <u, omega> != 1");
  }
  if (kind_ == ModelKind::Classical && omega.minCoeff() < -kGptTolerance) {
    throw ValidationError("classical state has a negative entry");
  }
  if (kind_ == ModelKind::Quantum && eigenvalues_of(unembed(omega)).minCoeff() < -kGptTolerance) {
    throw ValidationError("density operator is not positive semidefinite");
  }
}

void GptModel::check_effect(const Vector& m) const {
  if (m.size() != dim()) throw ValidationError("effect has wrong dimension");
  for (const auto& omega : reference_states_) {
    const double v = m.dot(omega);
    if (v < -kGptTolerance || v > 1.0 + kGptTolerance) {
      throw ValidationError("effect gives a probability outside [0, 1] on a reference state");
    }
  }
  if (kind_ == ModelKind::Quantum) {
    const Vector ev = eigenvalues_of(unembed(m));
    if (ev.minCoeff() < -kGptTolerance || ev.maxCoeff() > 1.0 + kGptTolerance) {
      throw ValidationError("POVM element violates 0 <= E <= I");
    }
  }
}

// --- measurements and ensembles -------------------------------------------

Measurement::Measurement(const GptModel& model, std::vector<Vector> effects, Labels outcomes)
    : effects_(std::move(effects)), outcomes_(std::move(outcomes)), unit_effect_(model.unit_effect()) {
  if (effects_.empty()) throw ValidationError("Measurement: no effects");
  if (outcomes_.empty()) outcomes_ = index_labels(size());
  if (static_cast<Index>(outcomes_.size()) != size()) throw ValidationError("Measurement: label count mismatch");
  Vector total = Vector::Zero(model.dim());
  for (const auto& m : effects_) {
    model.check_effect(m);
    total += m;
  }
  if ((total - model.unit_effect()).cwiseAbs().maxCoeff() > kGptTolerance) {
    throw ValidationError("Measurement: effects do not sum to the unit effect");
  }
}

StateEnsemble::StateEnsemble(const GptModel& model, Pmf prior, std::vector<Vector> states)
    : prior_(std::move(prior)), states_(std::move(states)) {
  if (!prior_.full_support()) throw ValidationError("StateEnsemble: prior must have full support");
  if (static_cast<Index>(states_.size()) != prior_.size()) {
    throw ValidationError("StateEnsemble: one state per prior outcome");
  }
  for (const auto& omega : states_) model.check_state(omega);
}

JointPmf outcome_joint(const Measurement& m, const StateEnsemble& ensemble) {
  const Index nx = ensemble.prior().size();
  Matrix joint(nx, m.size());
  for (Index x = 0; x < nx; ++x) {
    if (ensemble.state(x).size() != m.effect(0).size()) {
      throw ValidationError("outcome_joint: measurement and ensemble live in different spaces");
    }
    for (Index a = 0; a < m.size(); ++a) {
      double v = m.effect(a).dot(ensemble.state(x));
      if (v < -kGptTolerance || v > 1.0 + kGptTolerance) {
        throw ValidationError("outcome_joint: effect gives a probability outside [0, 1] on an ensemble state");
      }
      v = std::clamp(v, 0.0, 1.0);
      joint(x, a) = ensemble.prior()(x) * v;
    }
  }
  return JointPmf(ensemble.prior().outcomes(), m.outcomes(), std::move(joint));
}

std::vector<Index> map_guesses(const Measurement& m, const StateEnsemble& ensemble) {
  const JointPmf joint = outcome_joint(m, ensemble);
  std::vector<Index> guesses;
  for (Index a = 0; a < joint.conditions_size(); ++a) {
    Index best = 0;
    joint.mass().col(a).maxCoeff(&best);  // first maximum
    guesses.push_back(best);
  }
  return guesses;
}

double sd_success(const Measurement& m, const StateEnsemble& ensemble) {
  const JointPmf joint = outcome_joint(m, ensemble);
  return joint.mass().colwise().maxCoeff().sum();
}

Measurement uninformative(const Pmf& eta, const GptModel& model) {
  std::vector<Vector> effects;
  for (Index b = 0; b < eta.size(); ++b) effects.push_back(eta(b) * model.unit_effect());
  return Measurement(model, std::move(effects), eta.outcomes());
}

Measurement postprocess_measurement(const GptModel& model, const Measurement& m, const StochasticOp& op) {
  if (op.inputs_size() != m.size()) {
    throw ValidationError("postprocess_measurement: kernel inputs must match measurement outcomes");
  }
  std::vector<Vector> effects;
  for (Index b = 0; b < op.outputs_size(); ++b) {
    Vector e = Vector::Zero(model.dim());
    for (Index a = 0; a < m.size(); ++a) e += op.kernel()(b, a) * m.effect(a);
    effects.push_back(std::move(e));
  }
  return Measurement(model, std::move(effects), op.outputs());
}

double sb_optimal_log_ice(const Measurement& m, const StateEnsemble& ensemble, const OddsProfile& odds,
                          const RiskVector& risk) {
  return optimal_bets_conditional(outcome_joint(m, ensemble), odds, risk).max_log_ice;
}

double sb_risk_neutral_optimal_ce(const Measurement& m, const StateEnsemble& ensemble,
                                  const OddsProfile& odds) {
  if (odds.lotteries() != 1) throw ValidationError("sb_risk_neutral_optimal_ce: exactly one lottery");
  const JointPmf joint = outcome_joint(m, ensemble);
  if (odds.outcomes() != joint.outcomes_size()) throw ValidationError("odds and ensemble disagree on outcomes");
  const Matrix weighted = odds.odds(0).asDiagonal() * joint.mass();
  return weighted.colwise().maxCoeff().sum();
}

double informativeness_monotone(const Measurement& m, const StateEnsemble& ensemble,
                                std::span<const Pmf> references, const OrderVector& orders) {
  if (orders[0] != orders.max_order()) {
    throw ValidationError("informativeness_monotone: alpha_0 must be the largest order");
  }
  if (static_cast<Index>(references.size()) != orders.lotteries()) {
    throw ValidationError("informativeness_monotone: one reference PMF per lottery");
  }
  for (const auto& r : references) {
    if (!r.full_support()) throw ValidationError("informativeness_monotone: references need full support");
  }
  const auto parts = marginals_and_conditionals(outcome_joint(m, ensemble));
  std::vector<Index> support;
  for (Index a = 0; a < parts.g_marginal.size(); ++a) {
    if (parts.defined[static_cast<size_t>(a)]) support.push_back(a);
  }
  const Index ns = static_cast<Index>(support.size());
  Vector pa(ns);
  for (Index j = 0; j < ns; ++j) pa(j) = parts.g_marginal(support[static_cast<size_t>(j)]);

  std::vector<CondPmf> conds{CondPmf(restricted_conditionals(parts, support))};
  std::vector<Pmf> pmfs{parts.x_marginal};
  for (const auto& r : references) {
    conds.push_back(CondPmf::constant(r, ns));
    pmfs.push_back(r);
  }
  return renyi_conditional(orders, orders[0], conds, Pmf(pa), Index{0}) -
         renyi_multivariate(orders, pmfs, Index{0});
}

double advantage_ratio(const GptModel& model, const Measurement& m, const StateEnsemble& ensemble,
                       const OddsProfile& odds, const RiskVector& risk, const std::optional<Pmf>& eta) {
  const OrderVector orders = risk_to_orders(risk);
  if (orders[0] != orders.max_order()) {
    throw ValidationError("advantage_ratio: risk vector must make alpha_0 the largest order (all R_k <= 2)");
  }
  const Measurement free = uninformative(eta ? *eta : Pmf::uniform(2), model);
  return std::exp(sb_optimal_log_ice(m, ensemble, odds, risk) - sb_optimal_log_ice(free, ensemble, odds, risk));
}

}  // namespace renyibet
