#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "renyibet/prob.hpp"

namespace renyibet {

/// Admissibility class of an order vector: (i) all orders nonnegative, or
/// (ii) exactly one order above one and all others nonpositive.
enum class OrderCase { I, II };

/// Rényi order tuple (α_0, …, α_d) summing to one, validated on construction.
class OrderVector {
 public:
  explicit OrderVector(std::vector<double> alphas);

  Index size() const { return static_cast<Index>(alphas_.size()); }
  /// Number of reference PMFs d (the tuple has d+1 entries).
  Index lotteries() const { return size() - 1; }
  double operator[](Index k) const { return alphas_[static_cast<size_t>(k)]; }
  std::span<const double> alphas() const { return alphas_; }
  OrderCase order_case() const { return case_; }
  /// argmax_k α_k, lowest index on ties.
  Index pivot() const { return pivot_; }
  double max_order() const { return (*this)[pivot_]; }

 private:
  std::vector<double> alphas_;
  OrderCase case_;
  Index pivot_;
};

OrderVector validate_orders(std::span<const double> alphas);

/// Order path λ ↦ (λ, (1-λ)γ_1, …, (1-λ)γ_d).
struct PathSpec {
  std::vector<double> gammas;
  double lambda;
};

// ---------------------------------------------------------------------------
// Log-space kernels. Generic over the Eigen scalar so they accept any dense
// expression; masses are stacked one PMF per column.

/// log Σ_i exp(v_i), with -inf for an empty or all -inf input.
template <typename Derived>
typename Derived::Scalar log_sum_exp(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  using std::exp;
  using std::log;
  if (v.size() == 0) return -std::numeric_limits<Scalar>::infinity();
  const Scalar top = v.maxCoeff();
  if (!std::isfinite(static_cast<double>(top))) return top;
  return top + log((v.array() - top).exp().sum());
}

/// log Σ_x Π_k m(x,k)^{α_k} under the extended-real conventions
/// 0^0 = 1 and 0^a = 0 for a > 0. A zero raised to a negative power makes
/// the result +inf.
template <typename Derived>
typename Derived::Scalar log_power_sum(const Eigen::MatrixBase<Derived>& masses,
                                       std::span<const double> alphas) {
  using Scalar = typename Derived::Scalar;
  using std::log;
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> terms(masses.rows());
  for (Index x = 0; x < masses.rows(); ++x) {
    Scalar acc(0);
    bool vanishes = false;
    for (Index k = 0; k < masses.cols(); ++k) {
      const double a = alphas[static_cast<size_t>(k)];
      const Scalar m = masses(x, k);
      if (a == 0.0) continue;
      if (m <= Scalar(0)) {
        if (a < 0.0) return inf;
        vanishes = true;
        continue;
      }
      acc += Scalar(a) * log(m);
    }
    terms(x) = vanishes ? -inf : acc;
  }
  return log_sum_exp(terms);
}

// ---------------------------------------------------------------------------

/// Bivariate Rényi divergence D_α(p‖q) in nats; α = 1 gives the
/// Kullback-Leibler divergence.
double renyi_bivariate(double alpha, const Pmf& p, const Pmf& q);

double kl_divergence(const Pmf& p, const Pmf& q);

/// Unconditional multivariate Rényi divergence
///   1/(α_piv - 1) · log Σ_x Π_k p_k(x)^{α_k}
/// with α_piv the largest order unless `pivot_override` picks another index.
/// Throws SingularityError when α_piv = 1; use kl_mixture_limit there.
double renyi_multivariate(const OrderVector& orders, std::span<const Pmf> pmfs,
                          std::optional<Index> pivot_override = std::nullopt);

/// Conditional multivariate Rényi divergence
///   β/(α_piv - 1) · log Σ_g p_G(g) (Σ_x Π_k p_k(x|g)^{α_k})^{1/β}.
double renyi_conditional(const OrderVector& orders, double beta, std::span<const CondPmf> conditionals,
                         const Pmf& p_g, std::optional<Index> pivot_override = std::nullopt);

/// Σ_k γ_k D_KL(p_0‖p_k), the λ → 1 limit along the order path.
double kl_mixture_limit(std::span<const double> gammas, std::span<const Pmf> pmfs);

/// max_x log[p_0(x) / Π_k p_k(x)^{γ_k}], the λ → ∞ limit along the order path.
double tropical_limit(std::span<const double> gammas, std::span<const Pmf> pmfs);

OrderVector path_orders(const PathSpec& spec);

struct DpiReport {
  double before;
  double after;
  bool holds;
};

/// Both sides of the data processing inequality for one kernel applied to
/// every PMF.
DpiReport dpi_check(const OrderVector& orders, std::span<const Pmf> pmfs, const StochasticOp& op);

/// Postprocessing of the main system with a g-dependent kernel.
DpiReport main_system_dpi_check(const OrderVector& orders, double beta,
                                std::span<const CondPmf> conditionals, const Pmf& p_g,
                                const std::vector<StochasticOp>& kernels);

struct ConditioningDpiReport {
  double before;         ///< D_{α,α_0}(p_{X|G}, r… | p_G)
  double after;          ///< D_{α,α_0}(q_{X|H}, r… | q_H)
  double unconditional;  ///< D_α(p_X, r…)
  bool holds;            ///< before ≥ after - tol
  bool corollary_holds;  ///< before ≥ unconditional - tol
};

/// Postprocessing of the conditioning system through `op` and its Bayes
/// reversal. Orders must have their maximum at index 0; β is set to α_0.
ConditioningDpiReport conditioning_dpi_check(const OrderVector& orders, const CondPmf& p0_given_g,
                                             std::span<const Pmf> references, const Pmf& p_g,
                                             const StochasticOp& op);

struct SweepRow {
  double lambda;
  double divergence;
  double kl_limit;
  double tropical_limit;
};

/// D along the order path at each λ. At λ = 1 the divergence column holds
/// the KL mixture limit.
std::vector<SweepRow> sweep(std::span<const double> gammas, std::span<const Pmf> pmfs,
                            std::span<const double> lambdas);

}  // namespace renyibet
