#include "renyibet/divergences.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace renyibet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix stack_columns(std::span<const Pmf> pmfs) {
  if (pmfs.empty()) throw ValidationError("no PMFs given");
  const Index n = pmfs.front().size();
  Matrix m(n, static_cast<Index>(pmfs.size()));
  for (size_t k = 0; k < pmfs.size(); ++k) {
    if (pmfs[k].size() != n) {
      throw ValidationError("PMFs do not share one outcome set (sizes differ)");
    }
    m.col(static_cast<Index>(k)) = pmfs[k].mass();
  }
  return m;
}

double pivot_order(const OrderVector& orders, std::optional<Index> pivot_override) {
  const Index piv = pivot_override.value_or(orders.pivot());
  if (piv < 0 || piv >= orders.size()) throw ValidationError("pivot index out of range");
  const double a = orders[piv];
  if (a == 1.0) {
    throw SingularityError(
        "pivot order equals 1: the prefactor 1/(alpha-1) is singular; evaluate kl_mixture_limit "
        "instead");
  }
  return a;
}

void check_gammas(std::span<const double> gammas, size_t d) {
  if (gammas.size() != d) throw ValidationError("need one weight per reference PMF");
  double total = 0.0;
  for (double g : gammas) {
    if (!std::isfinite(g) || g < 0.0) throw ValidationError("path weights must be nonnegative");
    total += g;
  }
  if (std::abs(total - 1.0) > kNormTolerance) throw ValidationError("path weights must sum to 1");
}

void check_references_full_support(std::span<const Pmf> pmfs) {
  for (size_t k = 1; k < pmfs.size(); ++k) {
    if (!pmfs[k].full_support()) throw ValidationError("reference PMFs must have full support");
  }
}

}  // namespace

// --- OrderVector ----------------------------------------------------------

OrderVector::OrderVector(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw ValidationError("order vector is empty");
  double total = 0.0;
  double scale = 1.0;
  for (double a : alphas_) {
    if (!std::isfinite(a)) throw ValidationError("orders must be finite");
    total += a;
    scale += std::abs(a);
  }
  // Relative to the magnitudes so that case (ii) tuples with large entries
  // built from risk vectors are not rejected for rounding.
  if (std::abs(total - 1.0) > kNormTolerance * scale) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "orders sum to " << total << ", not 1";
    throw ValidationError(msg.str());
  }
  pivot_ = static_cast<Index>(std::max_element(alphas_.begin(), alphas_.end()) - alphas_.begin());

  const bool all_nonneg = std::all_of(alphas_.begin(), alphas_.end(), [](double a) { return a >= 0.0; });
  const auto above_one = std::count_if(alphas_.begin(), alphas_.end(), [](double a) { return a > 1.0; });
  if (all_nonneg) {
    case_ = OrderCase::I;
    return;
  }
  if (above_one >= 2) throw ValidationError("inadmissible orders: two components exceed 1");
  if (above_one == 1) {
    bool rest_nonpositive = true;
    for (Index k = 0; k < size(); ++k) {
      if (k != pivot_ && (*this)[k] > 0.0) rest_nonpositive = false;
    }
    if (rest_nonpositive) {
      case_ = OrderCase::II;
      return;
    }
  }
  throw ValidationError(
      "inadmissible orders: neither all nonnegative (case i) nor one order above 1 with the rest "
      "nonpositive (case ii)");
}

OrderVector validate_orders(std::span<const double> alphas) {
  return OrderVector(std::vector<double>(alphas.begin(), alphas.end()));
}

// --- divergences ----------------------------------------------------------

double kl_divergence(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) throw ValidationError("kl_divergence: outcome sets differ");
  double acc = 0.0;
  for (Index x = 0; x < p.size(); ++x) {
    if (p(x) <= 0.0) continue;
    if (q(x) <= 0.0) return kInf;
    acc += p(x) * std::log(p(x) / q(x));
  }
  return std::max(acc, 0.0);
}

double renyi_bivariate(double alpha, const Pmf& p, const Pmf& q) {
  if (!std::isfinite(alpha) || alpha < 0.0) throw ValidationError("renyi_bivariate: order must be >= 0");
  if (p.size() != q.size()) throw ValidationError("renyi_bivariate: outcome sets differ");
  if (alpha == 1.0) return kl_divergence(p, q);
  Matrix m(p.size(), 2);
  m.col(0) = p.mass();
  m.col(1) = q.mass();
  const double orders[2] = {alpha, 1.0 - alpha};
  const double ls = log_power_sum(m, orders);
  if (ls == kInf) return kInf;
  return ls / (alpha - 1.0);
}

double renyi_multivariate(const OrderVector& orders, std::span<const Pmf> pmfs,
                          std::optional<Index> pivot_override) {
  if (static_cast<Index>(pmfs.size()) != orders.size()) {
    throw ValidationError("renyi_multivariate: need one PMF per order");
  }
  const double a = pivot_order(orders, pivot_override);
  const double ls = log_power_sum(stack_columns(pmfs), orders.alphas());
  if (ls == kInf) return kInf;
  return ls / (a - 1.0);
}

double renyi_conditional(const OrderVector& orders, double beta, std::span<const CondPmf> conditionals,
                         const Pmf& p_g, std::optional<Index> pivot_override) {
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw ValidationError("renyi_conditional: beta must be positive");
  }
  if (static_cast<Index>(conditionals.size()) != orders.size()) {
    throw ValidationError("renyi_conditional: need one conditional PMF per order");
  }
  if (!p_g.full_support()) throw ValidationError("renyi_conditional: p_G must have full support");
  const Index nx = conditionals.front().outcomes_size();
  const Index ng = p_g.size();
  for (const auto& c : conditionals) {
    if (c.outcomes_size() != nx || c.conditions_size() != ng) {
      throw ValidationError("renyi_conditional: conditional PMFs do not share alphabets");
    }
  }
  const double a = pivot_order(orders, pivot_override);

  Vector outer(ng);
  Matrix column(nx, orders.size());
  for (Index g = 0; g < ng; ++g) {
    for (Index k = 0; k < orders.size(); ++k) column.col(k) = conditionals[static_cast<size_t>(k)].mass().col(g);
    const double inner = log_power_sum(column, orders.alphas());
    if (inner == kInf) return kInf;
    outer(g) = std::log(p_g(g)) + inner / beta;
  }
  const double ls = log_sum_exp(outer);
  return beta * ls / (a - 1.0);
}

double kl_mixture_limit(std::span<const double> gammas, std::span<const Pmf> pmfs) {
  if (pmfs.size() < 2) throw ValidationError("kl_mixture_limit: need at least two PMFs");
  check_gammas(gammas, pmfs.size() - 1);
  check_references_full_support(pmfs);
  double acc = 0.0;
  for (size_t k = 1; k < pmfs.size(); ++k) {
    if (pmfs[k].size() != pmfs[0].size()) throw ValidationError("kl_mixture_limit: outcome sets differ");
    if (gammas[k - 1] == 0.0) continue;
    acc += gammas[k - 1] * kl_divergence(pmfs[0], pmfs[k]);
  }
  return acc;
}

double tropical_limit(std::span<const double> gammas, std::span<const Pmf> pmfs) {
  if (pmfs.size() < 2) throw ValidationError("tropical_limit: need at least two PMFs");
  check_gammas(gammas, pmfs.size() - 1);
  check_references_full_support(pmfs);
  const Matrix m = stack_columns(pmfs);
  double best = -kInf;
  for (Index x = 0; x < m.rows(); ++x) {
    if (m(x, 0) <= 0.0) continue;
    double v = std::log(m(x, 0));
    for (Index k = 1; k < m.cols(); ++k) v -= gammas[static_cast<size_t>(k - 1)] * std::log(m(x, k));
    best = std::max(best, v);
  }
  return best;
}

OrderVector path_orders(const PathSpec& spec) {
  if (spec.gammas.empty()) throw ValidationError("path_orders: need at least one weight");
  check_gammas(spec.gammas, spec.gammas.size());
  const double lambda = spec.lambda;
  if (!std::isfinite(lambda) || lambda < 0.0) throw ValidationError("path_orders: lambda must be >= 0");
  if (lambda == 1.0) throw ValidationError("path_orders: lambda = 1 is excluded (use kl_mixture_limit)");
  double floor = 0.0;
  for (double g : spec.gammas) floor = std::max(floor, g / (g + 1.0));
  if (lambda < floor) {
    throw ValidationError("path_orders: lambda below max_k gamma_k/(gamma_k+1), alpha_0 would not be the largest order");
  }
  std::vector<double> alphas;
  alphas.reserve(spec.gammas.size() + 1);
  alphas.push_back(lambda);
  for (double g : spec.gammas) alphas.push_back((1.0 - lambda) * g);
  OrderVector out(std::move(alphas));
  if (out.max_order() - out[0] > kNormTolerance) throw ValidationError("path_orders: alpha_0 is not the pivot");
  return out;
}

DpiReport dpi_check(const OrderVector& orders, std::span<const Pmf> pmfs, const StochasticOp& op) {
  std::vector<Pmf> images;
  images.reserve(pmfs.size());
  for (const auto& p : pmfs) images.push_back(apply_stochastic(op, p));
  const double before = renyi_multivariate(orders, pmfs);
  const double after = renyi_multivariate(orders, images);
  return DpiReport{before, after, before >= after - kCompareTolerance};
}

DpiReport main_system_dpi_check(const OrderVector& orders, double beta,
                                std::span<const CondPmf> conditionals, const Pmf& p_g,
                                const std::vector<StochasticOp>& kernels) {
  std::vector<CondPmf> images;
  images.reserve(conditionals.size());
  for (const auto& c : conditionals) images.push_back(apply_conditional_kernels(kernels, c));
  const double before = renyi_conditional(orders, beta, conditionals, p_g);
  const double after = renyi_conditional(orders, beta, images, p_g);
  return DpiReport{before, after, before >= after - kCompareTolerance};
}

ConditioningDpiReport conditioning_dpi_check(const OrderVector& orders, const CondPmf& p0_given_g,
                                             std::span<const Pmf> references, const Pmf& p_g,
                                             const StochasticOp& op) {
  if (orders.pivot() != 0) {
    throw ValidationError("conditioning_dpi_check: alpha_0 must be the largest order");
  }
  if (static_cast<Index>(references.size()) != orders.lotteries()) {
    throw ValidationError("conditioning_dpi_check: need d reference PMFs");
  }
  if (op.inputs_size() != p_g.size()) throw ValidationError("conditioning_dpi_check: kernel must act on G");
  const double beta = orders[0];

  auto evaluate = [&](const CondPmf& main, const Pmf& weights) {
    std::vector<CondPmf> conds{main};
    for (const auto& r : references) conds.push_back(CondPmf::constant(r, weights.size()));
    return renyi_conditional(orders, beta, conds, weights);
  };

  const Pmf q_h = apply_stochastic(op, p_g);
  const StochasticOp reversed = bayes_pseudo_inverse(op, p_g);
  // q0(x|h) = Σ_g t†(g|h) p0(x|g)
  const CondPmf q0_given_h(p0_given_g.outcomes(), q_h.outcomes(), p0_given_g.mass() * reversed.kernel());

  std::vector<Pmf> flat{Pmf(p0_given_g.outcomes(), p0_given_g.mass() * p_g.mass())};
  flat.insert(flat.end(), references.begin(), references.end());

  ConditioningDpiReport rep{};
  rep.before = evaluate(p0_given_g, p_g);
  rep.after = evaluate(q0_given_h, q_h);
  rep.unconditional = renyi_multivariate(orders, flat, Index{0});
  rep.holds = rep.before >= rep.after - kCompareTolerance;
  rep.corollary_holds = rep.before >= rep.unconditional - kCompareTolerance;
  return rep;
}

std::vector<SweepRow> sweep(std::span<const double> gammas, std::span<const Pmf> pmfs,
                            std::span<const double> lambdas) {
  const double kl = kl_mixture_limit(gammas, pmfs);
  const double tropical = tropical_limit(gammas, pmfs);
  std::vector<SweepRow> rows;
  rows.reserve(lambdas.size());
  for (double lambda : lambdas) {
    double value = kl;
    if (lambda != 1.0) {
      const OrderVector orders = path_orders(PathSpec{{gammas.begin(), gammas.end()}, lambda});
      value = renyi_multivariate(orders, pmfs, Index{0});
    }
    rows.push_back(SweepRow{lambda, value, kl, tropical});
  }
  return rows;
}

}  // namespace renyibet
