#include "renyibet/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <Eigen/Eigenvalues>

namespace renyibet::oracle {
namespace {

constexpr Index kMaxOutcomes = 4;
constexpr Index kMaxLotteries = 3;
constexpr Index kMcBatches = 100;

Vector dirichlet(Rng& rng, const Vector& concentration) {
  Vector v(concentration.size());
  for (Index i = 0; i < v.size(); ++i) {
    std::gamma_distribution<double> gamma(concentration(i), 1.0);
    v(i) = gamma(rng);
  }
  return v / v.sum();
}

Vector floor_renormalize(Vector v) {
  v = v.cwiseMax(1e-9);
  return v / v.sum();
}

double exponent_sum(const RiskVector& risk) {
  double s = 0.0;
  for (double r : risk.values()) s += 1.0 - r;
  return s;
}

// Σ_x p(x) Π_k (b_k(x) o_k(x))^{1-R_k}
double inner_sum(const Vector& p, const OddsProfile& odds, const std::vector<Vector>& bets,
                 const RiskVector& risk) {
  double total = 0.0;
  for (Index x = 0; x < p.size(); ++x) {
    if (p(x) == 0.0) continue;
    double w = p(x);
    for (Index k = 0; k < risk.size(); ++k) {
      w *= std::pow(bets[static_cast<size_t>(k)](x) * odds.odds(k)(x), 1.0 - risk[k]);
    }
    total += w;
  }
  return total;
}

// Larger is better for the gambler in both risk cases.
double score(const Vector& p, const OddsProfile& odds, const std::vector<Vector>& bets, const RiskVector& risk,
             double s) {
  return std::log(inner_sum(p, odds, bets, risk)) / s;
}

// Interior lattice points {k/N : k_i ≥ 1, Σ k_i = N}.
void lattice(Index n, Index N, std::vector<Vector>& out) {
  std::vector<Index> k(static_cast<size_t>(n), 1);
  std::function<void(Index, Index)> rec = [&](Index pos, Index remaining) {
    if (pos == n - 1) {
      k[static_cast<size_t>(pos)] = remaining;
      Vector v(n);
      for (Index i = 0; i < n; ++i) v(i) = static_cast<double>(k[static_cast<size_t>(i)]) / static_cast<double>(N);
      out.push_back(v);
      return;
    }
    for (Index c = 1; c <= remaining - (n - 1 - pos); ++c) {
      k[static_cast<size_t>(pos)] = c;
      rec(pos + 1, remaining - c);
    }
  };
  rec(0, N);
}

Index lattice_divisions(Index n, double resolution) {
  // Finer lattices for small simplices; larger ones rely on refinement.
  const double base = std::max(resolution, 1e-6);
  switch (n) {
    case 2: return static_cast<Index>(std::lround(1.0 / base));
    case 3: return static_cast<Index>(std::lround(std::min(1.0 / base, 100.0)));
    default: return static_cast<Index>(std::lround(std::min(1.0 / base, 40.0)));
  }
}

struct ColumnSearch {
  std::vector<Vector> bets;
  double value;
};

ColumnSearch search_column(const Vector& p, const OddsProfile& odds, const RiskVector& risk,
                           const OracleConfig& cfg, Rng& rng) {
  const Index n = p.size();
  const Index d = risk.size();
  const double s = exponent_sum(risk);
  std::vector<Vector> grid;
  lattice(n, std::max<Index>(lattice_divisions(n, cfg.grid_resolution), n), grid);

  std::vector<Vector> bets(static_cast<size_t>(d), Vector::Constant(n, 1.0 / static_cast<double>(n)));
  double best = score(p, odds, bets, risk, s);
  for (int sweep = 0; sweep < 50; ++sweep) {
    bool improved = false;
    for (Index k = 0; k < d; ++k) {
      Vector incumbent = bets[static_cast<size_t>(k)];
      for (const auto& g : grid) {
        bets[static_cast<size_t>(k)] = g;
        const double v = score(p, odds, bets, risk, s);
        if (v > best + 1e-15) {
          best = v;
          incumbent = g;
          improved = true;
        }
      }
      bets[static_cast<size_t>(k)] = incumbent;
    }
    if (!improved) break;
  }

  // Dirichlet refinement with a concentration schedule that tightens from
  // lattice scale to well below it.
  const Index samples = cfg.dirichlet_samples;
  for (Index i = 0; i < samples; ++i) {
    const double t = samples > 1 ? static_cast<double>(i) / static_cast<double>(samples - 1) : 0.0;
    const double concentration = 200.0 * std::pow(1e4, t);
    std::vector<Vector> trial = bets;
    for (Index k = 0; k < d; ++k) {
      trial[static_cast<size_t>(k)] =
          floor_renormalize(dirichlet(rng, concentration * bets[static_cast<size_t>(k)] + Vector::Constant(n, 1e-3)));
    }
    const double v = score(p, odds, trial, risk, s);
    if (v > best) {
      best = v;
      bets = std::move(trial);
    }
  }

  // Pairwise mass transfers with a shrinking step polish the incumbent.
  for (double step = 1e-2; step >= 1e-9; step /= 3.0) {
    for (int round = 0; round < 200; ++round) {
      bool improved = false;
      for (Index k = 0; k < d; ++k) {
        for (Index i = 0; i < n; ++i) {
          for (Index j = 0; j < n; ++j) {
            Vector& b = bets[static_cast<size_t>(k)];
            const double delta = std::min(step, 0.5 * b(i));
            if (i == j || delta <= 0.0) continue;
            b(i) -= delta;
            b(j) += delta;
            const double v = score(p, odds, bets, risk, s);
            if (v > best) {
              best = v;
              improved = true;
            } else {
              b(i) += delta;
              b(j) -= delta;
            }
          }
        }
      }
      if (!improved) break;
    }
  }
  return ColumnSearch{std::move(bets), best};
}

void guard(Index n, Index d) {
  if (n > kMaxOutcomes || d > kMaxLotteries) {
    throw ValidationError("brute_force_optimal_bets: instance exceeds guard (outcomes <= 4, lotteries <= 3)");
  }
}

using HpFloat = boost::multiprecision::cpp_bin_float_50;

HpFloat parse_exact(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return HpFloat(text);
  return HpFloat(text.substr(0, slash)) / HpFloat(text.substr(slash + 1));
}

// log Σ_x Π_k m_k(x)^{α_k} for one column of masses.
HpFloat hp_power_sum(std::span<const double> alphas, const std::vector<std::vector<HpFloat>>& masses) {
  HpFloat total = 0;
  for (size_t x = 0; x < masses.front().size(); ++x) {
    HpFloat term = 1;
    for (size_t k = 0; k < alphas.size(); ++k) {
      const HpFloat m = masses[k][x];
      if (alphas[k] == 0.0) continue;
      if (m == 0) {
        if (alphas[k] < 0.0) return std::numeric_limits<HpFloat>::infinity();
        term = 0;
        continue;
      }
      term *= boost::multiprecision::pow(m, HpFloat(alphas[k]));
    }
    total += term;
  }
  return total;
}

double hp_pivot(std::span<const double> alphas) { return *std::max_element(alphas.begin(), alphas.end()); }

}  // namespace

void OracleConfig::validate() const {
  if (!(grid_resolution > 0.0 && grid_resolution < 0.5)) throw ValidationError("grid_resolution must lie in (0, 0.5)");
  if (dirichlet_samples <= 0 || mc_samples <= 0) throw ValidationError("sample counts must be positive");
}

// --- random instances -----------------------------------------------------

Pmf random_pmf(Rng& rng, Index n) { return Pmf(floor_renormalize(dirichlet(rng, Vector::Ones(n)))); }

JointPmf random_joint(Rng& rng, Index nx, Index ng) {
  const Vector flat = floor_renormalize(dirichlet(rng, Vector::Ones(nx * ng)));
  return JointPmf(Matrix(Eigen::Map<const Matrix>(flat.data(), nx, ng)));
}

StochasticOp random_kernel(Rng& rng, Index inputs, Index outputs) {
  Matrix k(outputs, inputs);
  for (Index x = 0; x < inputs; ++x) k.col(x) = dirichlet(rng, Vector::Ones(outputs));
  return StochasticOp(std::move(k));
}

RiskVector random_risk(Rng& rng, Index d) {
  std::bernoulli_distribution coin(0.5);
  std::vector<double> risk(static_cast<size_t>(d));
  if (coin(rng)) {
    std::uniform_real_distribution<double> excess(0.05, 3.0);
    for (auto& r : risk) r = 1.0 + excess(rng);
  } else {
    // Deficits 1 - R_k > 0 with total at most 0.9.
    const Vector split = dirichlet(rng, Vector::Ones(d + 1));
    for (Index k = 0; k < d; ++k) risk[static_cast<size_t>(k)] = 1.0 - 0.9 * std::max(split(k), 1e-6);
  }
  return RiskVector(std::move(risk));
}

OddsProfile random_odds(Rng& rng, Index n, Index d, bool fair_only) {
  std::uniform_real_distribution<double> log_factor(std::log(0.8), std::log(1.25));
  std::vector<Vector> odds;
  for (Index k = 0; k < d; ++k) {
    const Pmf p = random_pmf(rng, n);
    const double factor = fair_only ? 1.0 : std::exp(log_factor(rng));
    odds.push_back(factor * p.mass().cwiseInverse());
  }
  return OddsProfile(std::move(odds));
}

OrderVector random_orders(Rng& rng, Index d) { return risk_to_orders(random_risk(rng, d)); }

ComplexMatrix random_density(Rng& rng, Index n) {
  std::normal_distribution<double> normal;
  ComplexMatrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) g(i, j) = {normal(rng), normal(rng)};
  }
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

std::vector<ComplexMatrix> random_povm(Rng& rng, Index n, Index outcomes) {
  std::vector<ComplexMatrix> parts;
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (Index a = 0; a < outcomes; ++a) {
    parts.push_back(random_density(rng, n));
    total += parts.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(total);
  const ComplexMatrix inv_sqrt = es.operatorInverseSqrt();
  for (auto& e : parts) {
    e = inv_sqrt * e * inv_sqrt;
    e = 0.5 * (e + e.adjoint()).eval();
  }
  return parts;
}

// --- direct evaluation ----------------------------------------------------

double naive_log_ice(const Pmf& p0, const OddsProfile& odds, std::span<const Pmf> bets, const RiskVector& risk) {
  std::vector<Vector> b;
  for (const auto& pmf : bets) b.push_back(pmf.mass());
  return std::log(inner_sum(p0.mass(), odds, b, risk)) / exponent_sum(risk);
}

double naive_log_ice_conditional(const JointPmf& p0, const OddsProfile& odds, std::span<const CondPmf> bets,
                                 const RiskVector& risk) {
  double total = 0.0;
  for (Index g = 0; g < p0.conditions_size(); ++g) {
    std::vector<Vector> b;
    for (const auto& c : bets) b.push_back(c.mass().col(g));
    total += inner_sum(p0.mass().col(g), odds, b, risk);
  }
  return std::log(total) / exponent_sum(risk);
}

// --- search ---------------------------------------------------------------

SearchResult brute_force_optimal_bets(const Pmf& p0, const OddsProfile& odds, const RiskVector& risk,
                                      const OracleConfig& cfg) {
  cfg.validate();
  guard(p0.size(), risk.size());
  Rng rng(cfg.seed);
  auto found = search_column(p0.mass(), odds, risk, cfg, rng);
  SearchResult out;
  for (auto& b : found.bets) out.bets.emplace_back(std::move(b));
  out.log_ice = naive_log_ice(p0, odds, out.bets, risk);
  return out;
}

ConditionalSearchResult brute_force_optimal_bets(const JointPmf& p0, const OddsProfile& odds,
                                                 const RiskVector& risk, const OracleConfig& cfg) {
  cfg.validate();
  guard(p0.outcomes_size(), risk.size());
  const Index nx = p0.outcomes_size();
  const Index ng = p0.conditions_size();
  Rng rng(cfg.seed);
  std::vector<Matrix> bets(static_cast<size_t>(risk.size()), Matrix::Constant(nx, ng, 1.0 / static_cast<double>(nx)));
  for (Index g = 0; g < ng; ++g) {
    const double pg = p0.mass().col(g).sum();
    if (pg <= 0.0) continue;
    const Vector column = p0.mass().col(g) / pg;
    auto found = search_column(column, odds, risk, cfg, rng);
    for (Index k = 0; k < risk.size(); ++k) bets[static_cast<size_t>(k)].col(g) = found.bets[static_cast<size_t>(k)];
  }
  ConditionalSearchResult out;
  for (auto& b : bets) out.bets.emplace_back(std::move(b));
  out.log_ice = naive_log_ice_conditional(p0, odds, out.bets, risk);
  return out;
}

// --- Monte Carlo ----------------------------------------------------------

namespace {

// Samples Π_k W_k^{1-R_k}; the constant Π_k 1/(1-R_k) of the utility cancels
// in the inversion u^{-1}(E u(W)) on the diagonal.
template <typename Wealth>
MonteCarloEstimate run_monte_carlo(const Vector& weights, Wealth&& wealth_term, const RiskVector& risk,
                                   const OracleConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  std::discrete_distribution<Index> draw(weights.data(), weights.data() + weights.size());
  const Index per_batch = std::max<Index>(cfg.mc_samples / kMcBatches, 1);
  std::vector<double> batch_means;
  for (Index b = 0; b < kMcBatches; ++b) {
    double acc = 0.0;
    for (Index i = 0; i < per_batch; ++i) acc += wealth_term(draw(rng));
    batch_means.push_back(acc / static_cast<double>(per_batch));
  }
  double mean = 0.0;
  for (double m : batch_means) mean += m;
  mean /= static_cast<double>(batch_means.size());
  double var = 0.0;
  for (double m : batch_means) var += (m - mean) * (m - mean);
  var /= static_cast<double>(batch_means.size() - 1);
  const double se_mean = std::sqrt(var / static_cast<double>(batch_means.size()));
  const double s = exponent_sum(risk);
  const double ice = std::pow(mean, 1.0 / s);
  // d/dm m^{1/s} = (1/s) m^{1/s - 1}
  const double se = std::abs(ice / (s * mean)) * se_mean;
  return MonteCarloEstimate{ice, se};
}

}  // namespace

MonteCarloEstimate monte_carlo_ice(const Pmf& p0, const OddsProfile& odds, std::span<const Pmf> bets,
                                   const RiskVector& risk, const OracleConfig& cfg) {
  auto term = [&](Index x) {
    double w = 1.0;
    for (Index k = 0; k < risk.size(); ++k) {
      w *= std::pow(bets[static_cast<size_t>(k)](x) * odds.odds(k)(x), 1.0 - risk[k]);
    }
    return w;
  };
  return run_monte_carlo(p0.mass(), term, risk, cfg);
}

MonteCarloEstimate monte_carlo_ice(const JointPmf& p0, const OddsProfile& odds, std::span<const CondPmf> bets,
                                   const RiskVector& risk, const OracleConfig& cfg) {
  const Index nx = p0.outcomes_size();
  const Vector flat = Eigen::Map<const Vector>(p0.mass().data(), p0.mass().size());
  auto term = [&](Index i) {
    const Index x = i % nx;
    const Index g = i / nx;
    double w = 1.0;
    for (Index k = 0; k < risk.size(); ++k) {
      w *= std::pow(bets[static_cast<size_t>(k)](x, g) * odds.odds(k)(x), 1.0 - risk[k]);
    }
    return w;
  };
  return run_monte_carlo(flat, term, risk, cfg);
}

// --- postprocessing -------------------------------------------------------

namespace {

template <typename Value>
std::pair<std::vector<Index>, double> enumerate_maps(Index nx, Index na, Value&& value) {
  double combos = std::pow(static_cast<double>(nx), static_cast<double>(na));
  if (combos > 1e6) throw ValidationError("exhaustive enumeration exceeds the 10^6 guard");
  std::vector<Index> map(static_cast<size_t>(na), 0);
  std::vector<Index> best_map = map;
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    double v = 0.0;
    for (Index a = 0; a < na; ++a) v += value(map[static_cast<size_t>(a)], a);
    if (v > best) {
      best = v;
      best_map = map;
    }
    Index pos = na - 1;
    while (pos >= 0 && ++map[static_cast<size_t>(pos)] == nx) {
      map[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return {best_map, best};
}

}  // namespace

PostprocessingResult exhaustive_postprocessing(const Matrix& joint) {
  auto [map, best] = enumerate_maps(joint.rows(), joint.cols(), [&](Index x, Index a) { return joint(x, a); });
  return PostprocessingResult{std::move(map), best};
}

double exhaustive_risk_neutral_ce(const Matrix& joint, const Vector& odds) {
  if (odds.size() != joint.rows()) throw ValidationError("odds and joint disagree on outcomes");
  return enumerate_maps(joint.rows(), joint.cols(), [&](Index x, Index a) { return joint(x, a) * odds(x); }).second;
}

// --- high precision -------------------------------------------------------

double hp_renyi_multivariate(std::span<const double> alphas, const std::vector<std::vector<std::string>>& pmfs) {
  std::vector<std::vector<HpFloat>> masses;
  for (const auto& p : pmfs) {
    std::vector<HpFloat> col;
    for (const auto& m : p) col.push_back(parse_exact(m));
    masses.push_back(std::move(col));
  }
  const HpFloat sum = hp_power_sum(alphas, masses);
  return static_cast<double>(boost::multiprecision::log(sum) / HpFloat(hp_pivot(alphas) - 1.0));
}

double hp_renyi_conditional(std::span<const double> alphas, double beta,
                            const std::vector<std::vector<std::vector<std::string>>>& conditionals,
                            const std::vector<std::string>& p_g) {
  HpFloat outer = 0;
  for (size_t g = 0; g < p_g.size(); ++g) {
    std::vector<std::vector<HpFloat>> masses;
    for (const auto& cond : conditionals) {
      std::vector<HpFloat> col;
      for (const auto& m : cond[g]) col.push_back(parse_exact(m));
      masses.push_back(std::move(col));
    }
    outer += parse_exact(p_g[g]) * boost::multiprecision::pow(hp_power_sum(alphas, masses), HpFloat(1) / HpFloat(beta));
  }
  return static_cast<double>(HpFloat(beta) / HpFloat(hp_pivot(alphas) - 1.0) * boost::multiprecision::log(outer));
}

}  // namespace renyibet::oracle
