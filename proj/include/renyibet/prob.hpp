#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "renyibet/error.hpp"

namespace renyibet {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Labels = std::vector<std::string>;

/// Absolute tolerance on the total mass of a validated PMF.
inline constexpr double kNormTolerance = 1e-12;
/// Inputs whose total mass is off by more than this are rejected instead of
/// renormalized.
inline constexpr double kRenormalizeLimit = 1e-9;
/// A mass below this floor does not count towards full support.
inline constexpr double kSupportFloor = 1e-12;
/// Slack used by every inequality check on log-scale quantities.
inline constexpr double kCompareTolerance = 1e-9;

/// Default labels "0", "1", ..., "n-1".
Labels index_labels(Index n);

/// A probability mass function on a finite, ordered outcome set.
///
/// Construction validates the masses: all finite, none below -1e-12
/// (tiny negatives are clamped to zero), total within 1e-9 of one.
/// Totals within that window are renormalized, anything else throws
/// ValidationError.
class Pmf {
 public:
  explicit Pmf(Vector mass);
  Pmf(Labels outcomes, Vector mass);

  static Pmf uniform(Index n);
  static Pmf point(Index n, Index at);

  Index size() const { return mass_.size(); }
  const Vector& mass() const { return mass_; }
  double operator()(Index i) const { return mass_(i); }
  const Labels& outcomes() const { return outcomes_; }

  /// Every mass is at least kSupportFloor.
  bool full_support() const;

 private:
  Labels outcomes_;
  Vector mass_;
};

/// Conditional PMF p(x|g), stored column-wise: mass(x, g).
class CondPmf {
 public:
  explicit CondPmf(Matrix mass);
  CondPmf(Labels outcomes, Labels conditions, Matrix mass);

  /// The conditional that ignores g: every column equals `p`.
  static CondPmf constant(const Pmf& p, Index conditions);

  Index outcomes_size() const { return mass_.rows(); }
  Index conditions_size() const { return mass_.cols(); }
  const Matrix& mass() const { return mass_; }
  double operator()(Index x, Index g) const { return mass_(x, g); }
  Pmf column(Index g) const;
  const Labels& outcomes() const { return outcomes_; }
  const Labels& conditions() const { return conditions_; }

  bool full_support() const;

 private:
  Labels outcomes_;
  Labels conditions_;
  Matrix mass_;
};

/// Joint PMF p(x, g) on X x G, rows indexed by x and columns by g.
class JointPmf {
 public:
  explicit JointPmf(Matrix mass);
  JointPmf(Labels outcomes, Labels conditions, Matrix mass);

  /// p(x, g) = p(x|g) p(g).
  static JointPmf compose(const CondPmf& x_given_g, const Pmf& g_marginal);
  static JointPmf product(const Pmf& x_marginal, const Pmf& g_marginal);

  Index outcomes_size() const { return mass_.rows(); }
  Index conditions_size() const { return mass_.cols(); }
  const Matrix& mass() const { return mass_; }
  double operator()(Index x, Index g) const { return mass_(x, g); }
  const Labels& outcomes() const { return outcomes_; }
  const Labels& conditions() const { return conditions_; }

 private:
  Labels outcomes_;
  Labels conditions_;
  Matrix mass_;
};

/// Markov kernel t(y|x) in column-stochastic form: kernel(y, x), one
/// column per input outcome.
class StochasticOp {
 public:
  explicit StochasticOp(Matrix kernel);
  StochasticOp(Labels inputs, Labels outputs, Matrix kernel);

  static StochasticOp identity(Index n);
  /// Every column equals `r`, so the output forgets the input.
  static StochasticOp constant(const Pmf& r, Index inputs);

  Index inputs_size() const { return kernel_.cols(); }
  Index outputs_size() const { return kernel_.rows(); }
  const Matrix& kernel() const { return kernel_; }
  double operator()(Index y, Index x) const { return kernel_(y, x); }
  const Labels& inputs() const { return inputs_; }
  const Labels& outputs() const { return outputs_; }

 private:
  Labels inputs_;
  Labels outputs_;
  Matrix kernel_;
};

/// q(y) = sum_x t(y|x) p(x).
Pmf apply_stochastic(const StochasticOp& op, const Pmf& p);

/// Kernel of "first `inner`, then `outer`".
StochasticOp compose(const StochasticOp& outer, const StochasticOp& inner);

/// Bayes reversal t†(x|y) = p(x) t(y|x) / q(y) with q = T(p).
/// Requires full-support p; throws SingularityError when q has a zero.
StochasticOp bayes_pseudo_inverse(const StochasticOp& op, const Pmf& p);

struct JointDecomposition {
  Pmf x_marginal;
  Pmf g_marginal;
  /// Columns with zero marginal mass hold the uniform PMF and are flagged
  /// false in `defined`.
  CondPmf x_given_g;
  std::vector<bool> defined;

  bool all_defined() const;
};

JointDecomposition marginals_and_conditionals(const JointPmf& j);

/// sum_x f(x) p(x)
double expectation(const Pmf& p, const Vector& f);

/// q(y|g) = sum_x t_g(y|x) p(x|g), one kernel per conditioning value.
CondPmf apply_conditional_kernels(const std::vector<StochasticOp>& kernels,
                                  const CondPmf& p);

}  // namespace renyibet
