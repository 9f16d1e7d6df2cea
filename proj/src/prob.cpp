#include "renyibet/prob.hpp"

#include <cmath>
#include <sstream>

namespace renyibet {
namespace {

// Checks that `v` is a probability vector and returns its (possibly
// renormalized, clamped) copy. `what` names the object for diagnostics.
Vector normalized_or_throw(const Eigen::Ref<const Vector>& v, const std::string& what) {
  if (v.size() == 0) {
    throw ValidationError(what + ": empty outcome set");
  }
  Vector out = v;
  for (Index i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out(i))) {
      throw ValidationError(what + ": non-finite mass");
    }
    if (out(i) < 0.0) {
      if (out(i) < -kNormTolerance) {
        std::ostringstream msg;
        msg << what << ": negative mass " << out(i) << " at index " << i;
        throw ValidationError(msg.str());
      }
      out(i) = 0.0;
    }
  }
  const double total = out.sum();
  if (std::abs(total - 1.0) > kRenormalizeLimit) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": masses sum to " << total << ", not 1";
    throw ValidationError(msg.str());
  }
  out /= total;
  return out;
}

void check_labels(const Labels& labels, Index n, const std::string& what) {
  if (static_cast<Index>(labels.size()) != n) {
    throw ValidationError(what + ": label count does not match mass count");
  }
}

}  // namespace

Labels index_labels(Index n) {
  Labels out;
  out.reserve(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

// --- Pmf ------------------------------------------------------------------

Pmf::Pmf(Vector mass) : Pmf(index_labels(mass.size()), mass) {}

Pmf::Pmf(Labels outcomes, Vector mass)
    : outcomes_(std::move(outcomes)), mass_(normalized_or_throw(mass, "Pmf")) {
  check_labels(outcomes_, mass_.size(), "Pmf");
}

Pmf Pmf::uniform(Index n) {
  if (n <= 0) throw ValidationError("Pmf::uniform: n must be positive");
  return Pmf(Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

Pmf Pmf::point(Index n, Index at) {
  if (at < 0 || at >= n) throw ValidationError("Pmf::point: index out of range");
  Vector v = Vector::Zero(n);
  v(at) = 1.0;
  return Pmf(std::move(v));
}

bool Pmf::full_support() const { return (mass_.array() >= kSupportFloor).all(); }

// --- CondPmf --------------------------------------------------------------

CondPmf::CondPmf(Matrix mass)
    : CondPmf(index_labels(mass.rows()), index_labels(mass.cols()), mass) {}

CondPmf::CondPmf(Labels outcomes, Labels conditions, Matrix mass)
    : outcomes_(std::move(outcomes)), conditions_(std::move(conditions)), mass_(std::move(mass)) {
  if (mass_.cols() == 0) throw ValidationError("CondPmf: no conditioning outcomes");
  for (Index g = 0; g < mass_.cols(); ++g) {
    mass_.col(g) = normalized_or_throw(mass_.col(g), "CondPmf column " + std::to_string(g));
  }
  check_labels(outcomes_, mass_.rows(), "CondPmf outcomes");
  check_labels(conditions_, mass_.cols(), "CondPmf conditions");
}

CondPmf CondPmf::constant(const Pmf& p, Index conditions) {
  if (conditions <= 0) throw ValidationError("CondPmf::constant: need at least one condition");
  return CondPmf(p.outcomes(), index_labels(conditions),
                 p.mass().replicate(1, conditions));
}

Pmf CondPmf::column(Index g) const { return Pmf(outcomes_, mass_.col(g)); }

bool CondPmf::full_support() const { return (mass_.array() >= kSupportFloor).all(); }

// --- JointPmf -------------------------------------------------------------

JointPmf::JointPmf(Matrix mass)
    : JointPmf(index_labels(mass.rows()), index_labels(mass.cols()), mass) {}

JointPmf::JointPmf(Labels outcomes, Labels conditions, Matrix mass)
    : outcomes_(std::move(outcomes)), conditions_(std::move(conditions)) {
  if (mass.size() == 0) throw ValidationError("JointPmf: empty");
  const Vector flat = Eigen::Map<const Vector>(mass.data(), mass.size());
  const Vector checked = normalized_or_throw(flat, "JointPmf");
  mass_ = Eigen::Map<const Matrix>(checked.data(), mass.rows(), mass.cols());
  check_labels(outcomes_, mass_.rows(), "JointPmf outcomes");
  check_labels(conditions_, mass_.cols(), "JointPmf conditions");
}

JointPmf JointPmf::compose(const CondPmf& x_given_g, const Pmf& g_marginal) {
  if (x_given_g.conditions_size() != g_marginal.size()) {
    throw ValidationError("JointPmf::compose: conditioning alphabet mismatch");
  }
  return JointPmf(x_given_g.outcomes(), g_marginal.outcomes(),
                  x_given_g.mass() * g_marginal.mass().asDiagonal());
}

JointPmf JointPmf::product(const Pmf& x_marginal, const Pmf& g_marginal) {
  return JointPmf(x_marginal.outcomes(), g_marginal.outcomes(),
                  x_marginal.mass() * g_marginal.mass().transpose());
}

// --- StochasticOp ---------------------------------------------------------

StochasticOp::StochasticOp(Matrix kernel)
    : StochasticOp(index_labels(kernel.cols()), index_labels(kernel.rows()), kernel) {}

StochasticOp::StochasticOp(Labels inputs, Labels outputs, Matrix kernel)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), kernel_(std::move(kernel)) {
  if (kernel_.cols() == 0) throw ValidationError("StochasticOp: no input outcomes");
  for (Index x = 0; x < kernel_.cols(); ++x) {
    kernel_.col(x) = normalized_or_throw(kernel_.col(x), "StochasticOp column " + std::to_string(x));
  }
  check_labels(inputs_, kernel_.cols(), "StochasticOp inputs");
  check_labels(outputs_, kernel_.rows(), "StochasticOp outputs");
}

StochasticOp StochasticOp::identity(Index n) { return StochasticOp(Matrix::Identity(n, n)); }

StochasticOp StochasticOp::constant(const Pmf& r, Index inputs) {
  return StochasticOp(index_labels(inputs), r.outcomes(), r.mass().replicate(1, inputs));
}

// --- operations -----------------------------------------------------------

Pmf apply_stochastic(const StochasticOp& op, const Pmf& p) {
  if (op.inputs_size() != p.size()) {
    throw ValidationError("apply_stochastic: kernel expects " + std::to_string(op.inputs_size()) +
                          " inputs, PMF has " + std::to_string(p.size()));
  }
  return Pmf(op.outputs(), op.kernel() * p.mass());
}

StochasticOp compose(const StochasticOp& outer, const StochasticOp& inner) {
  if (outer.inputs_size() != inner.outputs_size()) {
    throw ValidationError("compose: intermediate alphabet mismatch");
  }
  return StochasticOp(inner.inputs(), outer.outputs(), outer.kernel() * inner.kernel());
}

StochasticOp bayes_pseudo_inverse(const StochasticOp& op, const Pmf& p) {
  if (!p.full_support()) {
    throw ValidationError("bayes_pseudo_inverse: prior must have full support");
  }
  const Pmf q = apply_stochastic(op, p);
  if (!q.full_support()) {
    throw SingularityError("bayes_pseudo_inverse: degenerate posterior, image PMF has a zero entry");
  }
  // reversed(x, y) = p(x) t(y|x) / q(y)
  Matrix reversed = p.mass().asDiagonal() * op.kernel().transpose();
  reversed = reversed * q.mass().cwiseInverse().asDiagonal();
  return StochasticOp(op.outputs(), op.inputs(), std::move(reversed));
}

bool JointDecomposition::all_defined() const {
  for (bool d : defined) {
    if (!d) return false;
  }
  return true;
}

JointDecomposition marginals_and_conditionals(const JointPmf& j) {
  const Vector px = j.mass().rowwise().sum();
  const Vector pg = j.mass().colwise().sum().transpose();
  Matrix cond(j.outcomes_size(), j.conditions_size());
  std::vector<bool> defined(static_cast<size_t>(j.conditions_size()));
  const double uniform = 1.0 / static_cast<double>(j.outcomes_size());
  for (Index g = 0; g < j.conditions_size(); ++g) {
    if (pg(g) > 0.0) {
      cond.col(g) = j.mass().col(g) / pg(g);
      defined[static_cast<size_t>(g)] = true;
    } else {
      cond.col(g).setConstant(uniform);
      defined[static_cast<size_t>(g)] = false;
    }
  }
  return JointDecomposition{Pmf(j.outcomes(), px), Pmf(j.conditions(), pg),
                            CondPmf(j.outcomes(), j.conditions(), std::move(cond)),
                            std::move(defined)};
}

double expectation(const Pmf& p, const Vector& f) {
  if (f.size() != p.size()) throw ValidationError("expectation: domain mismatch");
  return p.mass().dot(f);
}

CondPmf apply_conditional_kernels(const std::vector<StochasticOp>& kernels, const CondPmf& p) {
  if (static_cast<Index>(kernels.size()) != p.conditions_size()) {
    throw ValidationError("apply_conditional_kernels: need one kernel per conditioning outcome");
  }
  const Index out = kernels.front().outputs_size();
  Matrix q(out, p.conditions_size());
  for (Index g = 0; g < p.conditions_size(); ++g) {
    const auto& t = kernels[static_cast<size_t>(g)];
    if (t.inputs_size() != p.outcomes_size() || t.outputs_size() != out) {
      throw ValidationError("apply_conditional_kernels: kernel shape mismatch");
    }
    q.col(g) = t.kernel() * p.mass().col(g);
  }
  return CondPmf(kernels.front().outputs(), p.conditions(), std::move(q));
}

}  // namespace renyibet
