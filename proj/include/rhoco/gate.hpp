#pragma once

#include <string>

#include "rhoco/cost_sequence.hpp"
#include "rhoco/errors.hpp"

namespace rhoco {

namespace detail {

// The one descent expression shared by the online algorithms and their
// offline iterate counterparts, so that equal inputs give equal floats.
inline Eigen::VectorXd gd_update(const CostSequence& seq, int t,
                                 const Eigen::VectorXd& x_prev,
                                 const Eigen::VectorXd& x_t,
                                 const Eigen::VectorXd& x_next, double eta) {
  return seq.space().project(x_t - eta * seq.partial_gradient(t, x_prev, x_t, x_next));
}

inline Eigen::VectorXd ogd_update(const CostSequence& seq, int idx,
                                  const Eigen::VectorXd& x, double gamma) {
  return seq.space().project(x - gamma * seq.stage_gradient(idx, x));
}

inline Eigen::VectorXd momentum_combine(const Eigen::VectorXd& x_new,
                                        const Eigen::VectorXd& x_old,
                                        double lambda) {
  return (1.0 + lambda) * x_new - lambda * x_old;
}

} // namespace detail

/// Enforces the prediction-window information model: at stage s only
/// f_1..f_{s+W-1} have been revealed, and any touch of a later cost is a
/// bug. All cost access by online algorithms goes through this wrapper,
/// which also counts stage-gradient evaluations.
class GatedSequence {
public:
  explicit GatedSequence(const CostSequence& seq) : seq_(seq) {}

  const CostSequence& sequence() const { return seq_; }

  /// Monotone; revealing past T is harmless (there is nothing there).
  void reveal_up_to(int t) {
    limit_ = std::max(limit_, std::min(t, seq_.horizon()));
  }

  int revealed() const { return limit_; }

  long gradient_evaluations() const { return evals_; }

  double stage_value(int t, const Eigen::VectorXd& x) const {
    check(t);
    return seq_.stage_value(t, x);
  }

  Eigen::VectorXd stage_gradient(int t, const Eigen::VectorXd& x) {
    check(t);
    ++evals_;
    return seq_.stage_gradient(t, x);
  }

  Eigen::VectorXd partial_gradient(int t, const Eigen::VectorXd& x_prev,
                                   const Eigen::VectorXd& x_t,
                                   const Eigen::VectorXd& x_next) {
    check(t);
    ++evals_;
    return seq_.partial_gradient(t, x_prev, x_t, x_next);
  }

  const Eigen::VectorXd& stage_minimizer(int t) const {
    check(t);
    return seq_.stage_minimizer(t);
  }

  Eigen::VectorXd ogd_step(int idx, const Eigen::VectorXd& x, double gamma) {
    check(idx);
    ++evals_;
    return detail::ogd_update(seq_, idx, x, gamma);
  }

  Eigen::VectorXd descent_step(int t, const Eigen::VectorXd& x_prev,
                               const Eigen::VectorXd& x_t,
                               const Eigen::VectorXd& x_next, double eta) {
    check(t);
    ++evals_;
    return detail::gd_update(seq_, t, x_prev, x_t, x_next, eta);
  }

private:
  void check(int t) const {
    if (t < 1 || t > seq_.horizon())
      throw ConfigError("GatedSequence: stage index out of range");
    if (t > limit_)
      throw GateError("information gate: cost " + std::to_string(t) +
                      " accessed with only " + std::to_string(limit_) +
                      " stages revealed");
  }

  const CostSequence& seq_;
  int limit_ = 0;
  long evals_ = 0;
};

} // namespace rhoco
