#pragma once

#include <optional>
#include <vector>

#include "rhoco/action_space.hpp"
#include "rhoco/function_class.hpp"
#include "rhoco/quadratic_cost.hpp"
#include "rhoco/trajectory.hpp"

namespace rhoco {

/// An instance of the smoothed online problem: stage costs f_1..f_T, a
/// switching weight beta, a starting point x_0 and the feasible box. The
/// total cost of a trajectory x_1..x_T is
///   sum_t f_t(x_t) + (beta/2) ||x_t - x_{t-1}||^2.
///
/// Stage minimizers over the box are computed once at construction; they
/// drive the path-length measure sum_t ||theta_t - theta_{t-1}|| (theta_0 =
/// x_0) that all regret bounds scale with.
class CostSequence {
public:
  CostSequence(std::vector<QuadraticStageCost> costs, double beta,
               Eigen::VectorXd x0, ActionSpace space,
               std::optional<FunctionClassParams> declared = std::nullopt)
      : costs_(std::move(costs)), beta_(beta), x0_(std::move(x0)),
        space_(std::move(space)) {
    if (costs_.empty())
      throw ConfigError("CostSequence: need at least one stage");
    if (!(beta_ >= 0.0) || !std::isfinite(beta_))
      throw ConfigError("CostSequence: beta must be finite and >= 0");
    for (const auto& c : costs_)
      if (c.dim() != space_.dim())
        throw ConfigError("CostSequence: cost dimension mismatch");
    if (x0_.size() != space_.dim())
      throw ConfigError("CostSequence: x0 dimension mismatch");
    if (!space_.contains(x0_))
      throw ConfigError("CostSequence: x0 outside the action space");

    if (declared) {
      validate_class_params(*declared, costs_, space_);
      params_ = *declared;
    } else {
      params_ = deduce_class_params(costs_, space_);
    }

    minimizers_.reserve(costs_.size());
    for (const auto& c : costs_)
      minimizers_.push_back(c.constrained_minimizer(space_));
  }

  static CostSequence isotropic(double alpha,
                                const std::vector<Eigen::VectorXd>& thetas,
                                double beta, Eigen::VectorXd x0,
                                ActionSpace space,
                                std::optional<FunctionClassParams> declared = std::nullopt) {
    std::vector<QuadraticStageCost> costs;
    costs.reserve(thetas.size());
    for (const auto& th : thetas)
      costs.push_back(QuadraticStageCost::isotropic(alpha, th));
    return CostSequence(std::move(costs), beta, std::move(x0), std::move(space),
                        std::move(declared));
  }

  int horizon() const { return static_cast<int>(costs_.size()); }
  int dim() const { return space_.dim(); }
  double beta() const { return beta_; }
  const Eigen::VectorXd& x0() const { return x0_; }
  const ActionSpace& space() const { return space_; }
  const FunctionClassParams& class_params() const { return params_; }

  /// Stage costs are 1-indexed throughout, matching the time index t.
  const QuadraticStageCost& cost(int t) const {
    check_stage(t);
    return costs_[static_cast<std::size_t>(t - 1)];
  }

  double stage_value(int t, const Eigen::VectorXd& x) const { return cost(t).value(x); }

  Eigen::VectorXd stage_gradient(int t, const Eigen::VectorXd& x) const {
    return cost(t).gradient(x);
  }

  /// Minimizer of f_t over the box.
  const Eigen::VectorXd& stage_minimizer(int t) const {
    check_stage(t);
    return minimizers_[static_cast<std::size_t>(t - 1)];
  }

  bool all_isotropic() const {
    for (const auto& c : costs_)
      if (!c.is_isotropic()) return false;
    return true;
  }

  double total_cost(const Trajectory& traj) const {
    if (traj.size() != horizon())
      throw ConfigError("CostSequence: trajectory length mismatch");
    double total = 0.0;
    const Eigen::VectorXd* prev = &x0_;
    for (int t = 1; t <= horizon(); ++t) {
      const Eigen::VectorXd& x = traj[t - 1];
      total += cost(t).value(x) + 0.5 * beta_ * (x - *prev).squaredNorm();
      prev = &x;
    }
    return total;
  }

  /// Gradient of the total cost with respect to x_t, given its neighbours.
  /// For t = T there is no successor and x_next is ignored.
  Eigen::VectorXd partial_gradient(int t, const Eigen::VectorXd& x_prev,
                                   const Eigen::VectorXd& x_t,
                                   const Eigen::VectorXd& x_next) const {
    check_stage(t);
    if (t < horizon())
      return cost(t).gradient(x_t) + beta_ * (2.0 * x_t - x_prev - x_next);
    return cost(t).gradient(x_t) + beta_ * (x_t - x_prev);
  }

  /// Stacked gradient of the total cost at a full trajectory.
  Eigen::VectorXd total_gradient(const Trajectory& traj) const {
    if (traj.size() != horizon())
      throw ConfigError("CostSequence: trajectory length mismatch");
    const int T = horizon(), n = dim();
    Eigen::VectorXd g(static_cast<Eigen::Index>(T) * n);
    for (int t = 1; t <= T; ++t) {
      const Eigen::VectorXd& xp = (t == 1) ? x0_ : traj[t - 2];
      const Eigen::VectorXd& xn = (t == T) ? traj[t - 1] : traj[t];
      g.segment(static_cast<Eigen::Index>(t - 1) * n, n) =
          partial_gradient(t, xp, traj[t - 1], xn);
    }
    return g;
  }

  /// Smoothness constant of the total cost: l + 4 beta.
  double smoothness() const { return params_.l + 4.0 * beta_; }

  /// Condition number of the total cost: (l + 4 beta) / alpha.
  double condition_number() const { return smoothness() / params_.alpha; }

  double path_length() const {
    double sum = 0.0;
    const Eigen::VectorXd* prev = &x0_;
    for (const auto& th : minimizers_) {
      sum += (th - *prev).norm();
      prev = &th;
    }
    return sum;
  }

private:
  void check_stage(int t) const {
    if (t < 1 || t > horizon())
      throw ConfigError("CostSequence: stage index out of range");
  }

  std::vector<QuadraticStageCost> costs_;
  double beta_;
  Eigen::VectorXd x0_;
  ActionSpace space_;
  FunctionClassParams params_;
  std::vector<Eigen::VectorXd> minimizers_;
};

} // namespace rhoco
