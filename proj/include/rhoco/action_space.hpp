#pragma once

#include <Eigen/Dense>

#include "rhoco/errors.hpp"

namespace rhoco {

/// Axis-aligned box of feasible actions. All algorithms project onto it, so
/// it also fixes the diameter D that the regret constants depend on.
class ActionSpace {
public:
  ActionSpace(Eigen::VectorXd lower, Eigen::VectorXd upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() == 0) throw ConfigError("ActionSpace: empty bounds");
    if (lower_.size() != upper_.size())
      throw ConfigError("ActionSpace: lower/upper dimension mismatch");
    if (!lower_.allFinite() || !upper_.allFinite())
      throw ConfigError("ActionSpace: bounds must be finite");
    if ((lower_.array() > upper_.array()).any())
      throw ConfigError("ActionSpace: lower bound exceeds upper bound");
    diameter_ = (upper_ - lower_).norm();
    if (diameter_ <= 0.0)
      throw ConfigError("ActionSpace: box has zero diameter");
  }

  static ActionSpace interval(double lo, double hi) {
    Eigen::VectorXd l(1), u(1);
    l << lo;
    u << hi;
    return ActionSpace(std::move(l), std::move(u));
  }

  static ActionSpace cube(int n, double lo, double hi) {
    return ActionSpace(Eigen::VectorXd::Constant(n, lo),
                       Eigen::VectorXd::Constant(n, hi));
  }

  int dim() const { return static_cast<int>(lower_.size()); }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }
  double diameter() const { return diameter_; }

  /// Euclidean projection; for a box this is the coordinate-wise clamp.
  Eigen::VectorXd project(const Eigen::VectorXd& p) const {
    check_dim(p);
    return p.cwiseMax(lower_).cwiseMin(upper_);
  }

  /// In-place variant for hot loops.
  void project_in_place(Eigen::VectorXd& p) const {
    check_dim(p);
    p = p.cwiseMax(lower_).cwiseMin(upper_);
  }

  bool contains(const Eigen::VectorXd& p, double tol = 0.0) const {
    check_dim(p);
    return (p.array() >= lower_.array() - tol).all() &&
           (p.array() <= upper_.array() + tol).all();
  }

private:
  void check_dim(const Eigen::VectorXd& p) const {
    if (p.size() != lower_.size())
      throw ConfigError("ActionSpace: point dimension mismatch");
  }

  Eigen::VectorXd lower_, upper_;
  double diameter_;
};

} // namespace rhoco
