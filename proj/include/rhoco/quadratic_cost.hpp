#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "rhoco/action_space.hpp"
#include "rhoco/errors.hpp"
#include "rhoco/solvers.hpp"

namespace rhoco {

/// One stage cost f(x) = 0.5 x'Px + q'x + c with P symmetric positive
/// definite. The isotropic special case f(x) = (alpha/2)||x - theta||^2 + c
/// is tagged so that downstream code can route it to closed-form machinery.
class QuadraticStageCost {
public:
  QuadraticStageCost(Eigen::MatrixXd P, Eigen::VectorXd q, double c)
      : P_(std::move(P)), q_(std::move(q)), c_(c) {
    if (P_.rows() == 0 || P_.rows() != P_.cols())
      throw ConfigError("QuadraticStageCost: P must be square and non-empty");
    if (q_.size() != P_.rows())
      throw ConfigError("QuadraticStageCost: q dimension mismatch");
    if (!P_.allFinite() || !q_.allFinite() || !std::isfinite(c_))
      throw ConfigError("QuadraticStageCost: non-finite data");
    const double scale = std::max(1.0, P_.cwiseAbs().maxCoeff());
    if ((P_ - P_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw ConfigError("QuadraticStageCost: P must be symmetric");
    P_ = ((P_ + P_.transpose()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P_, Eigen::EigenvaluesOnly);
    min_curv_ = es.eigenvalues().minCoeff();
    max_curv_ = es.eigenvalues().maxCoeff();
    if (!(min_curv_ > 0.0))
      throw ConfigError("QuadraticStageCost: P must be positive definite");

    diagonal_ = true;
    for (int i = 0; i < P_.rows() && diagonal_; ++i)
      for (int j = 0; j < P_.cols(); ++j)
        if (i != j && P_(i, j) != 0.0) { diagonal_ = false; break; }

    // Detect P = alpha*I so centers are recoverable from general data too.
    isotropic_ = diagonal_;
    for (int i = 1; i < P_.rows() && isotropic_; ++i)
      if (P_(i, i) != P_(0, 0)) isotropic_ = false;
    if (isotropic_) iso_theta_ = -q_ / P_(0, 0);
  }

  static QuadraticStageCost isotropic(double alpha, Eigen::VectorXd theta) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
      throw ConfigError("QuadraticStageCost: curvature must be positive");
    if (theta.size() == 0 || !theta.allFinite())
      throw ConfigError("QuadraticStageCost: bad center");
    const int n = static_cast<int>(theta.size());
    const double c = 0.5 * alpha * theta.squaredNorm();
    return QuadraticStageCost(alpha * Eigen::MatrixXd::Identity(n, n),
                              -alpha * theta, c);
  }

  int dim() const { return static_cast<int>(q_.size()); }
  const Eigen::MatrixXd& quadratic() const { return P_; }
  const Eigen::VectorXd& linear() const { return q_; }
  double offset() const { return c_; }

  double value(const Eigen::VectorXd& x) const {
    check_dim(x);
    return 0.5 * x.dot(P_ * x) + q_.dot(x) + c_;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    check_dim(x);
    return P_ * x + q_;
  }

  double min_curvature() const { return min_curv_; }
  double max_curvature() const { return max_curv_; }
  bool is_isotropic() const { return isotropic_; }
  bool has_diagonal_quadratic() const { return diagonal_; }

  double isotropic_curvature() const {
    require_isotropic();
    return P_(0, 0);
  }

  const Eigen::VectorXd& isotropic_center() const {
    require_isotropic();
    return iso_theta_;
  }

  Eigen::VectorXd unconstrained_minimizer() const {
    return P_.llt().solve(-q_);
  }

  /// Minimizer over the box. Exact clamp when P is diagonal (the problem is
  /// coordinate-separable); otherwise solved to a 1e-10 gradient-mapping
  /// tolerance, which is far below every tolerance used on top of it.
  Eigen::VectorXd constrained_minimizer(const ActionSpace& space) const {
    if (space.dim() != dim())
      throw ConfigError("QuadraticStageCost: space dimension mismatch");
    Eigen::VectorXd clamp = space.project(unconstrained_minimizer());
    if (diagonal_) return clamp;
    PnagOptions opt;
    opt.alpha = min_curv_;
    opt.smoothness = max_curv_;
    opt.tolerance = 1e-10;
    opt.max_iterations = 100000;
    auto res = projected_nag(
        std::move(clamp), [&](const Eigen::VectorXd& x) { return value(x); },
        [&](const Eigen::VectorXd& x) { return gradient(x); },
        [&](const Eigen::VectorXd& x) { return space.project(x); }, opt);
    return res.point;
  }

private:
  void check_dim(const Eigen::VectorXd& x) const {
    if (x.size() != q_.size())
      throw ConfigError("QuadraticStageCost: point dimension mismatch");
  }
  void require_isotropic() const {
    if (!isotropic_)
      throw ConfigError("QuadraticStageCost: not isotropic");
  }

  Eigen::MatrixXd P_;
  Eigen::VectorXd q_;
  double c_;
  double min_curv_ = 0.0, max_curv_ = 0.0;
  bool diagonal_ = false, isotropic_ = false;
  Eigen::VectorXd iso_theta_;
};

} // namespace rhoco
