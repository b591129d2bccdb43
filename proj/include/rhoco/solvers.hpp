#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "rhoco/errors.hpp"

namespace rhoco {

struct PnagOptions {
  double alpha = 1.0;      // strong convexity modulus of the objective
  double smoothness = 1.0; // gradient Lipschitz constant L >= alpha
  double tolerance = 1e-9; // stop when the projected-gradient mapping norm falls below this
  int max_iterations = 10000;
};

struct PnagResult {
  Eigen::VectorXd point;
  double grad_map_norm = 0.0;
  int iterations = 0;
  // Upper bound on f(point) - min f, from strong convexity. With step
  // eta = 1/L the mapping G(y) = (y - proj(y - eta grad(y))) / eta satisfies
  //   f(y+) - f* <= ||G(y)||^2 * (1/(2 alpha) + eta + L eta^2 / 2),
  // so the certificate constant is 1/(2 alpha) + 3/(2 L).
  double certified_gap = 0.0;
};

/// Projected Nesterov accelerated gradient for strongly convex objectives.
/// Momentum is reset whenever the objective fails to decrease, which keeps
/// the iteration monotone without giving up the accelerated rate.
///
/// value(x) -> double, grad(x) -> VectorXd, project(x) -> VectorXd onto the
/// feasible set. value/grad must be defined on all of R^n because the
/// extrapolated point can leave the feasible set.
template <class Value, class Grad, class Project>
PnagResult projected_nag(Eigen::VectorXd z0, Value&& value, Grad&& grad,
                         Project&& project, const PnagOptions& opt) {
  if (!(opt.alpha > 0.0) || !(opt.smoothness >= opt.alpha))
    throw ConfigError("projected_nag: need 0 < alpha <= smoothness");
  if (!(opt.tolerance > 0.0))
    throw ConfigError("projected_nag: tolerance must be positive");

  const double eta = 1.0 / opt.smoothness;
  const double root = std::sqrt(opt.alpha * eta);
  const double lambda = (1.0 - root) / (1.0 + root);
  const double cert = 1.0 / (2.0 * opt.alpha) + 1.5 * eta;

  Eigen::VectorXd x = project(std::move(z0));
  Eigen::VectorXd y = x;
  double fx = value(x);
  double best_norm = std::numeric_limits<double>::infinity();

  for (int k = 1; k <= opt.max_iterations; ++k) {
    Eigen::VectorXd x_next = project(y - eta * grad(y));
    const double gnorm = (y - x_next).norm() / eta;
    if (gnorm <= opt.tolerance) {
      return PnagResult{std::move(x_next), gnorm, k, cert * gnorm * gnorm};
    }
    best_norm = std::min(best_norm, gnorm);
    const double fn = value(x_next);
    if (fn > fx) {
      y = x_next; // restart momentum
    } else {
      y = x_next + lambda * (x_next - x);
    }
    x = std::move(x_next);
    fx = fn;
  }
  throw SolverError("projected_nag: iteration cap reached", best_norm);
}

} // namespace rhoco
