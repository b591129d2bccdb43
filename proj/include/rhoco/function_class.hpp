#pragma once

#include <vector>

#include "rhoco/action_space.hpp"
#include "rhoco/quadratic_cost.hpp"

namespace rhoco {

/// Parameters of the function class the stage costs are drawn from:
/// every f_t is alpha-strongly convex, l-smooth, and has gradient norm at
/// most G over the action space. The regret guarantees are stated in terms
/// of these three numbers.
struct FunctionClassParams {
  double alpha = 0.0;
  double l = 0.0;
  double G = 0.0;

  void validate() const {
    if (!(alpha > 0.0) || !(l >= alpha) || !(G > 0.0))
      throw ConfigError("FunctionClassParams: need 0 < alpha <= l and G > 0");
  }
};

namespace detail {

/// sup over the box of ||Px + q||. The squared norm is convex, so the
/// maximum sits at a vertex; enumerate them exactly in low dimension and
/// fall back to the Lipschitz bound ||grad at center|| + lmax * D/2 above.
inline double max_gradient_norm(const QuadraticStageCost& cost,
                                const ActionSpace& space) {
  const int n = space.dim();
  if (n <= 12) {
    double best = 0.0;
    Eigen::VectorXd v(n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      for (int i = 0; i < n; ++i)
        v[i] = (mask >> i & 1u) ? space.upper()[i] : space.lower()[i];
      best = std::max(best, cost.gradient(v).norm());
    }
    return best;
  }
  const Eigen::VectorXd center = (space.lower() + space.upper()) / 2.0;
  return cost.gradient(center).norm() +
         cost.max_curvature() * space.diameter() / 2.0;
}

} // namespace detail

/// Tightest class parameters containing the given costs over the box.
inline FunctionClassParams deduce_class_params(
    const std::vector<QuadraticStageCost>& costs, const ActionSpace& space) {
  if (costs.empty()) throw ConfigError("deduce_class_params: no costs");
  FunctionClassParams p;
  p.alpha = costs.front().min_curvature();
  p.l = costs.front().max_curvature();
  p.G = 0.0;
  for (const auto& c : costs) {
    if (c.dim() != space.dim())
      throw ConfigError("deduce_class_params: cost dimension mismatch");
    p.alpha = std::min(p.alpha, c.min_curvature());
    p.l = std::max(p.l, c.max_curvature());
    p.G = std::max(p.G, detail::max_gradient_norm(c, space));
  }
  if (p.G <= 0.0) p.G = 1e-300; // all-constant gradients cannot occur for PD quadratics
  p.validate();
  return p;
}

/// Check that declared parameters really contain every cost.
inline void validate_class_params(const FunctionClassParams& declared,
                                  const std::vector<QuadraticStageCost>& costs,
                                  const ActionSpace& space) {
  declared.validate();
  const FunctionClassParams tight = deduce_class_params(costs, space);
  const double slack = 1e-9 * std::max({1.0, tight.l, tight.G});
  if (declared.alpha > tight.alpha + slack)
    throw ConfigError("FunctionClassParams: declared alpha exceeds actual strong convexity");
  if (declared.l < tight.l - slack)
    throw ConfigError("FunctionClassParams: declared l below actual smoothness");
  if (declared.G < tight.G - slack)
    throw ConfigError("FunctionClassParams: declared G below actual gradient bound");
}

} // namespace rhoco
