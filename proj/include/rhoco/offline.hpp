#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "rhoco/cost_sequence.hpp"
#include "rhoco/solvers.hpp"
#include "rhoco/tridiagonal.hpp"

namespace rhoco {

struct OracleResult {
  Trajectory trajectory;
  double cost = 0.0;
  // Certified upper bound on cost - min cost. Zero for exact routes.
  double optimality_gap = 0.0;
  int iterations = 0;
  std::string method;
};

/// Hindsight-optimal trajectory by accelerated projected gradient on the
/// stacked variable (x_1..x_T). The total cost is alpha-strongly convex and
/// (l + 4 beta)-smooth, so the iteration converges linearly; the stop rule
/// bounds the projected-gradient mapping, which certifies the returned gap
/// (see PnagResult for the constant).
inline OracleResult solve_offline(const CostSequence& seq, double tolerance = 1e-9,
                                  int max_iterations = 200000) {
  const int T = seq.horizon(), n = seq.dim();
  PnagOptions opt;
  opt.alpha = seq.class_params().alpha;
  opt.smoothness = seq.smoothness();
  opt.tolerance = tolerance;
  opt.max_iterations = max_iterations;

  Eigen::VectorXd init(static_cast<Eigen::Index>(T) * n);
  for (int t = 1; t <= T; ++t)
    init.segment(static_cast<Eigen::Index>(t - 1) * n, n) = seq.stage_minimizer(t);

  auto value = [&](const Eigen::VectorXd& z) {
    return seq.total_cost(Trajectory::from_stacked(z, T, n));
  };
  auto grad = [&](const Eigen::VectorXd& z) {
    return seq.total_gradient(Trajectory::from_stacked(z, T, n));
  };
  auto project = [&](const Eigen::VectorXd& z) {
    Eigen::VectorXd p = z;
    for (int t = 0; t < T; ++t) {
      auto seg = p.segment(static_cast<Eigen::Index>(t) * n, n);
      seg = seg.cwiseMax(seq.space().lower()).cwiseMin(seq.space().upper());
    }
    return p;
  };

  PnagResult res = projected_nag(std::move(init), value, grad, project, opt);
  OracleResult out;
  out.trajectory = Trajectory::from_stacked(res.point, T, n);
  out.cost = seq.total_cost(out.trajectory);
  out.optimality_gap = res.certified_gap;
  out.iterations = res.iterations;
  out.method = "projected-nag";
  return out;
}

/// Exhaustive minimization over a regular grid of the box, one grid per
/// stage coordinate. Exponential in T*n; guarded so it stays a test oracle.
/// The best grid trajectory is within (L/2) * (h * sqrt(T n) / 2)^2 of the
/// optimum, h being the largest grid spacing.
inline OracleResult brute_force_oracle(const CostSequence& seq,
                                       int grid_points_per_axis) {
  const int T = seq.horizon(), n = seq.dim();
  if (grid_points_per_axis < 2)
    throw ConfigError("brute_force_oracle: need at least two grid points per axis");
  const double combos =
      std::pow(static_cast<double>(grid_points_per_axis), static_cast<double>(T) * n);
  if (combos > 1e7)
    throw ConfigError("brute_force_oracle: grid too large (over 1e7 points)");

  const int dims = T * n;
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  Trajectory traj = Trajectory::constant(T, seq.space().lower());
  double h = 0.0;

  auto coord = [&](int d, int step) {
    const int j = d % n;
    const double lo = seq.space().lower()[j], hi = seq.space().upper()[j];
    return lo + (hi - lo) * step / (grid_points_per_axis - 1);
  };
  for (int j = 0; j < n; ++j)
    h = std::max(h, (seq.space().upper()[j] - seq.space().lower()[j]) /
                        (grid_points_per_axis - 1));

  OracleResult best;
  best.cost = std::numeric_limits<double>::infinity();
  best.method = "brute-force-grid";
  // Half a grid cell per axis, L-smooth total cost.
  best.optimality_gap = 0.5 * seq.smoothness() *
                        std::pow(0.5 * h * std::sqrt(static_cast<double>(dims)), 2);

  while (true) {
    for (int d = 0; d < dims; ++d) traj[d / n][d % n] = coord(d, idx[static_cast<std::size_t>(d)]);
    const double c = seq.total_cost(traj);
    if (c < best.cost) {
      best.cost = c;
      best.trajectory = traj;
    }
    int d = 0;
    while (d < dims && ++idx[static_cast<std::size_t>(d)] == grid_points_per_axis) {
      idx[static_cast<std::size_t>(d)] = 0;
      ++d;
    }
    if (d == dims) break;
  }
  return best;
}

/// Picks the cheapest valid oracle: per-stage minimizers when there is no
/// coupling, the closed form for centered isotropic instances, accelerated
/// projected gradient otherwise.
inline OracleResult best_oracle(const CostSequence& seq, double tolerance = 1e-9) {
  if (seq.beta() == 0.0) {
    OracleResult out;
    out.trajectory.reserve(seq.horizon());
    for (int t = 1; t <= seq.horizon(); ++t)
      out.trajectory.push_back(seq.stage_minimizer(t));
    out.cost = seq.total_cost(out.trajectory);
    out.method = "per-stage";
    return out;
  }
  const int n = seq.dim();
  if (seq.all_isotropic() && seq.x0().cwiseAbs().maxCoeff() == 0.0 &&
      seq.space().contains(Eigen::VectorXd::Zero(n))) {
    bool eligible = true;
    const double alpha = seq.cost(1).isotropic_curvature();
    for (int t = 1; t <= seq.horizon() && eligible; ++t)
      eligible = seq.cost(t).isotropic_curvature() == alpha &&
                 seq.space().contains(seq.cost(t).isotropic_center());
    if (eligible) {
      OracleResult out;
      out.trajectory = solve_isotropic_closed_form(seq);
      out.cost = seq.total_cost(out.trajectory);
      out.method = "closed-form";
      return out;
    }
  }
  return solve_offline(seq, tolerance);
}

} // namespace rhoco
