#pragma once

#include <chrono>
#include <vector>

#include "rhoco/cost_sequence.hpp"
#include "rhoco/gate.hpp"
#include "rhoco/online.hpp"
#include "rhoco/solvers.hpp"

namespace rhoco {

/// What the receding window assumes about stages it cannot see. Zero plays
/// the truncated problem as is; QuadraticAnchor adds
///   weight * ||x_end - theta_end||^2
/// on the last window variable, pulling it toward the latest revealed
/// per-stage minimizer.
enum class TerminalCost { Zero, QuadraticAnchor };

struct MpcConfig {
  int W = 1;
  TerminalCost terminal = TerminalCost::Zero;
  double anchor_weight = 0.0;
  double inner_tolerance = 1e-9;
  int max_inner_iterations = 10000;

  void validate() const {
    if (W < 1) throw ConfigError("MpcConfig: W must be >= 1");
    if (!(inner_tolerance > 0.0))
      throw ConfigError("MpcConfig: inner tolerance must be positive");
    if (max_inner_iterations < 1)
      throw ConfigError("MpcConfig: need at least one inner iteration");
    if (terminal == TerminalCost::QuadraticAnchor && !(anchor_weight > 0.0))
      throw ConfigError("MpcConfig: anchor terminal requires a positive weight");
    if (terminal == TerminalCost::Zero && anchor_weight != 0.0)
      throw ConfigError("MpcConfig: anchor weight set but terminal is Zero");
  }
};

struct MpcResult {
  Trajectory trajectory;
  RunStats stats;
  std::vector<int> inner_iterations; // per stage
};

/// Model predictive control over the revealed window. At stage s it solves
///   min over (x_s..x_e) in the box, e = min(s + W - 1, T):
///     sum_t f_t(x_t) + (beta/2)||x_t - x_{t-1}||^2  + terminal(x_e),
/// with x_{s-1} fixed to the decision already played, then commits x_s and
/// rolls forward. The terminal term is dropped once the window reaches T.
/// Each subproblem is solved by projected accelerated gradient, warm
/// started from the previous window shifted by one stage.
inline MpcResult run_mpc(const CostSequence& seq, const MpcConfig& config) {
  config.validate();
  const int T = seq.horizon(), n = seq.dim();
  const int W = std::min(config.W, T);
  GatedSequence gate(seq);

  MpcResult out;
  out.trajectory.reserve(T);
  out.stats.per_stage_seconds.assign(static_cast<std::size_t>(T), 0.0);
  out.stats.per_stage_grad_evals.assign(static_cast<std::size_t>(T), 0);
  out.inner_iterations.assign(static_cast<std::size_t>(T), 0);

  Eigen::VectorXd x_prev = seq.x0();
  Eigen::VectorXd warm; // stacked previous window solution

  for (int s = 1; s <= T; ++s) {
    const auto t0 = std::chrono::steady_clock::now();
    const long e0 = gate.gradient_evaluations();
    const int end = std::min(s + W - 1, T);
    const int len = end - s + 1;
    gate.reveal_up_to(end);
    const bool use_terminal =
        end < T && config.terminal == TerminalCost::QuadraticAnchor;
    const Eigen::VectorXd* anchor = use_terminal ? &gate.stage_minimizer(end) : nullptr;

    auto block = [n](const Eigen::VectorXd& z, int j) { return z.segment(j * n, n); };

    auto value = [&](const Eigen::VectorXd& z) {
      double v = 0.0;
      for (int j = 0; j < len; ++j) {
        const Eigen::VectorXd xj = block(z, j);
        const Eigen::VectorXd& before = (j == 0) ? x_prev : Eigen::VectorXd(block(z, j - 1));
        v += gate.stage_value(s + j, xj) + 0.5 * seq.beta() * (xj - before).squaredNorm();
      }
      if (use_terminal)
        v += config.anchor_weight * (block(z, len - 1) - *anchor).squaredNorm();
      return v;
    };

    auto grad = [&](const Eigen::VectorXd& z) {
      Eigen::VectorXd g(static_cast<Eigen::Index>(len) * n);
      for (int j = 0; j < len; ++j) {
        const Eigen::VectorXd xj = block(z, j);
        Eigen::VectorXd gj = gate.stage_gradient(s + j, xj);
        gj += seq.beta() * (xj - ((j == 0) ? x_prev : Eigen::VectorXd(block(z, j - 1))));
        if (j + 1 < len) gj -= seq.beta() * (Eigen::VectorXd(block(z, j + 1)) - xj);
        g.segment(static_cast<Eigen::Index>(j) * n, n) = gj;
      }
      if (use_terminal)
        g.tail(n) += 2.0 * config.anchor_weight * (block(z, len - 1) - *anchor);
      return g;
    };

    auto project = [&](const Eigen::VectorXd& z) {
      Eigen::VectorXd p = z;
      for (int j = 0; j < len; ++j) {
        auto seg = p.segment(static_cast<Eigen::Index>(j) * n, n);
        seg = seg.cwiseMax(seq.space().lower()).cwiseMin(seq.space().upper());
      }
      return p;
    };

    // Shift last window by one stage for the warm start.
    Eigen::VectorXd init(static_cast<Eigen::Index>(len) * n);
    if (warm.size() == 0) {
      for (int j = 0; j < len; ++j) init.segment(static_cast<Eigen::Index>(j) * n, n) = x_prev;
    } else {
      const int prev_len = static_cast<int>(warm.size()) / n;
      for (int j = 0; j < len; ++j) {
        const int src = std::min(j + 1, prev_len - 1);
        init.segment(static_cast<Eigen::Index>(j) * n, n) = warm.segment(src * n, n);
      }
    }

    PnagOptions opt;
    opt.alpha = seq.class_params().alpha;
    opt.smoothness = seq.smoothness() + (use_terminal ? 2.0 * config.anchor_weight : 0.0);
    opt.tolerance = config.inner_tolerance;
    opt.max_iterations = config.max_inner_iterations;

    PnagResult sol;
    try {
      sol = projected_nag(std::move(init), value, grad, project, opt);
    } catch (const SolverError& e) {
      throw SolverError("run_mpc: window solve failed at stage " + std::to_string(s),
                        e.residual());
    }

    warm = sol.point;
    x_prev = warm.head(n);
    out.trajectory.push_back(x_prev);
    out.inner_iterations[static_cast<std::size_t>(s - 1)] = sol.iterations;
    out.stats.per_stage_seconds[static_cast<std::size_t>(s - 1)] = detail::seconds_since(t0);
    out.stats.per_stage_grad_evals[static_cast<std::size_t>(s - 1)] =
        gate.gradient_evaluations() - e0;
  }
  return out;
}

} // namespace rhoco
