#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "rhoco/bounds.hpp"
#include "rhoco/cost_sequence.hpp"
#include "rhoco/offline.hpp"
#include "rhoco/rng.hpp"

namespace rhoco {

/// Parameters of the adversarial isotropic families used to exhibit the
/// lower bounds: scalar costs (alpha/2)(x - theta_t)^2 on the box
/// [-D/2, D/2], starting at x_0 = 0, with the per-stage minimizers allowed
/// to move by at most path_budget in total.
struct AdversaryConfig {
  int T = 40;
  int W = 0;
  double alpha = 1.0;
  double beta = 1.0;
  double D = 1.0;
  double path_budget = 10.0; // L_T
  std::uint64_t seed = 1;

  void validate() const {
    if (T < 1 || W < 0)
      throw ConfigError("AdversaryConfig: need T >= 1 and W >= 0");
    if (!(alpha > 0.0) || !(beta >= 0.0) || !(D > 0.0))
      throw ConfigError("AdversaryConfig: need alpha > 0, beta >= 0, D > 0");
    if (!(path_budget >= D) || !(path_budget <= D * T))
      throw ConfigError("AdversaryConfig: path budget must lie in [D, D*T]");
  }
};

/// Segment length Delta = ceil(T / floor(path/D)): centers are redrawn at
/// stages congruent to 1 mod Delta and copied in between, which caps the
/// realized path length at floor(path/D) * D - D/2 < path on every draw.
inline int segment_length(const AdversaryConfig& cfg) {
  cfg.validate();
  const int jumps = static_cast<int>(std::floor(cfg.path_budget / cfg.D));
  return (cfg.T + jumps - 1) / jumps;
}

inline int segment_count(const AdversaryConfig& cfg) {
  const int delta = segment_length(cfg);
  return (cfg.T + delta - 1) / delta;
}

inline std::vector<double> segmented_centers(const AdversaryConfig& cfg,
                                             std::uint64_t realization) {
  const int delta = segment_length(cfg);
  CounterRng rng(CounterRng::derive(cfg.seed, realization));
  std::vector<double> theta(static_cast<std::size_t>(cfg.T), 0.0);
  double cur = 0.0;
  for (int t = 1; t <= cfg.T; ++t) {
    if ((t - 1) % delta == 0) cur = rng.next_sign() * cfg.D / 2.0;
    theta[static_cast<std::size_t>(t - 1)] = cur;
  }
  return theta;
}

inline CostSequence make_scalar_instance(const AdversaryConfig& cfg,
                                         const std::vector<double>& centers) {
  std::vector<Eigen::VectorXd> thetas;
  thetas.reserve(centers.size());
  for (double c : centers) thetas.push_back(Eigen::VectorXd::Constant(1, c));
  FunctionClassParams declared{cfg.alpha, cfg.alpha, cfg.alpha * cfg.D};
  return CostSequence::isotropic(cfg.alpha, thetas, cfg.beta,
                                 Eigen::VectorXd::Zero(1),
                                 ActionSpace::interval(-cfg.D / 2.0, cfg.D / 2.0),
                                 declared);
}

inline CostSequence segmented_instance(const AdversaryConfig& cfg,
                                       std::uint64_t realization) {
  return make_scalar_instance(cfg, segmented_centers(cfg, realization));
}

/// Single hidden jump: centers sit at the origin through stage W, then move
/// to +-nu/2 (one coin flip) and stay. The realized path length is exactly
/// nu/2, and no algorithm with lookahead W can see the jump coming.
inline CostSequence jump_once_instance(const AdversaryConfig& cfg, double nu,
                                       std::uint64_t realization) {
  cfg.validate();
  if (!(nu > 0.0) || nu > cfg.D)
    throw ConfigError("jump_once_instance: need 0 < nu <= D");
  if (cfg.T < cfg.W + 1)
    throw ConfigError("jump_once_instance: need T >= W + 1");
  CounterRng rng(CounterRng::derive(cfg.seed, realization));
  const double target = rng.next_sign() * nu / 2.0;
  std::vector<double> centers(static_cast<std::size_t>(cfg.T), target);
  for (int t = 1; t <= cfg.W; ++t) centers[static_cast<std::size_t>(t - 1)] = 0.0;
  return make_scalar_instance(cfg, centers);
}

/// Two-dimensional pair of sequences that no zero-lookahead algorithm can
/// distinguish at stage 1, yet whose optimal first moves point in opposite
/// directions. The box is [-path/2, path/2] x [-b, b] with
/// b = sqrt(D^2 - path^2)/2 (diameter exactly D, needs path <= D). The
/// first center sits at (+-M, 0) with M = D + (1 + beta/alpha) path/2,
/// every later one at (+-path/2, 0); the hindsight optimum is the constant
/// (+-path/2, 0), where the stage-1 partial gradient has magnitude
/// exactly alpha * D in the first coordinate.
inline std::pair<CostSequence, CostSequence> opposing_pair(double alpha, double beta,
                                                           double D, double path,
                                                           int T) {
  if (!(alpha > 0.0) || !(beta >= 0.0) || T < 1)
    throw ConfigError("opposing_pair: need alpha > 0, beta >= 0, T >= 1");
  if (!(path > 0.0) || path > D)
    throw ConfigError("opposing_pair: need 0 < path <= D");
  const double b = std::sqrt(D * D - path * path) / 2.0;
  ActionSpace space(Eigen::Vector2d(-path / 2.0, -b), Eigen::Vector2d(path / 2.0, b));
  const double M = D + (1.0 + beta / alpha) * path / 2.0;
  const double half = path / 2.0;
  const double G = alpha * std::sqrt((M + D / 2.0) * (M + D / 2.0) + D * D);
  FunctionClassParams declared{alpha, alpha, G};

  auto build = [&](double sign) {
    std::vector<Eigen::VectorXd> thetas;
    thetas.reserve(static_cast<std::size_t>(T));
    thetas.push_back(Eigen::Vector2d(sign * M, 0.0));
    for (int t = 2; t <= T; ++t) thetas.push_back(Eigen::Vector2d(sign * half, 0.0));
    return CostSequence::isotropic(alpha, thetas, beta, Eigen::Vector2d::Zero(), space,
                                   declared);
  };
  return {build(1.0), build(-1.0)};
}

/// Stages whose redraw lands exactly one step past the prediction window:
/// J = { 1 <= t <= T - W : t + W = 1 mod Delta }. At such t the decision
/// maker has seen nothing of the next segment, so each contributes a
/// constant expected regret. |J| >= path/(12 D) when T >= 2W, W >= 1 and
/// path >= 2D; |J| >= path/(4 D) when W = 0 and D <= path <= D T.
inline std::vector<int> prediction_boundary_stages(const AdversaryConfig& cfg) {
  const int delta = segment_length(cfg);
  std::vector<int> J;
  for (int t = 1; t <= cfg.T - cfg.W; ++t)
    if ((t + cfg.W) % delta == 1 % delta) J.push_back(t);
  return J;
}

inline double boundary_count_floor(const AdversaryConfig& cfg) {
  if (cfg.W == 0) return cfg.path_budget / (4.0 * cfg.D);
  return cfg.path_budget / (12.0 * cfg.D);
}

struct LowerBoundRow {
  std::string algo;
  int W = 0;
  int realizations = 0;
  double mean_regret = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  bool pass = false;
};

/// Monte Carlo estimate of the expected regret of one algorithm against the
/// sampled adversary, with the closed-form hindsight oracle (exact for
/// these instances). Passes when the sample mean clears the expectation
/// bound minus three standard errors.
template <class Runner>
LowerBoundRow monte_carlo_lower_bound(const AdversaryConfig& cfg, const std::string& name,
                                      int realizations, Runner&& run) {
  cfg.validate();
  if (realizations < 2)
    throw ConfigError("monte_carlo_lower_bound: need at least two realizations");
  double sum = 0.0, sumsq = 0.0;
  for (int r = 0; r < realizations; ++r) {
    CostSequence seq = segmented_instance(cfg, static_cast<std::uint64_t>(r));
    Trajectory play = run(seq);
    const double online = seq.total_cost(play);
    Trajectory opt = solve_isotropic_closed_form(seq);
    const double regret = online - seq.total_cost(opt);
    sum += regret;
    sumsq += regret * regret;
  }
  const double n = static_cast<double>(realizations);
  LowerBoundRow row;
  row.algo = name;
  row.W = cfg.W;
  row.realizations = realizations;
  row.mean_regret = sum / n;
  const double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1.0));
  row.std_error = std::sqrt(var / n);
  FunctionClassParams params{cfg.alpha, cfg.alpha, cfg.alpha * cfg.D};
  row.bound = bound_report(params, cfg.beta, cfg.D, cfg.path_budget, cfg.W)
                  .mc_expectation_bound;
  row.pass = row.mean_regret >= row.bound - 3.0 * row.std_error;
  return row;
}

} // namespace rhoco
