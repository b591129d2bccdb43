#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "rhoco/mpc.hpp"
#include "rhoco/offline.hpp"
#include "rhoco/regret.hpp"
#include "rhoco/rng.hpp"

using namespace rhoco;

namespace {

CostSequence wandering_targets(std::uint64_t seed, int n, int T, double alpha,
                               double beta, double spread) {
  CounterRng rng(seed);
  std::vector<Eigen::VectorXd> thetas;
  thetas.reserve(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    Eigen::VectorXd th(n);
    for (int j = 0; j < n; ++j) th[j] = rng.next_uniform(-spread, spread);
    thetas.push_back(th);
  }
  return CostSequence::isotropic(alpha, thetas, beta, Eigen::VectorXd::Zero(n),
                                 ActionSpace::cube(n, -1.0, 1.0));
}

} // namespace

TEST_CASE("one-step lookahead solves the myopic recursion", "[mpc]") {
  // With W = 1 each window is min over x in X of
  //   f_s(x) + (beta/2)||x - x_prev||^2,
  // whose minimizer for isotropic stages is the clamped convex combination
  //   proj((alpha theta_s + beta x_prev) / (alpha + beta)).
  // Targets deliberately leave the box so the clamp is exercised.
  const double alpha = 2.0, beta = 3.0;
  CostSequence seq = wandering_targets(7, 2, 15, alpha, beta, 1.8);
  MpcConfig cfg;
  cfg.W = 1;
  MpcResult res = run_mpc(seq, cfg);

  Eigen::VectorXd x_prev = seq.x0();
  for (int s = 1; s <= 15; ++s) {
    Eigen::VectorXd expect = seq.space().project(
        (alpha * seq.cost(s).isotropic_center() + beta * x_prev) / (alpha + beta));
    REQUIRE((res.trajectory[s - 1] - expect).cwiseAbs().maxCoeff() < 1e-6);
    x_prev = res.trajectory[s - 1];
  }
}

TEST_CASE("full lookahead recovers the hindsight optimum", "[mpc]") {
  CostSequence seq = wandering_targets(8, 2, 12, 1.0, 2.0, 0.9);
  OracleResult oracle = best_oracle(seq, 1e-11);
  MpcConfig cfg;
  cfg.W = 12;
  MpcResult res = run_mpc(seq, cfg);
  RegretRecord rec = evaluate_regret(seq, res.trajectory, oracle);
  REQUIRE(rec.regret <= 1e-6);
  REQUIRE(rec.regret >= -1e-8);

  SECTION("windows past the horizon change nothing") {
    MpcConfig over = cfg;
    over.W = 500;
    REQUIRE(run_mpc(seq, over).trajectory.max_abs_diff(res.trajectory) == 0.0);
  }
}

TEST_CASE("gradient work equals inner iterations times window length", "[mpc]") {
  const int T = 10, W = 3;
  CostSequence seq = wandering_targets(9, 1, T, 1.0, 1.0, 0.9);
  MpcConfig cfg;
  cfg.W = W;
  MpcResult res = run_mpc(seq, cfg);
  REQUIRE(static_cast<int>(res.inner_iterations.size()) == T);
  REQUIRE(res.stats.warmup_grad_evals == 0);
  for (int s = 1; s <= T; ++s) {
    const int len = std::min(W, T - s + 1);
    REQUIRE(res.inner_iterations[static_cast<std::size_t>(s - 1)] >= 1);
    REQUIRE(res.stats.per_stage_grad_evals[static_cast<std::size_t>(s - 1)] ==
            static_cast<long>(res.inner_iterations[static_cast<std::size_t>(s - 1)]) * len);
  }
}

TEST_CASE("anchor terminal pulls the window tail toward the last target", "[mpc]") {
  // Two far-apart targets make the terminal assumption visible at W = 2.
  std::vector<Eigen::VectorXd> thetas{Eigen::VectorXd::Constant(1, 0.9),
                                      Eigen::VectorXd::Constant(1, -0.9),
                                      Eigen::VectorXd::Constant(1, 0.9),
                                      Eigen::VectorXd::Constant(1, -0.9)};
  CostSequence seq = CostSequence::isotropic(1.0, thetas, 1.0, Eigen::VectorXd::Zero(1),
                                             ActionSpace::interval(-1.0, 1.0));
  MpcConfig plain;
  plain.W = 2;
  MpcConfig anchored;
  anchored.W = 2;
  anchored.terminal = TerminalCost::QuadraticAnchor;
  anchored.anchor_weight = 5.0;
  Trajectory a = run_mpc(seq, plain).trajectory;
  Trajectory b = run_mpc(seq, anchored).trajectory;
  REQUIRE(a.max_abs_diff(b) > 1e-6);

  SECTION("the terminal term is inert once the window covers the horizon") {
    MpcConfig full_plain;
    full_plain.W = 4;
    MpcConfig full_anchor = full_plain;
    full_anchor.terminal = TerminalCost::QuadraticAnchor;
    full_anchor.anchor_weight = 5.0;
    REQUIRE(run_mpc(seq, full_anchor)
                .trajectory.max_abs_diff(run_mpc(seq, full_plain).trajectory) == 0.0);
  }
}

TEST_CASE("window solver failures surface as numerical errors", "[mpc]") {
  CostSequence seq = wandering_targets(10, 1, 6, 1.0, 1.0, 0.9);
  MpcConfig cfg;
  cfg.W = 2;
  cfg.inner_tolerance = 1e-15; // unreachable with one iteration
  cfg.max_inner_iterations = 1;
  bool threw = false;
  try {
    run_mpc(seq, cfg);
  } catch (const SolverError& e) {
    threw = true;
    REQUIRE(std::string(e.what()).find("stage 1") != std::string::npos);
    REQUIRE(e.residual() > 0.0);
  }
  REQUIRE(threw);
}

TEST_CASE("mpc configuration is validated", "[mpc]") {
  MpcConfig cfg;

  MpcConfig no_window = cfg;
  no_window.W = 0;
  REQUIRE_THROWS_AS(no_window.validate(), ConfigError);

  MpcConfig bad_tol = cfg;
  bad_tol.inner_tolerance = 0.0;
  REQUIRE_THROWS_AS(bad_tol.validate(), ConfigError);

  MpcConfig no_iters = cfg;
  no_iters.max_inner_iterations = 0;
  REQUIRE_THROWS_AS(no_iters.validate(), ConfigError);

  MpcConfig weightless_anchor = cfg;
  weightless_anchor.terminal = TerminalCost::QuadraticAnchor;
  REQUIRE_THROWS_AS(weightless_anchor.validate(), ConfigError);

  MpcConfig stray_weight = cfg;
  stray_weight.anchor_weight = 1.0;
  REQUIRE_THROWS_AS(stray_weight.validate(), ConfigError);

  REQUIRE_NOTHROW(cfg.validate());
}
