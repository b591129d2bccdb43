#include <catch2/catch_amalgamated.hpp>

#include "rhoco/bounds.hpp"
#include "rhoco/online.hpp"
#include "rhoco/regret.hpp"
#include "rhoco/rng.hpp"

using namespace rhoco;

namespace {

CostSequence random_isotropic(std::uint64_t seed, int n, int T) {
  CounterRng rng(seed);
  const double alpha = rng.next_uniform(0.1, 10.0);
  const double beta = rng.next_uniform(0.0, 10.0);
  std::vector<Eigen::VectorXd> thetas;
  thetas.reserve(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    Eigen::VectorXd th(n);
    for (int j = 0; j < n; ++j) th[j] = rng.next_uniform(-1.0, 1.0);
    thetas.push_back(th);
  }
  Eigen::VectorXd x0(n);
  for (int j = 0; j < n; ++j) x0[j] = rng.next_uniform(-1.0, 1.0);
  return CostSequence::isotropic(alpha, thetas, beta, x0, ActionSpace::cube(n, -1.0, 1.0));
}

CostSequence random_diagonal(std::uint64_t seed, int n, int T) {
  CounterRng rng(seed);
  const double beta = rng.next_uniform(0.0, 5.0);
  std::vector<QuadraticStageCost> costs;
  costs.reserve(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t) {
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd q(n);
    for (int j = 0; j < n; ++j) {
      P(j, j) = rng.next_uniform(0.5, 4.0);
      q[j] = rng.next_uniform(-1.0, 1.0);
    }
    costs.emplace_back(P, q, 1.0);
  }
  return CostSequence(costs, beta, Eigen::VectorXd::Zero(n),
                      ActionSpace::cube(n, -2.0, 2.0));
}

} // namespace

TEST_CASE("window zero collapses to online gradient descent, bit for bit",
          "[online]") {
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    CostSequence seq = random_isotropic(seed, 2, 25);
    AlgoConfig cfg = AlgoConfig::defaults(seq, 0);
    RunResult ogd = run_ogd(seq, cfg);
    RunResult rhgd = run_rhgd(seq, cfg);
    RunResult rhag = run_rhag(seq, cfg);
    REQUIRE(ogd.trajectory.size() == 25);
    REQUIRE(rhgd.trajectory.max_abs_diff(ogd.trajectory) == 0.0);
    REQUIRE(rhag.trajectory.max_abs_diff(ogd.trajectory) == 0.0);
    REQUIRE((ogd.trajectory[0] - seq.x0()).norm() == 0.0);
  }
}

TEST_CASE("receding-horizon loops replay the offline sweep iterates exactly",
          "[online]") {
  // The decision played at stage s equals the stage-s entry of the W-th
  // all-at-once projected gradient round seeded with the no-lookahead
  // trajectory. Float for float, not approximately: both sides are routed
  // through the same update expression.
  SECTION("isotropic instances") {
    for (std::uint64_t seed : {21ull, 22ull, 23ull, 24ull}) {
      const int n = 1 + static_cast<int>(seed % 3);
      CostSequence seq = random_isotropic(seed, n, 30);
      RunResult ogd = run_ogd(seq, AlgoConfig::defaults(seq, 0));
      for (int W : {1, 2, 3, 8, 30}) {
        AlgoConfig cfg = AlgoConfig::defaults(seq, W);
        Trajectory gd_ref = offline_gd_iterates(seq, ogd.trajectory, W, cfg.eta);
        Trajectory ag_ref =
            offline_nag_iterates(seq, ogd.trajectory, W, cfg.eta, cfg.lambda);
        REQUIRE(run_rhgd(seq, cfg).trajectory.max_abs_diff(gd_ref) == 0.0);
        REQUIRE(run_rhag(seq, cfg).trajectory.max_abs_diff(ag_ref) == 0.0);
      }
    }
  }

  SECTION("diagonal quadratics with distinct stage curvatures") {
    CostSequence seq = random_diagonal(31, 3, 20);
    RunResult ogd = run_ogd(seq, AlgoConfig::defaults(seq, 0));
    for (int W : {1, 5, 19}) {
      AlgoConfig cfg = AlgoConfig::defaults(seq, W);
      Trajectory gd_ref = offline_gd_iterates(seq, ogd.trajectory, W, cfg.eta);
      Trajectory ag_ref =
          offline_nag_iterates(seq, ogd.trajectory, W, cfg.eta, cfg.lambda);
      REQUIRE(run_rhgd(seq, cfg).trajectory.max_abs_diff(gd_ref) == 0.0);
      REQUIRE(run_rhag(seq, cfg).trajectory.max_abs_diff(ag_ref) == 0.0);
    }
  }

  SECTION("lookahead beyond the horizon is clamped") {
    CostSequence seq = random_isotropic(41, 2, 12);
    RunResult full = run_rhgd(seq, AlgoConfig::defaults(seq, 12));
    RunResult over = run_rhgd(seq, AlgoConfig::defaults(seq, 100));
    REQUIRE(over.trajectory.max_abs_diff(full.trajectory) == 0.0);
  }
}

TEST_CASE("longer lookahead never hurts the plain sweep", "[online]") {
  // Each extra window round is one projected gradient step with eta = 1/L on
  // the total cost, which is monotone in objective value.
  CostSequence seq = random_isotropic(51, 2, 30);
  OracleResult oracle = best_oracle(seq, 1e-10);
  double prev = std::numeric_limits<double>::infinity();
  for (int W = 0; W <= 10; ++W) {
    RunResult res = run_rhgd(seq, AlgoConfig::defaults(seq, W));
    const double cost = seq.total_cost(res.trajectory);
    REQUIRE(cost <= prev + 1e-12);
    REQUIRE(cost >= oracle.cost - 1e-9);
    prev = cost;
  }
}

TEST_CASE("the information gate blocks unrevealed costs", "[online]") {
  CostSequence seq = random_isotropic(61, 1, 8);
  GatedSequence gate(seq);
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(1);

  REQUIRE(gate.revealed() == 0);
  REQUIRE_THROWS_AS(gate.stage_gradient(1, x), GateError);
  gate.reveal_up_to(3);
  REQUIRE(gate.revealed() == 3);
  REQUIRE_NOTHROW(gate.stage_gradient(3, x));
  REQUIRE_THROWS_AS(gate.stage_gradient(4, x), GateError);
  REQUIRE_THROWS_AS(gate.partial_gradient(4, x, x, x), GateError);
  REQUIRE_THROWS_AS(gate.ogd_step(4, x, 0.1), GateError);
  REQUIRE_THROWS_AS(gate.descent_step(4, x, x, x, 0.1), GateError);
  REQUIRE_THROWS_AS(gate.stage_minimizer(4), GateError);
  REQUIRE_THROWS_AS(gate.stage_value(4, x), GateError);

  // Out-of-range indices are configuration bugs, not gate trips.
  REQUIRE_THROWS_AS(gate.stage_gradient(0, x), ConfigError);
  REQUIRE_THROWS_AS(gate.stage_gradient(9, x), ConfigError);

  // Revealing is monotone and saturates at the horizon.
  gate.reveal_up_to(2);
  REQUIRE(gate.revealed() == 3);
  gate.reveal_up_to(100);
  REQUIRE(gate.revealed() == 8);
}

TEST_CASE("gradient evaluations count queries, not value reads", "[online]") {
  CostSequence seq = random_isotropic(62, 1, 8);
  GatedSequence gate(seq);
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(1);
  gate.reveal_up_to(8);
  REQUIRE(gate.gradient_evaluations() == 0);
  gate.stage_value(1, x);
  gate.stage_minimizer(1);
  REQUIRE(gate.gradient_evaluations() == 0);
  gate.stage_gradient(1, x);
  gate.partial_gradient(2, x, x, x);
  gate.ogd_step(3, x, 0.1);
  gate.descent_step(4, x, x, x, 0.1);
  REQUIRE(gate.gradient_evaluations() == 4);
}

TEST_CASE("per-stage gradient counts follow the window arithmetic", "[online]") {
  const int T = 20, W = 5;
  CostSequence seq = random_isotropic(63, 2, T);
  for (auto* run : {&run_rhgd, &run_rhag}) {
    RunResult res = (*run)(seq, AlgoConfig::defaults(seq, W));
    // Loop stages before the first decision: s = -3..0 cost s + W each.
    REQUIRE(res.stats.warmup_grad_evals == 2 + 3 + 4 + 5);
    for (int s = 1; s <= T - W; ++s)
      REQUIRE(res.stats.per_stage_grad_evals[static_cast<std::size_t>(s - 1)] == W + 1);
    for (int s = T - W + 1; s <= T; ++s)
      REQUIRE(res.stats.per_stage_grad_evals[static_cast<std::size_t>(s - 1)] ==
              T - s + 1);
    REQUIRE(res.stats.total_grad_evals() ==
            14 + (T - W) * (W + 1) + 5 + 4 + 3 + 2 + 1);
    REQUIRE(res.stats.mean_stage_grad_evals() ==
            Catch::Approx(((T - W) * (W + 1) + 15.0) / T));
  }

  RunResult ogd = run_ogd(seq, AlgoConfig::defaults(seq, 0));
  REQUIRE(ogd.stats.warmup_grad_evals == 0);
  REQUIRE(ogd.stats.per_stage_grad_evals[0] == 0);
  for (int s = 2; s <= T; ++s)
    REQUIRE(ogd.stats.per_stage_grad_evals[static_cast<std::size_t>(s - 1)] == 1);
}

TEST_CASE("online costs respect their analyzed ceilings", "[online]") {
  for (std::uint64_t seed : {71ull, 72ull}) {
    CostSequence seq = random_isotropic(seed, 2, 24);
    OracleResult oracle = best_oracle(seq, 1e-10);
    const FunctionClassParams cls = seq.class_params();
    for (int W : {0, 2, 6}) {
      BoundReport rep = bound_report(cls, seq.beta(), seq.space().diameter(),
                                     seq.path_length(), W);
      AlgoConfig cfg = AlgoConfig::defaults(seq, W);
      const double ogd_reg =
          evaluate_regret(seq, run_ogd(seq, cfg).trajectory, oracle).regret;
      const double rhgd_reg =
          evaluate_regret(seq, run_rhgd(seq, cfg).trajectory, oracle).regret;
      const double rhag_reg =
          evaluate_regret(seq, run_rhag(seq, cfg).trajectory, oracle).regret;
      REQUIRE(ogd_reg <= rep.ogd_upper + 1e-9);
      REQUIRE(rhgd_reg <= rep.rhgd_upper + 1e-9);
      REQUIRE(rhag_reg <= rep.rhag_upper + 1e-9);
    }
  }
}

TEST_CASE("algorithm configuration is validated", "[online]") {
  CostSequence seq = random_isotropic(81, 1, 5);
  AlgoConfig bad_w = AlgoConfig::defaults(seq, 0);
  bad_w.W = -1;
  REQUIRE_THROWS_AS(run_ogd(seq, bad_w), ConfigError);

  AlgoConfig half_set;
  half_set.W = 0;
  half_set.gamma = 0.5; // eta left unset: refuse rather than guess
  REQUIRE_THROWS_AS(run_rhgd(seq, half_set), ConfigError);

  AlgoConfig bad_lambda = AlgoConfig::defaults(seq, 1);
  bad_lambda.lambda = 1.0;
  REQUIRE_THROWS_AS(run_rhag(seq, bad_lambda), ConfigError);
}

TEST_CASE("the horizon buffer rejects out-of-protocol access", "[online]") {
  const Eigen::VectorXd x = Eigen::VectorXd::Zero(1);

  SECTION("slots open in stage order, inside the horizon") {
    HorizonBuffer buf(5, false);
    REQUIRE_THROWS_AS(buf.open(2, 0, x), std::logic_error);
    REQUIRE_NOTHROW(buf.open(1, -1, x));
    REQUIRE_THROWS_AS(buf.open(3, 0, x), std::logic_error);
    REQUIRE_THROWS_AS(buf.open(0, 0, x), std::logic_error);
    HorizonBuffer small(2, false);
    small.open(1, 1, x);
    small.open(2, 1, x);
    REQUIRE_THROWS_AS(small.open(3, 2, x), std::logic_error);
  }

  SECTION("updates must advance the version by one") {
    HorizonBuffer buf(5, false);
    buf.open(1, 0, x);
    REQUIRE_THROWS_AS(buf.update(1, 2, x), std::logic_error);
    REQUIRE_NOTHROW(buf.update(1, 1, x));
    REQUIRE_THROWS_AS(buf.update(1, 1, x), std::logic_error);
  }

  SECTION("reads assert the version they expect") {
    HorizonBuffer buf(5, false);
    buf.open(1, 0, x);
    REQUIRE_NOTHROW(buf.current(1, 0));
    REQUIRE_THROWS_AS(buf.current(1, 1), std::logic_error);
    REQUIRE_THROWS_AS(buf.previous(1, 0), std::logic_error); // never updated
    buf.update(1, 1, x);
    REQUIRE_NOTHROW(buf.previous(1, 0));
    REQUIRE_THROWS_AS(buf.previous(1, 1), std::logic_error);
  }

  SECTION("a decision cannot be emitted before its final rewrite") {
    HorizonBuffer buf(5, false);
    buf.open(1, 1, x);
    buf.open(2, 1, x); // final rewrite for slot 2 happens at stage 2
    REQUIRE_THROWS_AS(buf.emit(2), std::logic_error);
  }

  SECTION("dropped slots are gone") {
    HorizonBuffer buf(5, false);
    buf.open(1, 1, x);
    buf.open(2, 1, x);
    buf.drop_below(2);
    REQUIRE(buf.open_count() == 1);
    REQUIRE_THROWS_AS(buf.current(1, 1), std::logic_error);
    REQUIRE_NOTHROW(buf.current(2, 1));
  }

  SECTION("momentum values exist only when requested") {
    HorizonBuffer plain(5, false);
    plain.open(1, 1, x);
    REQUIRE_THROWS_AS(plain.y_current(1, 1), std::logic_error);
    HorizonBuffer accel(5, true);
    accel.open(1, 1, x);
    REQUIRE_NOTHROW(accel.y_current(1, 1));
  }
}

TEST_CASE("buffer open fix for emitting slot 1 at window zero", "[online]") {
  // With W = 0 the first slot is opened with version 1 and emitted
  // immediately; with W > 0 it is opened at version 1 - W and emitting
  // before the W rewrites is a protocol violation.
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(1, 0.25);
  HorizonBuffer w0(3, false);
  w0.open(1, 1, x);
  REQUIRE((w0.emit(1) - x).norm() == 0.0);

  HorizonBuffer w2(3, false);
  w2.open(1, -1, x);
  REQUIRE_THROWS_AS(w2.emit(1), std::logic_error);
}
