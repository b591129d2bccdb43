#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "rhoco/offline.hpp"
#include "rhoco/rng.hpp"

using Catch::Approx;
using namespace rhoco;

namespace {

CostSequence centered_scalar_instance(double alpha, double beta, int T,
                                      std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<Eigen::VectorXd> thetas;
  thetas.reserve(static_cast<std::size_t>(T));
  for (int t = 0; t < T; ++t)
    thetas.push_back(Eigen::VectorXd::Constant(1, rng.next_uniform(-1.0, 1.0)));
  return CostSequence::isotropic(alpha, thetas, beta, Eigen::VectorXd::Zero(1),
                                 ActionSpace::interval(-1.0, 1.0));
}

} // namespace

TEST_CASE("thomas elimination matches a dense solve", "[offline]") {
  CounterRng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const int T = rng.next_int(1, 40);
    Eigen::VectorXd diag(T), rhs(T), sub(std::max(T - 1, 0)), super(std::max(T - 1, 0));
    for (int i = 0; i < T; ++i) {
      diag[i] = rng.next_uniform(3.0, 6.0); // dominant
      rhs[i] = rng.next_uniform(-2.0, 2.0);
    }
    for (int i = 0; i + 1 < T; ++i) {
      sub[i] = rng.next_uniform(-1.0, 1.0);
      super[i] = rng.next_uniform(-1.0, 1.0);
    }
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(T, T);
    for (int i = 0; i < T; ++i) {
      M(i, i) = diag[i];
      if (i + 1 < T) {
        M(i, i + 1) = super[i];
        M(i + 1, i) = sub[i];
      }
    }
    Eigen::VectorXd x = thomas_solve(sub, diag, super, rhs);
    REQUIRE((M * x - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
  Eigen::VectorXd empty;
  REQUIRE_THROWS_AS(thomas_solve(empty, empty, empty, empty), ConfigError);
}

TEST_CASE("isotropic hindsight system and its closed-form inverse", "[offline]") {
  SECTION("one stage: a_{1,1} = alpha/(alpha + beta)") {
    IsotropicInverse inv(1.0, 1.0, 1);
    REQUIRE(inv.entry(1, 1) == Approx(0.5).epsilon(1e-14));
  }

  SECTION("two stages at alpha = beta = 1 pin to thirds") {
    // H = [[3, -1], [-1, 2]], inverse = [[0.4, 0.2], [0.2, 0.6]].
    IsotropicInverse inv(1.0, 1.0, 2);
    REQUIRE(inv.entry(1, 1) == Approx(0.4).epsilon(1e-14));
    REQUIRE(inv.entry(1, 2) == Approx(0.2).epsilon(1e-14));
    REQUIRE(inv.entry(2, 1) == Approx(0.2).epsilon(1e-14));
    REQUIRE(inv.entry(2, 2) == Approx(0.6).epsilon(1e-14));
  }

  SECTION("rho solves rho^2 - xi rho + 1 = 0") {
    for (double alpha : {0.3, 1.0, 4.0})
      for (double beta : {0.2, 1.0, 9.0}) {
        IsotropicInverse inv(alpha, beta, 3);
        const double r = inv.rho();
        REQUIRE(r * r - inv.xi() * r + 1.0 == Approx(0.0).margin(1e-12));
        REQUIRE(r > 0.0);
        REQUIRE(r < 1.0);
      }
  }

  SECTION("entries match a numeric inversion across random shapes") {
    CounterRng rng(17);
    for (int trial = 0; trial < 12; ++trial) {
      const double alpha = rng.next_uniform(0.1, 10.0);
      const double beta = rng.next_uniform(0.1, 10.0);
      const int T = rng.next_int(1, 60);
      IsotropicInverse inv(alpha, beta, T);
      Eigen::MatrixXd A = inv.dense();
      Eigen::MatrixXd H = IsotropicSystem(alpha, beta, T).dense();
      Eigen::MatrixXd Aref = H.inverse();
      const double rel = (A - Aref).cwiseAbs().maxCoeff() / Aref.cwiseAbs().maxCoeff();
      REQUIRE(rel < 1e-10);

      // Structure: nonnegative, rows sum to at most one, geometric floor.
      REQUIRE(A.minCoeff() >= 0.0);
      REQUIRE(A.rowwise().sum().maxCoeff() <= 1.0 + 1e-10);
      for (int t = 1; t <= T; ++t)
        for (int s = t; s <= T; ++s)
          REQUIRE(inv.entry(t, s) >= inv.decay_floor(s - t) * (1.0 - 1e-12));
    }
  }

  SECTION("the formula stays finite at horizons where naive powers overflow") {
    IsotropicInverse inv(1.0, 1.0, 100000);
    REQUIRE(std::isfinite(inv.entry(1, 1)));
    REQUIRE(std::isfinite(inv.entry(50000, 50000)));
    REQUIRE(inv.entry(1, 100000) >= 0.0); // rho^tau underflows to exact zero
    REQUIRE(inv.entry(50000, 50000) ==
            Approx(inv.entry(50001, 50001)).epsilon(1e-9));
  }

  SECTION("beta = 0 has nothing to invert around") {
    REQUIRE_THROWS_AS(IsotropicInverse(1.0, 0.0, 4), ConfigError);
  }

  SECTION("csv export has one row per stage and a tau header") {
    IsotropicInverse inv(1.0, 1.0, 2);
    std::ostringstream out;
    inv.write_csv(out);
    const std::string s = out.str();
    REQUIRE(s.rfind("t,tau0,tau1\n", 0) == 0);
    REQUIRE(std::count(s.begin(), s.end(), '\n') == 3);
    // Past-the-edge cell of the last row is blank.
    REQUIRE(s.find("\n2,") != std::string::npos);
    REQUIRE(s.back() == '\n');
  }
}

TEST_CASE("two-stage hindsight optimum from three independent routes", "[offline]") {
  std::vector<Eigen::VectorXd> thetas{Eigen::VectorXd::Constant(1, 1.0),
                                      Eigen::VectorXd::Constant(1, 1.0)};
  CostSequence seq = CostSequence::isotropic(1.0, thetas, 1.0, Eigen::VectorXd::Zero(1),
                                             ActionSpace::interval(-2.0, 2.0));

  // Stationarity: 2 x1 = theta1 + (x2 - x1) and x2 pulls toward theta2,
  // giving x = (0.6, 0.8) exactly.
  Trajectory closed = solve_isotropic_closed_form(seq);
  REQUIRE(closed[0][0] == Approx(0.6).epsilon(1e-12));
  REQUIRE(closed[1][0] == Approx(0.8).epsilon(1e-12));

  OracleResult iter = solve_offline(seq, 1e-10);
  REQUIRE(iter.method == "projected-nag");
  REQUIRE(std::abs(iter.trajectory[0][0] - 0.6) < 1e-8);
  REQUIRE(std::abs(iter.trajectory[1][0] - 0.8) < 1e-8);
  REQUIRE(iter.cost == Approx(seq.total_cost(closed)).margin(1e-12));

  OracleResult grid = brute_force_oracle(seq, 801);
  REQUIRE(std::abs(grid.trajectory[0][0] - 0.6) < 5e-3);
  REQUIRE(std::abs(grid.trajectory[1][0] - 0.8) < 5e-3);
  REQUIRE(grid.cost >= iter.cost - 1e-12);
  REQUIRE(grid.cost - iter.cost <= grid.optimality_gap);
}

TEST_CASE("oracle routing picks the cheapest valid method", "[offline]") {
  SECTION("no coupling: per-stage minimizers") {
    CostSequence seq = centered_scalar_instance(2.0, 0.0, 6, 5);
    OracleResult res = best_oracle(seq);
    REQUIRE(res.method == "per-stage");
    for (int t = 1; t <= 6; ++t)
      REQUIRE((res.trajectory[t - 1] - seq.stage_minimizer(t)).norm() == 0.0);
  }

  SECTION("centered isotropic: closed form, and it beats nearby points") {
    CostSequence seq = centered_scalar_instance(1.5, 2.5, 12, 6);
    OracleResult res = best_oracle(seq);
    REQUIRE(res.method == "closed-form");
    REQUIRE(res.optimality_gap == 0.0);
    Trajectory nudged = res.trajectory;
    nudged[5][0] = std::min(1.0, nudged[5][0] + 1e-4);
    REQUIRE(seq.total_cost(nudged) >= res.cost);
  }

  SECTION("anything else: the iterative solver with a certified gap") {
    Eigen::Matrix2d P;
    P << 3.0, 0.5, 0.5, 2.0;
    std::vector<QuadraticStageCost> costs{
        QuadraticStageCost(P, Eigen::Vector2d(0.2, -0.1), 0.0),
        QuadraticStageCost(P, Eigen::Vector2d(-0.3, 0.4), 0.0)};
    CostSequence seq(costs, 1.0, Eigen::Vector2d::Zero(),
                     ActionSpace::cube(2, -1.0, 1.0));
    OracleResult res = best_oracle(seq, 1e-10);
    REQUIRE(res.method == "projected-nag");
    REQUIRE(res.optimality_gap >= 0.0);
    REQUIRE(res.optimality_gap < 1e-12); // tiny for a 1e-10 gradient mapping
    // Cross-check with the dense KKT solve of the unconstrained problem,
    // whose solution is interior here.
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(4, 4);
    K.block<2, 2>(0, 0) = P + 2.0 * Eigen::Matrix2d::Identity();
    K.block<2, 2>(2, 2) = P + Eigen::Matrix2d::Identity();
    K.block<2, 2>(0, 2) = -Eigen::Matrix2d::Identity();
    K.block<2, 2>(2, 0) = -Eigen::Matrix2d::Identity();
    Eigen::VectorXd rhs(4);
    rhs << -0.2, 0.1, 0.3, -0.4;
    Eigen::VectorXd z = K.ldlt().solve(rhs);
    REQUIRE((res.trajectory.stacked() - z).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("closed form agrees with the iterative oracle at scale", "[offline]") {
  CostSequence seq = centered_scalar_instance(1.0, 1.0, 400, 9);
  Trajectory closed = solve_isotropic_closed_form(seq);
  OracleResult iter = solve_offline(seq, 1e-11);
  REQUIRE(closed.max_abs_diff(iter.trajectory) < 1e-7);
  REQUIRE(seq.total_cost(closed) <= iter.cost + 1e-10);
}

TEST_CASE("closed form preconditions are enforced", "[offline]") {
  std::vector<Eigen::VectorXd> thetas{Eigen::VectorXd::Constant(1, 0.5)};
  SECTION("x0 must be the origin") {
    CostSequence seq = CostSequence::isotropic(1.0, thetas, 1.0,
                                               Eigen::VectorXd::Constant(1, 0.1),
                                               ActionSpace::interval(-1.0, 1.0));
    REQUIRE_THROWS_AS(solve_isotropic_closed_form(seq), ConfigError);
  }
  SECTION("centers must lie inside the box") {
    std::vector<Eigen::VectorXd> out{Eigen::VectorXd::Constant(1, 5.0)};
    CostSequence seq = CostSequence::isotropic(1.0, out, 1.0, Eigen::VectorXd::Zero(1),
                                               ActionSpace::interval(-1.0, 1.0));
    REQUIRE_THROWS_AS(solve_isotropic_closed_form(seq), ConfigError);
  }
  SECTION("mixed curvatures are rejected") {
    std::vector<QuadraticStageCost> costs{
        QuadraticStageCost::isotropic(1.0, Eigen::VectorXd::Constant(1, 0.5)),
        QuadraticStageCost::isotropic(2.0, Eigen::VectorXd::Constant(1, 0.5))};
    CostSequence seq(costs, 1.0, Eigen::VectorXd::Zero(1),
                     ActionSpace::interval(-1.0, 1.0));
    REQUIRE_THROWS_AS(solve_isotropic_closed_form(seq), ConfigError);
  }
}

TEST_CASE("projected accelerated gradient behaves as a solver", "[offline]") {
  Eigen::Matrix2d P;
  P << 2.0, 0.0, 0.0, 8.0;
  auto value = [&](const Eigen::VectorXd& x) {
    return 0.5 * x.dot(P * x) - x[0] - 4.0 * x[1];
  };
  auto grad = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return P * x - Eigen::Vector2d(1.0, 4.0); };
  auto project = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return x.cwiseMax(-0.25).cwiseMin(0.25);
  };

  PnagOptions opt;
  opt.alpha = 2.0;
  opt.smoothness = 8.0;
  opt.tolerance = 1e-10;
  PnagResult res = projected_nag(Eigen::Vector2d(0.0, 0.0), value, grad, project, opt);
  // Unconstrained optimum (0.5, 0.5) clamps to the box corner.
  REQUIRE(res.point[0] == Approx(0.25).margin(1e-9));
  REQUIRE(res.point[1] == Approx(0.25).margin(1e-9));
  REQUIRE(res.grad_map_norm <= 1e-10);
  REQUIRE(res.certified_gap >= 0.0);

  SECTION("iteration cap raises a numerical failure") {
    PnagOptions tight = opt;
    tight.tolerance = 1e-16;
    tight.max_iterations = 3;
    REQUIRE_THROWS_AS(
        projected_nag(Eigen::Vector2d(0.0, 0.0), value, grad, project, tight),
        SolverError);
  }

  SECTION("parameter validation") {
    PnagOptions bad = opt;
    bad.alpha = 10.0; // above smoothness
    REQUIRE_THROWS_AS(
        projected_nag(Eigen::Vector2d(0.0, 0.0), value, grad, project, bad),
        ConfigError);
  }
}

TEST_CASE("brute force stays a guarded test oracle", "[offline]") {
  CostSequence seq = centered_scalar_instance(1.0, 1.0, 30, 2);
  REQUIRE_THROWS_AS(brute_force_oracle(seq, 11), ConfigError); // 11^30 points
  REQUIRE_THROWS_AS(brute_force_oracle(seq, 1), ConfigError);
}
