#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rhoco/cost_sequence.hpp"
#include "rhoco/rng.hpp"

namespace rhoco {

/// Economic dispatch over n thermal units. Unit i generating x_i MW costs
/// a_i x_i^2 + b_i x_i + c_i per stage, and the residual imbalance between
/// total generation and net load d_t - r_t is penalized quadratically:
///   f_t(x) = sum_i (a_i x_i^2 + b_i x_i + c_i)
///          + imbalance_weight * (sum_i x_i + r_t - d_t)^2.
/// Ramping is the switching cost on top of this. As a quadratic form,
///   P = 2 diag(a) + 2 * imbalance_weight * ones * ones',
///   q_t = b + 2 * imbalance_weight * (r_t - d_t) * ones,
///   c_t = sum_i c_i + imbalance_weight * (r_t - d_t)^2.
struct DispatchSpec {
  struct Generator {
    double a = 0.0, b = 0.0, c = 0.0;
  };

  std::vector<Generator> generators;
  std::vector<double> capacity; // per-unit upper limits, MW; lower limits are 0
  double imbalance_weight = 0.5;
  double beta = 10.0;
  Eigen::VectorXd x0;
  std::vector<double> demand;
  std::vector<double> renewable;

  /// Three-unit system used in the shipped experiments.
  static DispatchSpec three_unit() {
    DispatchSpec s;
    s.generators = {{2.0, 15.0, 10.0}, {2.0, 10.0, 27.0}, {2.0, 6.0, 21.0}};
    s.capacity = {2300.0, 2900.0, 4100.0};
    s.imbalance_weight = 0.5;
    s.beta = 10.0;
    s.x0 = Eigen::Vector3d(1200.0, 1000.0, 1400.0);
    return s;
  }
};

inline CostSequence build_dispatch(const DispatchSpec& spec) {
  const int n = static_cast<int>(spec.generators.size());
  const int T = static_cast<int>(spec.demand.size());
  if (n < 1) throw ConfigError("build_dispatch: no generators");
  if (T < 1) throw ConfigError("build_dispatch: empty demand series");
  if (spec.renewable.size() != spec.demand.size())
    throw ConfigError("build_dispatch: demand/renewable length mismatch");
  if (static_cast<int>(spec.capacity.size()) != n)
    throw ConfigError("build_dispatch: capacity per generator required");
  if (!(spec.imbalance_weight >= 0.0))
    throw ConfigError("build_dispatch: imbalance weight must be >= 0");
  for (const auto& g : spec.generators)
    if (!(g.a > 0.0)) throw ConfigError("build_dispatch: quadratic fuel term must be positive");
  for (double cap : spec.capacity)
    if (!(cap > 0.0)) throw ConfigError("build_dispatch: capacities must be positive");

  Eigen::MatrixXd P = 2.0 * spec.imbalance_weight * Eigen::MatrixXd::Ones(n, n);
  Eigen::VectorXd b(n);
  double c_fuel = 0.0;
  for (int i = 0; i < n; ++i) {
    P(i, i) += 2.0 * spec.generators[static_cast<std::size_t>(i)].a;
    b[i] = spec.generators[static_cast<std::size_t>(i)].b;
    c_fuel += spec.generators[static_cast<std::size_t>(i)].c;
  }

  std::vector<QuadraticStageCost> costs;
  costs.reserve(static_cast<std::size_t>(T));
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  for (int t = 0; t < T; ++t) {
    const double imbalance = spec.renewable[static_cast<std::size_t>(t)] -
                             spec.demand[static_cast<std::size_t>(t)];
    costs.emplace_back(P, b + 2.0 * spec.imbalance_weight * imbalance * ones,
                       c_fuel + spec.imbalance_weight * imbalance * imbalance);
  }

  Eigen::VectorXd upper(n);
  for (int i = 0; i < n; ++i) upper[i] = spec.capacity[static_cast<std::size_t>(i)];
  ActionSpace space(Eigen::VectorXd::Zero(n), upper);
  Eigen::VectorXd x0 = spec.x0.size() == 0 ? Eigen::VectorXd::Zero(n) : spec.x0;
  return CostSequence(std::move(costs), spec.beta, std::move(x0), std::move(space));
}

/// Point tracking with integrator dynamics: position updates freely inside
/// the box, the stage cost is half the squared distance to the target, and
/// movement is charged by the switching term. The control formulation
/// charges (beta/2)||x_{t+1} - x_t||^2 at the stage the move starts; summing
/// over the episode regroups it as the switching cost of this library once
/// the target series is indexed from the first decision, with the cost of
/// the fixed start position an additive constant dropped here.
struct TrackingSpec {
  std::vector<Eigen::VectorXd> targets;
  double beta = 1.0;
  std::optional<Eigen::VectorXd> x0;    // defaults to the origin
  std::optional<ActionSpace> space;     // defaults to a padded bounding box
};

inline CostSequence build_tracking(const TrackingSpec& spec) {
  if (spec.targets.empty()) throw ConfigError("build_tracking: no targets");
  const int n = static_cast<int>(spec.targets.front().size());
  for (const auto& y : spec.targets)
    if (y.size() != n) throw ConfigError("build_tracking: target dimension mismatch");
  Eigen::VectorXd x0 = spec.x0.value_or(Eigen::VectorXd::Zero(n));

  ActionSpace space = [&] {
    if (spec.space) return *spec.space;
    Eigen::VectorXd lo = x0, hi = x0;
    for (const auto& y : spec.targets) {
      lo = lo.cwiseMin(y);
      hi = hi.cwiseMax(y);
    }
    const Eigen::VectorXd pad =
        ((hi - lo) * 0.1).cwiseMax(Eigen::VectorXd::Ones(n));
    return ActionSpace(lo - pad, hi + pad);
  }();

  return CostSequence::isotropic(1.0, spec.targets, spec.beta, std::move(x0),
                                 std::move(space));
}

/// Fixed sixteen-stage scalar instance with a heavy switching weight. The
/// centers bounce between the box ends often enough that one-step methods
/// pay for every bounce, while even a short lookahead removes most of the
/// loss; it is the standard smoke test for the window sweep.
inline CostSequence build_special_example() {
  const double theta[16] = {0, 0, 4, 0, 0, 4, 0, 4, 0, 4, 0, 4, 4, 0, 4, 4};
  std::vector<Eigen::VectorXd> centers;
  centers.reserve(16);
  for (double v : theta) centers.push_back(Eigen::VectorXd::Constant(1, v));
  return CostSequence::isotropic(1.0, centers, 13.0, Eigen::VectorXd::Zero(1),
                                 ActionSpace::interval(0.0, 4.0));
}

enum class TraceProfile { DiurnalDemand, GustyWind };

/// Deterministic synthetic load and wind series (MW), reproducible from the
/// seed alone. DiurnalDemand: 5500 + 1500 sin(2 pi (t - 60)/288) plus
/// N(0, 100^2) noise, floored at 0; the 288-step period matches five-minute
/// stages over a day. GustyWind: mean-reverting recursion
/// w_{t+1} = w_t + 0.06 (650 - w_t) + 80 eps_t clipped to [0, 1300].
inline std::vector<double> synth_trace(int T, std::uint64_t seed, TraceProfile profile) {
  if (T < 1) throw ConfigError("synth_trace: need T >= 1");
  CounterRng rng(CounterRng::derive(seed, profile == TraceProfile::DiurnalDemand ? 1 : 2));
  std::vector<double> out(static_cast<std::size_t>(T));
  if (profile == TraceProfile::DiurnalDemand) {
    for (int t = 0; t < T; ++t) {
      const double base =
          5500.0 + 1500.0 * std::sin(2.0 * M_PI * (t - 60.0) / 288.0);
      out[static_cast<std::size_t>(t)] = std::max(0.0, base + 100.0 * rng.next_normal());
    }
  } else {
    double w = 600.0;
    for (int t = 0; t < T; ++t) {
      out[static_cast<std::size_t>(t)] = w;
      w += 0.06 * (650.0 - w) + 80.0 * rng.next_normal();
      w = std::min(1300.0, std::max(0.0, w));
    }
  }
  return out;
}

inline CostSequence build_dispatch_synthetic(int T, std::uint64_t seed) {
  DispatchSpec spec = DispatchSpec::three_unit();
  spec.demand = synth_trace(T, seed, TraceProfile::DiurnalDemand);
  spec.renewable = synth_trace(T, seed, TraceProfile::GustyWind);
  return build_dispatch(spec);
}

/// Reads a two-column "timestamp,value" CSV; timestamps are ignored.
inline std::vector<double> read_series(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("read_series: empty input");
  auto strip = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  if (strip(line) != "timestamp,value")
    throw ConfigError("read_series: expected header 'timestamp,value'");
  std::vector<double> values;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (strip(line).empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError("read_series: missing comma on line " + std::to_string(lineno));
    const std::string cell = strip(line.substr(comma + 1));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw ConfigError("read_series: bad value on line " + std::to_string(lineno));
    }
    if (used != cell.size())
      throw ConfigError("read_series: bad value on line " + std::to_string(lineno));
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError("read_series: no data rows");
  return values;
}

inline std::vector<double> read_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("read_series: cannot open " + path);
  return read_series(in);
}

} // namespace rhoco
