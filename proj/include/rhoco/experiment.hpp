#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rhoco/adversary.hpp"
#include "rhoco/bounds.hpp"
#include "rhoco/csv.hpp"
#include "rhoco/mpc.hpp"
#include "rhoco/online.hpp"
#include "rhoco/regret.hpp"
#include "rhoco/scenarios.hpp"
#include "rhoco/serialization.hpp"
#include "rhoco/svg.hpp"
#include "rhoco/tridiagonal.hpp"

namespace rhoco {

enum class Algo { Ogd, Rhgd, Rhag, Mpc };

inline const char* algo_name(Algo a) {
  switch (a) {
    case Algo::Ogd: return "ogd";
    case Algo::Rhgd: return "rhgd";
    case Algo::Rhag: return "rhag";
    case Algo::Mpc: return "mpc";
  }
  throw ConfigError("algo_name: unknown algorithm");
}

namespace detail {

inline std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  const auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

} // namespace detail

inline Algo parse_algo(const std::string& raw) {
  const std::string s = detail::trimmed(raw);
  if (s == "ogd") return Algo::Ogd;
  if (s == "rhgd") return Algo::Rhgd;
  if (s == "rhag") return Algo::Rhag;
  if (s == "mpc") return Algo::Mpc;
  throw ConfigError("unknown algorithm '" + s + "' (expected ogd, rhgd, rhag or mpc)");
}

/// Comma-separated algorithm names; duplicates are dropped, order kept.
inline std::vector<Algo> parse_algos(const std::string& list) {
  std::vector<Algo> out;
  for (const auto& part : detail::split(list, ',')) {
    if (detail::trimmed(part).empty()) continue;
    const Algo a = parse_algo(part);
    if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
  }
  if (out.empty()) throw ConfigError("no algorithms given");
  return out;
}

/// Window lists accept single values and inclusive ranges: "0,1,2", "0..10",
/// or a mix like "0,2..5,8". Result is sorted and deduplicated.
inline std::vector<int> parse_windows(const std::string& list) {
  std::vector<int> out;
  auto parse_int = [](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad window value '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("bad window value '" + s + "'");
    if (v < 0) throw ConfigError("window values must be >= 0");
    return v;
  };
  for (const auto& part : detail::split(list, ',')) {
    const std::string tok = detail::trimmed(part);
    if (tok.empty()) continue;
    const auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(tok));
    } else {
      const int lo = parse_int(detail::trimmed(tok.substr(0, dots)));
      const int hi = parse_int(detail::trimmed(tok.substr(dots + 2)));
      if (hi < lo) throw ConfigError("window range '" + tok + "' is reversed");
      for (int w = lo; w <= hi; ++w) out.push_back(w);
    }
  }
  if (out.empty()) throw ConfigError("no window values given");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct ExperimentConfig {
  // "special", "dispatch", or a path to an instance JSON file.
  std::string instance = "special";
  std::vector<Algo> algos = {Algo::Rhgd};
  std::vector<int> windows = {0};
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  std::string out = ".";
  int realizations = 200;
  bool count_gradients = false;

  // Horizon override: 0 keeps the scenario default (16 for the special
  // example, 1440 for synthetic dispatch, 40 for the sampled adversary).
  int T = 0;

  // Sampled-adversary family for the lowerbound command.
  double alpha = 1.0;
  double beta = 1.0;
  double D = 1.0;
  double path_budget = 10.0;

  // Model-predictive solver knobs.
  std::string mpc_terminal = "zero"; // or "anchor"
  double mpc_anchor_weight = 0.0;
  int mpc_max_inner = 10000;

  void validate() const {
    if (instance.empty()) throw ConfigError("config: empty instance source");
    if (algos.empty()) throw ConfigError("config: no algorithms selected");
    if (windows.empty()) throw ConfigError("config: no window values selected");
    for (int w : windows)
      if (w < 0) throw ConfigError("config: window values must be >= 0");
    if (!(tolerance > 0.0)) throw ConfigError("config: tolerance must be positive");
    if (realizations < 2) throw ConfigError("config: need at least two realizations");
    if (T < 0) throw ConfigError("config: T must be >= 0");
    if (mpc_terminal != "zero" && mpc_terminal != "anchor")
      throw ConfigError("config: mpc_terminal must be 'zero' or 'anchor'");
    if (mpc_max_inner < 1) throw ConfigError("config: mpc_max_inner must be >= 1");
  }
};

/// Applies keys from a JSON config file. Flags parsed afterwards override
/// whatever the file set.
inline void apply_json_config(ExperimentConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config json: top level must be an object");
  for (const auto& [key, val] : j.items()) {
    try {
      if (key == "instance") cfg.instance = val.get<std::string>();
      else if (key == "algos") {
        if (val.is_string()) cfg.algos = parse_algos(val.get<std::string>());
        else {
          std::string joined;
          for (const auto& v : val) joined += v.get<std::string>() + ",";
          cfg.algos = parse_algos(joined);
        }
      } else if (key == "w") {
        if (val.is_string()) cfg.windows = parse_windows(val.get<std::string>());
        else {
          cfg.windows.clear();
          for (const auto& v : val) cfg.windows.push_back(v.get<int>());
          std::sort(cfg.windows.begin(), cfg.windows.end());
          cfg.windows.erase(std::unique(cfg.windows.begin(), cfg.windows.end()),
                            cfg.windows.end());
        }
      } else if (key == "tol") cfg.tolerance = val.get<double>();
      else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
      else if (key == "out") cfg.out = val.get<std::string>();
      else if (key == "realizations") cfg.realizations = val.get<int>();
      else if (key == "count_gradients") cfg.count_gradients = val.get<bool>();
      else if (key == "T") cfg.T = val.get<int>();
      else if (key == "alpha") cfg.alpha = val.get<double>();
      else if (key == "beta") cfg.beta = val.get<double>();
      else if (key == "D") cfg.D = val.get<double>();
      else if (key == "path") cfg.path_budget = val.get<double>();
      else if (key == "mpc_terminal") cfg.mpc_terminal = val.get<std::string>();
      else if (key == "mpc_anchor_weight") cfg.mpc_anchor_weight = val.get<double>();
      else if (key == "mpc_max_inner") cfg.mpc_max_inner = val.get<int>();
      else throw ConfigError("config json: unknown key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config json: bad value for '" + key + "': " + e.what());
    }
  }
}

inline CostSequence load_instance(const ExperimentConfig& cfg) {
  if (cfg.instance == "special") return build_special_example();
  if (cfg.instance == "dispatch")
    return build_dispatch_synthetic(cfg.T > 0 ? cfg.T : 1440, cfg.seed);
  return read_instance(cfg.instance);
}

inline MpcConfig make_mpc_config(const ExperimentConfig& cfg, int W) {
  MpcConfig m;
  m.W = W;
  m.inner_tolerance = cfg.tolerance;
  m.max_inner_iterations = cfg.mpc_max_inner;
  if (cfg.mpc_terminal == "anchor") {
    m.terminal = TerminalCost::QuadraticAnchor;
    m.anchor_weight = cfg.mpc_anchor_weight > 0.0 ? cfg.mpc_anchor_weight
                                                  : cfg.beta;
  }
  return m;
}

inline RunResult run_algorithm(const CostSequence& seq, Algo algo, int W,
                               const ExperimentConfig& cfg) {
  switch (algo) {
    case Algo::Ogd: {
      AlgoConfig c;
      c.W = 0;
      return run_ogd(seq, c);
    }
    case Algo::Rhgd: {
      AlgoConfig c;
      c.W = W;
      return run_rhgd(seq, c);
    }
    case Algo::Rhag: {
      AlgoConfig c;
      c.W = W;
      return run_rhag(seq, c);
    }
    case Algo::Mpc: {
      MpcResult m = run_mpc(seq, make_mpc_config(cfg, W));
      return RunResult{std::move(m.trajectory), std::move(m.stats)};
    }
  }
  throw ConfigError("run_algorithm: unknown algorithm");
}

/// The (algorithm, window) grid actually executed: the model-predictive
/// solver needs at least one revealed stage, so its W = 0 cells are dropped.
/// Dropping everything is a configuration error, not an empty output.
inline std::vector<std::pair<Algo, int>> runnable_pairs(const ExperimentConfig& cfg) {
  std::vector<std::pair<Algo, int>> grid;
  for (Algo a : cfg.algos)
    for (int w : cfg.windows) {
      if (a == Algo::Mpc && w == 0) continue;
      grid.emplace_back(a, w);
    }
  if (grid.empty())
    throw ConfigError("config: no runnable (algorithm, window) pairs "
                      "(the model-predictive solver needs W >= 1)");
  return grid;
}

namespace detail {

inline std::string out_path(const ExperimentConfig& cfg, const char* name) {
  namespace fs = std::filesystem;
  try {
    fs::create_directories(cfg.out);
  } catch (const fs::filesystem_error& e) {
    throw ConfigError(std::string("cannot create output directory: ") + e.what());
  }
  return (fs::path(cfg.out) / name).string();
}

} // namespace detail

/// One row per (algorithm, window) on a single instance; the hindsight
/// oracle is solved once and shared. Writes run.csv.
inline std::vector<std::string> cmd_run(const ExperimentConfig& cfg) {
  cfg.validate();
  const CostSequence seq = load_instance(cfg);
  const OracleResult oracle = best_oracle(seq, cfg.tolerance);
  CsvTable table({"algo", "W", "regret", "online_cost", "offline_cost",
                  "oracle_gap", "oracle_method", "mean_stage_seconds",
                  "mean_stage_grad_evals"});
  for (const auto& [algo, w] : runnable_pairs(cfg)) {
    const RunResult res = run_algorithm(seq, algo, w, cfg);
    const RegretRecord rec = evaluate_regret(seq, res.trajectory, oracle);
    table.row()
        .cell(algo_name(algo))
        .cell(w)
        .cell(rec.regret)
        .cell(rec.online_cost)
        .cell(rec.offline_cost)
        .cell(rec.oracle_gap)
        .cell(rec.oracle_method)
        .cell(res.stats.mean_stage_seconds())
        .cell(res.stats.mean_stage_grad_evals());
  }
  const std::string path = detail::out_path(cfg, "run.csv");
  table.write_file(path);
  return {path};
}

/// Regret versus window, one polyline per algorithm, with the matching
/// guarantee curves overlaid dashed. Writes sweep.csv and sweep.svg.
inline std::vector<std::string> cmd_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const CostSequence seq = load_instance(cfg);
  const OracleResult oracle = best_oracle(seq, cfg.tolerance);
  const auto& params = seq.class_params();
  const double D = seq.space().diameter();
  const double path_len = seq.path_length();

  auto upper_bound = [&](Algo a, int w) -> double {
    const BoundReport r = bound_report(params, seq.beta(), D, path_len, w);
    switch (a) {
      case Algo::Ogd: return r.ogd_upper;
      case Algo::Rhgd: return r.rhgd_upper;
      case Algo::Rhag: return r.rhag_upper;
      default: return -1.0; // no guarantee curve
    }
  };

  CsvTable table({"algo", "W", "regret", "online_cost", "offline_cost", "bound"});
  SvgLinePlot plot("dynamic regret vs prediction window (" + cfg.instance + ")",
                   "prediction window W", "dynamic regret");

  for (Algo a : cfg.algos) {
    std::vector<double> xs, ys, bx, bs;
    for (int w : cfg.windows) {
      if (a == Algo::Mpc && w == 0) continue;
      const RunResult res = run_algorithm(seq, a, w, cfg);
      const RegretRecord rec = evaluate_regret(seq, res.trajectory, oracle);
      const double bound = upper_bound(a, w);
      auto row = table.row();
      row.cell(algo_name(a))
          .cell(w)
          .cell(rec.regret)
          .cell(rec.online_cost)
          .cell(rec.offline_cost);
      if (bound >= 0.0) row.cell(bound); else row.cell(std::string());
      xs.push_back(w);
      ys.push_back(rec.regret);
      if (bound >= 0.0) {
        bx.push_back(w);
        bs.push_back(bound);
      }
    }
    if (xs.empty()) continue;
    plot.add_series(algo_name(a), xs, ys);
    if (!bx.empty())
      plot.add_series(std::string(algo_name(a)) + " bound", bx, bs, true);
  }
  if (table.size() == 0)
    throw ConfigError("config: no runnable (algorithm, window) pairs "
                      "(the model-predictive solver needs W >= 1)");

  const std::string csv_path = detail::out_path(cfg, "sweep.csv");
  const std::string svg_path = detail::out_path(cfg, "sweep.svg");
  table.write_file(csv_path);
  plot.write_file(svg_path);
  return {csv_path, svg_path};
}

/// Monte-Carlo study against the sampled segmented adversary: sample-mean
/// regret per (algorithm, window) with the expectation bound it must clear.
/// Writes lowerbound.csv.
inline std::vector<std::string> cmd_lowerbound(const ExperimentConfig& cfg) {
  cfg.validate();
  CsvTable table({"algo", "W", "realizations", "mean_regret", "std_error",
                  "bound", "pass"});
  for (const auto& [algo, w] : runnable_pairs(cfg)) {
    AdversaryConfig acfg;
    acfg.T = cfg.T > 0 ? cfg.T : 40;
    acfg.W = w;
    acfg.alpha = cfg.alpha;
    acfg.beta = cfg.beta;
    acfg.D = cfg.D;
    acfg.path_budget = cfg.path_budget;
    acfg.seed = cfg.seed;
    auto runner = [&](const CostSequence& seq) {
      return run_algorithm(seq, algo, w, cfg).trajectory;
    };
    const LowerBoundRow row =
        monte_carlo_lower_bound(acfg, algo_name(algo), cfg.realizations, runner);
    table.row()
        .cell(row.algo)
        .cell(row.W)
        .cell(row.realizations)
        .cell(row.mean_regret)
        .cell(row.std_error)
        .cell(row.bound)
        .cell(row.pass);
  }
  const std::string path = detail::out_path(cfg, "lowerbound.csv");
  table.write_file(path);
  return {path};
}

/// Per-stage cost of each algorithm: wall time by default, or gradient
/// evaluation counts with count_gradients for machine-independent
/// comparisons. Writes bench.csv.
inline std::vector<std::string> cmd_bench(const ExperimentConfig& cfg) {
  cfg.validate();
  const CostSequence seq = load_instance(cfg);
  CsvTable table(cfg.count_gradients
                     ? std::vector<std::string>{"algo", "W", "mean_evals",
                                                "median_evals", "total_evals"}
                     : std::vector<std::string>{"algo", "W", "mean_s", "median_s"});
  for (const auto& [algo, w] : runnable_pairs(cfg)) {
    const RunResult res = run_algorithm(seq, algo, w, cfg);
    if (cfg.count_gradients) {
      std::vector<double> evals(res.stats.per_stage_grad_evals.begin(),
                                res.stats.per_stage_grad_evals.end());
      table.row()
          .cell(algo_name(algo))
          .cell(w)
          .cell(res.stats.mean_stage_grad_evals())
          .cell(detail::median_of(evals))
          .cell(static_cast<long long>(res.stats.total_grad_evals()));
    } else {
      table.row()
          .cell(algo_name(algo))
          .cell(w)
          .cell(res.stats.mean_stage_seconds())
          .cell(res.stats.median_stage_seconds());
    }
  }
  const std::string path = detail::out_path(cfg, "bench.csv");
  table.write_file(path);
  return {path};
}

/// Serializes the loaded instance to instance.json; centered isotropic
/// instances with coupling also get inverse.csv, the closed-form inverse of
/// the hindsight system for inspection.
inline std::vector<std::string> cmd_export_instance(const ExperimentConfig& cfg) {
  cfg.validate();
  const CostSequence seq = load_instance(cfg);
  const std::string json_path = detail::out_path(cfg, "instance.json");
  write_instance(seq, json_path);
  std::vector<std::string> written{json_path};

  if (seq.beta() > 0.0 && seq.all_isotropic()) {
    bool uniform = true;
    const double alpha = seq.cost(1).isotropic_curvature();
    for (int t = 2; t <= seq.horizon() && uniform; ++t)
      uniform = seq.cost(t).isotropic_curvature() == alpha;
    if (uniform) {
      const IsotropicInverse inv(alpha, seq.beta(), seq.horizon());
      const std::string csv_path = detail::out_path(cfg, "inverse.csv");
      std::ofstream out(csv_path);
      if (!out) throw ConfigError("cannot open " + csv_path);
      inv.write_csv(out);
      written.push_back(csv_path);
    }
  }
  return written;
}

} // namespace rhoco
