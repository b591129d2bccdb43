// Command-line front end: single runs, window sweeps, Monte-Carlo
// lower-bound studies, timing benchmarks and instance export.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rhoco/rhoco.hpp"

namespace {

struct RawOpts {
  std::string config;
  std::string instance;
  std::string algos;
  std::string w;
  std::string out;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  int realizations = 200;
  int T = 0;
  bool count_gradients = false;
  double alpha = 1.0, beta = 1.0, D = 1.0, path = 10.0;
};

void add_common(CLI::App* sub, RawOpts& raw) {
  sub->add_option("--config", raw.config,
                  "JSON config file; explicit flags override its keys");
  sub->add_option("--instance", raw.instance,
                  "'special', 'dispatch' or a path to an instance JSON file");
  sub->add_option("--algos", raw.algos,
                  "comma-separated subset of ogd,rhgd,rhag,mpc");
  sub->add_option("--w", raw.w,
                  "prediction windows: values and ranges, e.g. '0,1,2' or '0..10'");
  sub->add_option("--seed", raw.seed, "seed for synthetic traces and adversaries");
  sub->add_option("--tol", raw.tol, "oracle / inner-solver tolerance");
  sub->add_option("--out", raw.out, "output directory (created if missing)");
  sub->add_option("--realizations", raw.realizations,
                  "Monte-Carlo sample size for lowerbound");
  sub->add_flag("--count-gradients", raw.count_gradients,
                "report gradient-evaluation counts instead of wall time");
  sub->add_option("--T", raw.T, "horizon override (0 keeps the scenario default)");
  sub->add_option("--alpha", raw.alpha, "adversary curvature (lowerbound)");
  sub->add_option("--beta", raw.beta, "adversary switching weight (lowerbound)");
  sub->add_option("--D", raw.D, "adversary box diameter (lowerbound)");
  sub->add_option("--path", raw.path, "adversary path-length budget (lowerbound)");
}

rhoco::ExperimentConfig build_config(const CLI::App* sub, const RawOpts& raw) {
  rhoco::ExperimentConfig cfg;
  if (!raw.config.empty()) {
    std::ifstream in(raw.config);
    if (!in) throw rhoco::ConfigError("cannot open config file " + raw.config);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw rhoco::ConfigError(std::string("config file parse error: ") + e.what());
    }
    rhoco::apply_json_config(cfg, j);
  }
  if (sub->count("--instance")) cfg.instance = raw.instance;
  if (sub->count("--algos")) cfg.algos = rhoco::parse_algos(raw.algos);
  if (sub->count("--w")) cfg.windows = rhoco::parse_windows(raw.w);
  if (sub->count("--seed")) cfg.seed = raw.seed;
  if (sub->count("--tol")) cfg.tolerance = raw.tol;
  if (sub->count("--out")) cfg.out = raw.out;
  if (sub->count("--realizations")) cfg.realizations = raw.realizations;
  if (sub->count("--count-gradients")) cfg.count_gradients = raw.count_gradients;
  if (sub->count("--T")) cfg.T = raw.T;
  if (sub->count("--alpha")) cfg.alpha = raw.alpha;
  if (sub->count("--beta")) cfg.beta = raw.beta;
  if (sub->count("--D")) cfg.D = raw.D;
  if (sub->count("--path")) cfg.path_budget = raw.path;
  return cfg;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"smoothed online optimization: algorithms, oracles and bounds"};
  app.require_subcommand(1);

  CLI::App* c_run = app.add_subcommand(
      "run", "run algorithms on one instance and report dynamic regret");
  CLI::App* c_sweep = app.add_subcommand(
      "sweep", "regret versus prediction window, with guarantee overlays");
  CLI::App* c_lower = app.add_subcommand(
      "lowerbound", "Monte-Carlo regret against the sampled adversary");
  CLI::App* c_bench = app.add_subcommand(
      "bench", "per-stage timing or gradient-evaluation counts");
  CLI::App* c_export = app.add_subcommand(
      "export-instance", "serialize the selected instance to JSON");

  RawOpts r_run, r_sweep, r_lower, r_bench, r_export;
  add_common(c_run, r_run);
  add_common(c_sweep, r_sweep);
  add_common(c_lower, r_lower);
  add_common(c_bench, r_bench);
  add_common(c_export, r_export);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::vector<std::string> files;
    if (c_run->parsed()) files = rhoco::cmd_run(build_config(c_run, r_run));
    else if (c_sweep->parsed()) files = rhoco::cmd_sweep(build_config(c_sweep, r_sweep));
    else if (c_lower->parsed()) files = rhoco::cmd_lowerbound(build_config(c_lower, r_lower));
    else if (c_bench->parsed()) files = rhoco::cmd_bench(build_config(c_bench, r_bench));
    else if (c_export->parsed())
      files = rhoco::cmd_export_instance(build_config(c_export, r_export));
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
    return 0;
  } catch (const rhoco::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rhoco::GateError& e) {
    std::cerr << "information gate violated: " << e.what() << "\n";
    return 3;
  } catch (const rhoco::SolverError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
