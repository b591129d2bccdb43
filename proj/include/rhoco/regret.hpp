#pragma once

#include <string>
#include <vector>

#include "rhoco/cost_sequence.hpp"
#include "rhoco/offline.hpp"

namespace rhoco {

struct RegretRecord {
  double online_cost = 0.0;
  double offline_cost = 0.0;
  double regret = 0.0;
  // Certified bound on how suboptimal the offline oracle may be; regret can
  // only be underestimated by this much.
  double oracle_gap = 0.0;
  std::string oracle_method;
  std::vector<double> per_stage_seconds; // filled by callers that timed the run
};

/// Dynamic regret of a played trajectory against the hindsight optimum.
/// A regret below -(1e-8 + oracle gap) means the "oracle" was beaten by the
/// online play, which is impossible; treated as a numerical failure.
inline RegretRecord evaluate_regret(const CostSequence& seq, const Trajectory& play,
                                    double oracle_tolerance = 1e-9) {
  RegretRecord rec;
  rec.online_cost = seq.total_cost(play);
  OracleResult oracle = best_oracle(seq, oracle_tolerance);
  rec.offline_cost = oracle.cost;
  rec.oracle_gap = oracle.optimality_gap;
  rec.oracle_method = oracle.method;
  rec.regret = rec.online_cost - rec.offline_cost;
  if (rec.regret < -(1e-8 + rec.oracle_gap))
    throw SolverError("evaluate_regret: offline oracle certified cost exceeded",
                      -rec.regret);
  return rec;
}

/// Same, reusing an already computed oracle (sweeps solve hindsight once).
inline RegretRecord evaluate_regret(const CostSequence& seq, const Trajectory& play,
                                    const OracleResult& oracle) {
  RegretRecord rec;
  rec.online_cost = seq.total_cost(play);
  rec.offline_cost = oracle.cost;
  rec.oracle_gap = oracle.optimality_gap;
  rec.oracle_method = oracle.method;
  rec.regret = rec.online_cost - rec.offline_cost;
  if (rec.regret < -(1e-8 + rec.oracle_gap))
    throw SolverError("evaluate_regret: offline oracle certified cost exceeded",
                      -rec.regret);
  return rec;
}

} // namespace rhoco
