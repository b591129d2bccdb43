#pragma once

// Umbrella header for the whole library: smoothed online convex
// optimization with quadratic switching costs, finite-lookahead algorithms,
// hindsight oracles, regret bounds and the experiment harness.

#include "rhoco/action_space.hpp"
#include "rhoco/adversary.hpp"
#include "rhoco/bounds.hpp"
#include "rhoco/cost_sequence.hpp"
#include "rhoco/csv.hpp"
#include "rhoco/errors.hpp"
#include "rhoco/experiment.hpp"
#include "rhoco/function_class.hpp"
#include "rhoco/gate.hpp"
#include "rhoco/mpc.hpp"
#include "rhoco/offline.hpp"
#include "rhoco/online.hpp"
#include "rhoco/quadratic_cost.hpp"
#include "rhoco/regret.hpp"
#include "rhoco/rng.hpp"
#include "rhoco/scenarios.hpp"
#include "rhoco/serialization.hpp"
#include "rhoco/solvers.hpp"
#include "rhoco/svg.hpp"
#include "rhoco/trajectory.hpp"
#include "rhoco/tridiagonal.hpp"
