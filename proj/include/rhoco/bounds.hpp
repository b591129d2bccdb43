#pragma once

#include <cmath>

#include "rhoco/errors.hpp"
#include "rhoco/function_class.hpp"

namespace rhoco {

/// Every constant appearing in the regret guarantees and in the matching
/// lower bounds, evaluated for one instance family (class parameters,
/// switching weight, box diameter, path-length budget) and one window W.
///
/// Upper bounds (any alpha <= l):
///   kappa    = sqrt(1 - alpha/l)
///   delta    = (beta/l + 1) G / (1 - kappa)
///   q_upper  = (l + 4 beta)/alpha
///   ogd  <= delta * path
///   rhgd <= q_upper * delta * (1 - 1/q_upper)^W * path
///   rhag <= 2 delta * (1 - 1/sqrt(q_upper))^W * path
///
/// Lower bounds (stated for the class with l = alpha):
///   q_lower  = (alpha + 4 beta)/alpha
///   rho      = (sqrt(q_lower) - 1)/(sqrt(q_lower) + 1)
///   tau      = alpha^2 (1 - rho)^2 / (32 (alpha + beta)^2)
///   no lookahead: regret >= tau * G * path
///   window W >= 1: regret >= (tau alpha D / 3) rho^{2W} path   if path >= D
///                  regret >= (tau alpha / 3) rho^{2W} path^2   if path <  D
///   sampled adversary, expectation:
///                  E regret >= (alpha D / 96)(1 - rho)^2 (alpha/(alpha+beta))^2
///                              * path * rho^{2W}
struct BoundReport {
  double alpha = 0.0, l = 0.0, beta = 0.0, G = 0.0;
  double D = 0.0, path_length = 0.0;
  int W = 0;

  double kappa = 0.0, delta = 0.0;
  double q_upper = 0.0, q_lower = 0.0;
  double rho = 0.0, tau = 0.0;

  double ogd_upper = 0.0, rhgd_upper = 0.0, rhag_upper = 0.0;
  double lower_w0 = 0.0, lower_w = 0.0, mc_expectation_bound = 0.0;
};

inline BoundReport bound_report(const FunctionClassParams& params, double beta,
                                double D, double path_length, int W) {
  params.validate();
  if (!(beta >= 0.0) || !(D > 0.0) || !(path_length >= 0.0) || W < 0)
    throw ConfigError("bound_report: need beta >= 0, D > 0, path >= 0, W >= 0");

  BoundReport r;
  r.alpha = params.alpha;
  r.l = params.l;
  r.beta = beta;
  r.G = params.G;
  r.D = D;
  r.path_length = path_length;
  r.W = W;

  r.kappa = std::sqrt(1.0 - params.alpha / params.l);
  r.delta = (beta / params.l + 1.0) * params.G / (1.0 - r.kappa);
  r.q_upper = (params.l + 4.0 * beta) / params.alpha;
  r.q_lower = (params.alpha + 4.0 * beta) / params.alpha;
  r.rho = (std::sqrt(r.q_lower) - 1.0) / (std::sqrt(r.q_lower) + 1.0);
  const double ab = params.alpha + beta;
  r.tau = params.alpha * params.alpha * (1.0 - r.rho) * (1.0 - r.rho) / (32.0 * ab * ab);

  const double gd_decay = std::pow(1.0 - 1.0 / r.q_upper, W);
  const double ag_decay = std::pow(1.0 - 1.0 / std::sqrt(r.q_upper), W);
  if (gd_decay < ag_decay)
    throw SolverError("bound_report: decay ordering violated", ag_decay - gd_decay);

  r.ogd_upper = r.delta * path_length;
  r.rhgd_upper = r.q_upper * r.delta * gd_decay * path_length;
  r.rhag_upper = 2.0 * r.delta * ag_decay * path_length;

  const double rho2w = std::pow(r.rho, 2.0 * W);
  r.lower_w0 = r.tau * params.G * path_length;
  if (W == 0) {
    r.lower_w = r.lower_w0;
  } else if (path_length >= D) {
    r.lower_w = r.tau * params.alpha * D / 3.0 * rho2w * path_length;
  } else {
    r.lower_w = r.tau * params.alpha / 3.0 * rho2w * path_length * path_length;
  }
  const double ratio = params.alpha / ab;
  r.mc_expectation_bound = params.alpha * D / 96.0 * (1.0 - r.rho) * (1.0 - r.rho) *
                           ratio * ratio * path_length * rho2w;
  return r;
}

} // namespace rhoco
