#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

#include "rhoco/cost_sequence.hpp"
#include "rhoco/errors.hpp"

namespace rhoco {

/// Thomas elimination for a tridiagonal system. sub/super hold the off
/// diagonals (length T-1), diag the main diagonal (length T). No pivoting;
/// intended for the strictly diagonally dominant systems built below.
inline Eigen::VectorXd thomas_solve(const Eigen::VectorXd& sub,
                                    const Eigen::VectorXd& diag,
                                    const Eigen::VectorXd& super,
                                    const Eigen::VectorXd& rhs) {
  const Eigen::Index T = diag.size();
  if (T == 0 || rhs.size() != T || sub.size() != T - 1 || super.size() != T - 1)
    throw ConfigError("thomas_solve: inconsistent band sizes");
  Eigen::VectorXd c(T), d(T);
  c[0] = 0.0;
  double pivot = diag[0];
  if (pivot == 0.0) throw SolverError("thomas_solve: zero pivot", 0.0);
  if (T > 1) c[0] = super[0] / pivot;
  d[0] = rhs[0] / pivot;
  for (Eigen::Index i = 1; i < T; ++i) {
    pivot = diag[i] - sub[i - 1] * c[i - 1];
    if (pivot == 0.0) throw SolverError("thomas_solve: zero pivot", 0.0);
    if (i < T - 1) c[i] = super[i] / pivot;
    d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / pivot;
  }
  for (Eigen::Index i = T - 2; i >= 0; --i) d[i] -= c[i] * d[i + 1];
  return d;
}

/// First-order optimality of the unconstrained scalar isotropic problem
///   min sum_t (alpha/2)(x_t - theta_t)^2 + (beta/2)(x_t - x_{t-1})^2,
/// with x_0 = 0, reads H x = theta after dividing each equation by alpha:
/// H has diagonal 1 + 2 beta/alpha (last entry 1 + beta/alpha) and off
/// diagonal -beta/alpha. Strictly diagonally dominant for every beta >= 0.
struct IsotropicSystem {
  Eigen::VectorXd sub, diag, super;

  IsotropicSystem(double alpha, double beta, int T) {
    if (!(alpha > 0.0) || !(beta >= 0.0) || T < 1)
      throw ConfigError("IsotropicSystem: need alpha > 0, beta >= 0, T >= 1");
    const double b = beta / alpha;
    diag = Eigen::VectorXd::Constant(T, 1.0 + 2.0 * b);
    diag[T - 1] = 1.0 + b;
    sub = Eigen::VectorXd::Constant(std::max(T - 1, 0), -b);
    super = sub;
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& theta) const {
    return thomas_solve(sub, diag, super, theta);
  }

  Eigen::MatrixXd dense() const {
    const Eigen::Index T = diag.size();
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(T, T);
    for (Eigen::Index i = 0; i < T; ++i) {
      H(i, i) = diag[i];
      if (i + 1 < T) {
        H(i, i + 1) = super[i];
        H(i + 1, i) = sub[i];
      }
    }
    return H;
  }
};

/// Entries of A = H^{-1} in closed form. With Q = (alpha + 4 beta)/alpha,
/// rho = (sqrt(Q) - 1)/(sqrt(Q) + 1) and xi = alpha/beta + 2 (rho solves
/// rho^2 - xi rho + 1 = 0), the inverse factors as
///   a_{t,t+tau} = (alpha/beta) u_t v_{t+tau},
///   u_t = rho/(1 - rho^2) (rho^{-t} - rho^t),
///   v_t = c3 rho^{-(T-t)} + c4 rho^{T-t},
/// which regroups into bounded factors times rho^tau:
///   a_{t,t+tau} = (alpha/beta) U(t) V B(t+tau) rho^tau,
///   U(t) = rho (1 - rho^{2t})/(1 - rho^2)            [= rho^t u_t]
///   V    = 1 / ((xi - 1) U(T) - rho U(T-1))          [= rho^{-T} v_T]
///   B(s) = c3t + c4t rho^{2(T-s)}                    [= rho^{T-s} v_s / v_T]
/// with c3t = rho (xi - 1 - rho)/(1 - rho^2) and c4t = (1 - (xi-1) rho)/
/// (1 - rho^2), c3t + c4t = 1. Every factor is O(1), so the formula is
/// stable for arbitrarily large T; rho^tau may underflow to zero, which is
/// the correct limit. All entries are nonnegative, rows sum to at most one,
/// and a_{t,t+tau} >= (alpha/(alpha+beta)) (1 - rho) rho^tau.
class IsotropicInverse {
public:
  IsotropicInverse(double alpha, double beta, int T)
      : alpha_(alpha), beta_(beta), T_(T) {
    if (!(alpha > 0.0) || T < 1)
      throw ConfigError("IsotropicInverse: need alpha > 0 and T >= 1");
    if (!(beta > 0.0))
      throw ConfigError("IsotropicInverse: beta must be positive (no coupling to invert around)");
    const double q = (alpha + 4.0 * beta) / alpha;
    const double sq = std::sqrt(q);
    rho_ = (sq - 1.0) / (sq + 1.0);
    xi_ = alpha / beta + 2.0;
    one_minus_rho2_ = 1.0 - rho_ * rho_;
    c3t_ = rho_ * (xi_ - 1.0 - rho_) / one_minus_rho2_;
    c4t_ = (1.0 - (xi_ - 1.0) * rho_) / one_minus_rho2_;
    V_ = 1.0 / ((xi_ - 1.0) * U(T_) - rho_ * U(T_ - 1));
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  int size() const { return T_; }
  double rho() const { return rho_; }
  double xi() const { return xi_; }

  /// a_{t,s}, 1-indexed, symmetric in (t, s).
  double entry(int t, int s) const {
    if (t < 1 || s < 1 || t > T_ || s > T_)
      throw ConfigError("IsotropicInverse: index out of range");
    if (t > s) std::swap(t, s);
    return (alpha_ / beta_) * U(t) * V_ *
           (c3t_ + c4t_ * std::pow(rho_, 2.0 * (T_ - s))) *
           std::pow(rho_, static_cast<double>(s - t));
  }

  /// Geometric floor on the off-diagonal decay:
  /// a_{t,t+tau} >= (alpha/(alpha+beta)) (1 - rho) rho^tau for all t.
  double decay_floor(int tau) const {
    if (tau < 0 || tau > T_ - 1)
      throw ConfigError("IsotropicInverse: offset out of range");
    return alpha_ / (alpha_ + beta_) * (1.0 - rho_) *
           std::pow(rho_, static_cast<double>(tau));
  }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd A(T_, T_);
    for (int t = 1; t <= T_; ++t)
      for (int s = t; s <= T_; ++s) A(t - 1, s - 1) = A(s - 1, t - 1) = entry(t, s);
    return A;
  }

  /// One CSV row per t; column tau holds a_{t,t+tau}, blank past the edge.
  void write_csv(std::ostream& out) const {
    out << "t";
    for (int tau = 0; tau < T_; ++tau) out << ",tau" << tau;
    out << "\n";
    char buf[32];
    for (int t = 1; t <= T_; ++t) {
      out << t;
      for (int tau = 0; tau < T_; ++tau) {
        out << ",";
        if (t + tau <= T_) {
          std::snprintf(buf, sizeof buf, "%.17g", entry(t, t + tau));
          out << buf;
        }
      }
      out << "\n";
    }
  }

private:
  double U(int t) const {
    return rho_ * (1.0 - std::pow(rho_, 2.0 * t)) / one_minus_rho2_;
  }

  double alpha_, beta_;
  int T_;
  double rho_, xi_, one_minus_rho2_, c3t_, c4t_, V_;
};

/// Exact minimizer of an isotropic instance over its box. Requires x_0 = 0
/// and every center inside the box: then the unconstrained solution is a
/// convex combination of {0, theta_1..theta_T} coordinate-wise (rows of the
/// inverse are nonnegative and sum to at most one), hence already feasible,
/// and the box constraint is inactive.
inline Trajectory solve_isotropic_closed_form(const CostSequence& seq) {
  const int T = seq.horizon(), n = seq.dim();
  if (!seq.all_isotropic())
    throw ConfigError("solve_isotropic_closed_form: costs are not isotropic");
  const double alpha = seq.cost(1).isotropic_curvature();
  for (int t = 2; t <= T; ++t)
    if (seq.cost(t).isotropic_curvature() != alpha)
      throw ConfigError("solve_isotropic_closed_form: stage curvatures differ");
  if (seq.x0().cwiseAbs().maxCoeff() != 0.0)
    throw ConfigError("solve_isotropic_closed_form: requires x_0 = 0");
  if (!seq.space().contains(Eigen::VectorXd::Zero(n)))
    throw ConfigError("solve_isotropic_closed_form: box must contain the origin");
  for (int t = 1; t <= T; ++t)
    if (!seq.space().contains(seq.cost(t).isotropic_center()))
      throw ConfigError("solve_isotropic_closed_form: center outside the box");

  Trajectory out;
  out.reserve(T);
  if (seq.beta() == 0.0) {
    for (int t = 1; t <= T; ++t) out.push_back(seq.cost(t).isotropic_center());
    return out;
  }

  IsotropicSystem sys(alpha, seq.beta(), T);
  Eigen::MatrixXd coords(T, n); // column j solves the scalar problem of coordinate j
  Eigen::VectorXd rhs(T);
  for (int j = 0; j < n; ++j) {
    for (int t = 1; t <= T; ++t) rhs[t - 1] = seq.cost(t).isotropic_center()[j];
    coords.col(j) = sys.solve(rhs);
  }
  for (int t = 1; t <= T; ++t) {
    Eigen::VectorXd x = coords.row(t - 1).transpose();
    if (!seq.space().contains(x, 1e-9))
      throw SolverError("solve_isotropic_closed_form: solution left the box", 0.0);
    out.push_back(seq.space().project(x));
  }
  return out;
}

} // namespace rhoco
