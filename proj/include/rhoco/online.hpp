#pragma once

#include <algorithm>
#include <chrono>
#include <deque>
#include <limits>
#include <numeric>
#include <vector>

#include "rhoco/cost_sequence.hpp"
#include "rhoco/gate.hpp"

namespace rhoco {

/// Step sizes for the online algorithms. The defaults realize the analyzed
/// rates: gamma = 1/l for the one-step gradient stage, eta = 1/(l + 4 beta)
/// for sweeps over the coupled cost, and the heavy-ball weight lambda =
/// (1 - sqrt(alpha eta)) / (1 + sqrt(alpha eta)) for the accelerated sweep.
struct AlgoConfig {
  int W = 0;
  double gamma = 0.0;
  double eta = 0.0;
  double lambda = 0.0;

  static AlgoConfig defaults(const CostSequence& seq, int W) {
    AlgoConfig c;
    c.W = W;
    c.gamma = 1.0 / seq.class_params().l;
    c.eta = 1.0 / seq.smoothness();
    const double r = std::sqrt(seq.class_params().alpha * c.eta);
    c.lambda = (1.0 - r) / (1.0 + r);
    return c;
  }

  /// Fill unset step sizes from the instance; lookahead beyond the horizon
  /// is useless, so W is clamped to T.
  AlgoConfig normalized(const CostSequence& seq) const {
    AlgoConfig c = *this;
    if (c.gamma == 0.0 && c.eta == 0.0 && c.lambda == 0.0) {
      const AlgoConfig d = defaults(seq, c.W);
      c.gamma = d.gamma;
      c.eta = d.eta;
      c.lambda = d.lambda;
    }
    if (c.W < 0) throw ConfigError("AlgoConfig: W must be >= 0");
    if (!(c.gamma > 0.0) || !(c.eta > 0.0))
      throw ConfigError("AlgoConfig: step sizes must be positive");
    if (!(c.lambda >= 0.0) || !(c.lambda < 1.0))
      throw ConfigError("AlgoConfig: lambda must lie in [0, 1)");
    c.W = std::min(c.W, seq.horizon());
    return c;
  }
};

struct RunStats {
  // Indexed by stage 1..T (0-based storage): work done during that stage of
  // the algorithm loop. Stages that execute before the first decision (they
  // exist when W >= 2 and run at wall-clock stage 1) are reported separately
  // as warmup so the per-stage numbers stay comparable across algorithms.
  std::vector<double> per_stage_seconds;
  std::vector<long> per_stage_grad_evals;
  double warmup_seconds = 0.0;
  long warmup_grad_evals = 0;

  double total_seconds() const {
    return warmup_seconds +
           std::accumulate(per_stage_seconds.begin(), per_stage_seconds.end(), 0.0);
  }
  long total_grad_evals() const {
    return warmup_grad_evals +
           std::accumulate(per_stage_grad_evals.begin(), per_stage_grad_evals.end(), 0L);
  }
  double mean_stage_seconds() const {
    if (per_stage_seconds.empty()) return 0.0;
    return std::accumulate(per_stage_seconds.begin(), per_stage_seconds.end(), 0.0) /
           static_cast<double>(per_stage_seconds.size());
  }
  double median_stage_seconds() const {
    if (per_stage_seconds.empty()) return 0.0;
    std::vector<double> v = per_stage_seconds;
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  }
  double mean_stage_grad_evals() const {
    if (per_stage_grad_evals.empty()) return 0.0;
    return static_cast<double>(std::accumulate(per_stage_grad_evals.begin(),
                                               per_stage_grad_evals.end(), 0L)) /
           static_cast<double>(per_stage_grad_evals.size());
  }
};

struct RunResult {
  Trajectory trajectory;
  RunStats stats;
};

/// Sliding window of per-stage iterates for the receding-horizon loops.
/// The slot for stage t is opened at loop stage t - W with the one-step
/// look-ahead value and rewritten once per loop stage through stage t, at
/// which point its value is the decision played at t. Each slot keeps the
/// current value and the one before it, with the loop stage that wrote each,
/// so every read asserts it sees the version the recursion calls for.
class HorizonBuffer {
public:
  HorizonBuffer(int horizon, bool with_momentum)
      : horizon_(horizon), momentum_(with_momentum) {}

  void open(int t, int stage, Eigen::VectorXd x) {
    if (t < 1 || t > horizon_)
      throw std::logic_error("HorizonBuffer: slot outside the horizon");
    if (t != next_)
      throw std::logic_error("HorizonBuffer: slots must be opened in stage order");
    ++next_;
    Slot s;
    s.stage = t;
    s.cur_version = stage;
    if (momentum_) s.ycur = x;
    s.cur = std::move(x);
    slots_.push_back(std::move(s));
  }

  void update(int t, int stage, Eigen::VectorXd x) {
    Slot& s = at(t);
    if (s.cur_version != stage - 1)
      throw std::logic_error("HorizonBuffer: update out of order");
    s.prev = std::move(s.cur);
    s.prev_version = s.cur_version;
    s.has_prev = true;
    s.cur = std::move(x);
    s.cur_version = stage;
  }

  /// Accelerated variant: also rotates the momentum value
  /// y <- (1 + lambda) x_new - lambda x_old.
  void update_with_momentum(int t, int stage, Eigen::VectorXd x, double lambda) {
    Slot& s = at(t);
    if (s.cur_version != stage - 1)
      throw std::logic_error("HorizonBuffer: update out of order");
    s.yprev = std::move(s.ycur);
    s.ycur = detail::momentum_combine(x, s.cur, lambda);
    s.prev = std::move(s.cur);
    s.prev_version = s.cur_version;
    s.has_prev = true;
    s.cur = std::move(x);
    s.cur_version = stage;
  }

  const Eigen::VectorXd& current(int t, int version) const {
    const Slot& s = at(t);
    if (s.cur_version != version)
      throw std::logic_error("HorizonBuffer: stale read of current value");
    return s.cur;
  }

  const Eigen::VectorXd& previous(int t, int version) const {
    const Slot& s = at(t);
    if (!s.has_prev || s.prev_version != version)
      throw std::logic_error("HorizonBuffer: stale read of previous value");
    return s.prev;
  }

  const Eigen::VectorXd& y_current(int t, int version) const {
    require_momentum();
    const Slot& s = at(t);
    if (s.cur_version != version)
      throw std::logic_error("HorizonBuffer: stale read of momentum value");
    return s.ycur;
  }

  const Eigen::VectorXd& y_previous(int t, int version) const {
    require_momentum();
    const Slot& s = at(t);
    if (!s.has_prev || s.prev_version != version)
      throw std::logic_error("HorizonBuffer: stale read of previous momentum value");
    return s.yprev;
  }

  /// The decision for stage t, valid only once its last rewrite happened.
  Eigen::VectorXd emit(int t) {
    const Slot& s = at(t);
    if (s.cur_version != t)
      throw std::logic_error("HorizonBuffer: emitted before the final update");
    return s.cur;
  }

  /// Forget slots below t. A slot is read one stage past its emission (as
  /// the trailing neighbour of the next decision), so callers drop below the
  /// stage just emitted, not below the next one.
  void drop_below(int t) {
    while (!slots_.empty() && slots_.front().stage < t) {
      slots_.pop_front();
      ++base_;
    }
  }

  int open_count() const { return static_cast<int>(slots_.size()); }

private:
  struct Slot {
    int stage = 0;
    Eigen::VectorXd cur, prev, ycur, yprev;
    int cur_version = 0;
    int prev_version = std::numeric_limits<int>::min();
    bool has_prev = false;
  };

  Slot& at(int t) {
    if (t < base_ || t >= base_ + static_cast<int>(slots_.size()))
      throw std::logic_error("HorizonBuffer: slot not resident");
    return slots_[static_cast<std::size_t>(t - base_)];
  }
  const Slot& at(int t) const { return const_cast<HorizonBuffer*>(this)->at(t); }

  void require_momentum() const {
    if (!momentum_)
      throw std::logic_error("HorizonBuffer: momentum values not enabled");
  }

  std::deque<Slot> slots_;
  int base_ = 1;
  int next_ = 1;
  int horizon_;
  bool momentum_;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace detail

/// Online gradient descent: x_1 = x_0 and
///   x_t = proj(x_{t-1} - gamma grad f_{t-1}(x_{t-1})),
/// using only costs already revealed when each decision is made.
inline RunResult run_ogd(const CostSequence& seq, const AlgoConfig& config) {
  const AlgoConfig cfg = config.normalized(seq);
  const int T = seq.horizon();
  GatedSequence gate(seq);
  RunResult out;
  out.trajectory.reserve(T);
  out.stats.per_stage_seconds.assign(static_cast<std::size_t>(T), 0.0);
  out.stats.per_stage_grad_evals.assign(static_cast<std::size_t>(T), 0);
  out.trajectory.push_back(seq.x0());
  for (int t = 2; t <= T; ++t) {
    const auto t0 = std::chrono::steady_clock::now();
    gate.reveal_up_to(t - 1);
    out.trajectory.push_back(gate.ogd_step(t - 1, out.trajectory[t - 2], cfg.gamma));
    out.stats.per_stage_seconds[static_cast<std::size_t>(t - 1)] = detail::seconds_since(t0);
    out.stats.per_stage_grad_evals[static_cast<std::size_t>(t - 1)] = 1;
  }
  return out;
}

/// Receding-horizon gradient descent. Loop stage s first extends the window
/// with a one-step gradient value for stage s + W, then sweeps backwards
/// refining x_t for t = min(s+W-1, T) .. max(s, 1):
///   x_t^s = proj(x_t^{s-1} - eta g_t(x_{t-1}^{s-2}, x_t^{s-1}, x_{t+1}^s)),
/// where g_t is the partial gradient of the total cost. The decision played
/// at stage s is x_s^s. With W = 0 the sweep is empty and the recursion is
/// exactly online gradient descent.
inline RunResult run_rhgd(const CostSequence& seq, const AlgoConfig& config) {
  const AlgoConfig cfg = config.normalized(seq);
  const int T = seq.horizon(), W = cfg.W;
  GatedSequence gate(seq);
  HorizonBuffer buf(T, false);
  RunResult out;
  out.trajectory.reserve(T);
  out.stats.per_stage_seconds.assign(static_cast<std::size_t>(T), 0.0);
  out.stats.per_stage_grad_evals.assign(static_cast<std::size_t>(T), 0);

  buf.open(1, 1 - W, seq.x0());
  if (W == 0) out.trajectory.push_back(buf.emit(1));

  for (int s = 2 - W; s <= T; ++s) {
    const auto t0 = std::chrono::steady_clock::now();
    const long e0 = gate.gradient_evaluations();
    gate.reveal_up_to(std::min(s + W - 1, T));
    if (s + W <= T) {
      const int t = s + W;
      buf.open(t, s, gate.ogd_step(t - 1, buf.current(t - 1, s - 1), cfg.gamma));
    }
    for (int t = std::min(s + W - 1, T); t >= std::max(s, 1); --t) {
      const Eigen::VectorXd& x_t = buf.current(t, s - 1);
      const Eigen::VectorXd& x_p = (t == 1) ? seq.x0() : buf.previous(t - 1, s - 2);
      const Eigen::VectorXd& x_n = (t == T) ? x_t : buf.current(t + 1, s);
      buf.update(t, s, gate.descent_step(t, x_p, x_t, x_n, cfg.eta));
    }
    const double secs = detail::seconds_since(t0);
    const long evals = gate.gradient_evaluations() - e0;
    if (s >= 1) {
      out.stats.per_stage_seconds[static_cast<std::size_t>(s - 1)] = secs;
      out.stats.per_stage_grad_evals[static_cast<std::size_t>(s - 1)] = evals;
      out.trajectory.push_back(buf.emit(s));
      buf.drop_below(s);
    } else {
      out.stats.warmup_seconds += secs;
      out.stats.warmup_grad_evals += evals;
    }
  }
  return out;
}

/// Accelerated receding-horizon method: same window mechanics, but the
/// backward sweep descends from momentum values
///   x_t^s = proj(y_t^{s-1} - eta g_t(y_{t-1}^{s-2}, y_t^{s-1}, y_{t+1}^s)),
///   y_t^s = (1 + lambda) x_t^s - lambda x_t^{s-1},
/// with y seeded to x when a slot opens. Momentum points may leave the box;
/// only x is projected.
inline RunResult run_rhag(const CostSequence& seq, const AlgoConfig& config) {
  const AlgoConfig cfg = config.normalized(seq);
  const int T = seq.horizon(), W = cfg.W;
  GatedSequence gate(seq);
  HorizonBuffer buf(T, true);
  RunResult out;
  out.trajectory.reserve(T);
  out.stats.per_stage_seconds.assign(static_cast<std::size_t>(T), 0.0);
  out.stats.per_stage_grad_evals.assign(static_cast<std::size_t>(T), 0);

  buf.open(1, 1 - W, seq.x0());
  if (W == 0) out.trajectory.push_back(buf.emit(1));

  for (int s = 2 - W; s <= T; ++s) {
    const auto t0 = std::chrono::steady_clock::now();
    const long e0 = gate.gradient_evaluations();
    gate.reveal_up_to(std::min(s + W - 1, T));
    if (s + W <= T) {
      const int t = s + W;
      buf.open(t, s, gate.ogd_step(t - 1, buf.current(t - 1, s - 1), cfg.gamma));
    }
    for (int t = std::min(s + W - 1, T); t >= std::max(s, 1); --t) {
      const Eigen::VectorXd& y_t = buf.y_current(t, s - 1);
      const Eigen::VectorXd& y_p = (t == 1) ? seq.x0() : buf.y_previous(t - 1, s - 2);
      const Eigen::VectorXd& y_n = (t == T) ? y_t : buf.y_current(t + 1, s);
      buf.update_with_momentum(t, s, gate.descent_step(t, y_p, y_t, y_n, cfg.eta),
                               cfg.lambda);
    }
    const double secs = detail::seconds_since(t0);
    const long evals = gate.gradient_evaluations() - e0;
    if (s >= 1) {
      out.stats.per_stage_seconds[static_cast<std::size_t>(s - 1)] = secs;
      out.stats.per_stage_grad_evals[static_cast<std::size_t>(s - 1)] = evals;
      out.trajectory.push_back(buf.emit(s));
      buf.drop_below(s);
    } else {
      out.stats.warmup_seconds += secs;
      out.stats.warmup_grad_evals += evals;
    }
  }
  return out;
}

/// k rounds of the all-at-once (Jacobi style) projected gradient iteration
/// on the stacked total cost, every stage refreshed from the previous round:
///   x_t^{(k)} = proj(x_t^{(k-1)} - eta g_t(x_{t-1}^{(k-1)}, x_t^{(k-1)}, x_{t+1}^{(k-1)})).
/// Seeding it with the online gradient descent outputs reproduces the
/// receding-horizon gradient trajectory after exactly k = W rounds, float
/// for float; that equivalence is what the tests pin.
inline Trajectory offline_gd_iterates(const CostSequence& seq, const Trajectory& init,
                                      int k, double eta) {
  const int T = seq.horizon();
  if (init.size() != T)
    throw ConfigError("offline_gd_iterates: bad initial trajectory length");
  if (k < 0) throw ConfigError("offline_gd_iterates: k must be >= 0");
  Trajectory cur = init;
  Trajectory next = init;
  for (int round = 0; round < k; ++round) {
    for (int t = 1; t <= T; ++t) {
      const Eigen::VectorXd& x_p = (t == 1) ? seq.x0() : cur[t - 2];
      const Eigen::VectorXd& x_n = (t == T) ? cur[t - 1] : cur[t];
      next[t - 1] = detail::gd_update(seq, t, x_p, cur[t - 1], x_n, eta);
    }
    std::swap(cur, next);
  }
  return cur;
}

/// Accelerated counterpart of the iteration above, with momentum sequence
/// y^{(0)} = x^{(0)} and y^{(k)} = (1 + lambda) x^{(k)} - lambda x^{(k-1)}.
/// Matches the accelerated receding-horizon outputs after k = W rounds.
inline Trajectory offline_nag_iterates(const CostSequence& seq, const Trajectory& init,
                                       int k, double eta, double lambda) {
  const int T = seq.horizon();
  if (init.size() != T)
    throw ConfigError("offline_nag_iterates: bad initial trajectory length");
  if (k < 0) throw ConfigError("offline_nag_iterates: k must be >= 0");
  Trajectory x = init;
  Trajectory y = init;
  Trajectory x_next = init;
  for (int round = 0; round < k; ++round) {
    for (int t = 1; t <= T; ++t) {
      const Eigen::VectorXd& y_p = (t == 1) ? seq.x0() : y[t - 2];
      const Eigen::VectorXd& y_n = (t == T) ? y[t - 1] : y[t];
      x_next[t - 1] = detail::gd_update(seq, t, y_p, y[t - 1], y_n, eta);
    }
    for (int t = 0; t < T; ++t)
      y[t] = detail::momentum_combine(x_next[t], x[t], lambda);
    std::swap(x, x_next);
  }
  return x;
}

} // namespace rhoco
