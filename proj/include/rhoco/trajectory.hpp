#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rhoco/action_space.hpp"
#include "rhoco/errors.hpp"

namespace rhoco {

/// Sequence of actions x_1..x_T, stored 0-indexed.
class Trajectory {
public:
  Trajectory() = default;
  explicit Trajectory(std::vector<Eigen::VectorXd> pts) : pts_(std::move(pts)) {}

  static Trajectory constant(int T, const Eigen::VectorXd& x) {
    return Trajectory(std::vector<Eigen::VectorXd>(static_cast<std::size_t>(T), x));
  }

  int size() const { return static_cast<int>(pts_.size()); }
  bool empty() const { return pts_.empty(); }
  void push_back(Eigen::VectorXd p) { pts_.push_back(std::move(p)); }
  void reserve(int T) { pts_.reserve(static_cast<std::size_t>(T)); }

  const Eigen::VectorXd& operator[](int i) const { return pts_[static_cast<std::size_t>(i)]; }
  Eigen::VectorXd& operator[](int i) { return pts_[static_cast<std::size_t>(i)]; }

  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

  double max_abs_diff(const Trajectory& other) const {
    if (other.size() != size())
      throw ConfigError("Trajectory: length mismatch in comparison");
    double m = 0.0;
    for (int i = 0; i < size(); ++i)
      m = std::max(m, (pts_[static_cast<std::size_t>(i)] - other[i]).cwiseAbs().maxCoeff());
    return m;
  }

  bool inside(const ActionSpace& space, double tol = 0.0) const {
    for (const auto& p : pts_)
      if (!space.contains(p, tol)) return false;
    return true;
  }

  Eigen::VectorXd stacked() const {
    if (pts_.empty()) return {};
    const int n = static_cast<int>(pts_.front().size());
    Eigen::VectorXd z(static_cast<Eigen::Index>(pts_.size()) * n);
    for (std::size_t t = 0; t < pts_.size(); ++t)
      z.segment(static_cast<Eigen::Index>(t) * n, n) = pts_[t];
    return z;
  }

  static Trajectory from_stacked(const Eigen::VectorXd& z, int T, int n) {
    if (z.size() != static_cast<Eigen::Index>(T) * n)
      throw ConfigError("Trajectory: stacked size mismatch");
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t)
      pts.push_back(z.segment(static_cast<Eigen::Index>(t) * n, n));
    return Trajectory(std::move(pts));
  }

private:
  std::vector<Eigen::VectorXd> pts_;
};

} // namespace rhoco
