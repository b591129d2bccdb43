#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rhoco/cost_sequence.hpp"

namespace rhoco {

/// Instance files are plain JSON:
///   { "T":, "n":, "beta":, "x0":[n], "space":{"lower":[n],"upper":[n]},
///     "costs":[ {"P":[n*n row-major], "q":[n], "c":} ... ] }
/// Isotropic instances built from centers serialize compactly, with the
/// costs array replaced by "alpha" and "thetas":[[n] ...]. Class parameters
/// are not stored; they are re-deduced on load.

namespace detail {

inline nlohmann::json vec_to_json(const Eigen::VectorXd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Eigen::VectorXd vec_from_json(const nlohmann::json& a, int expect,
                                     const char* what) {
  if (!a.is_array() || static_cast<int>(a.size()) != expect)
    throw ConfigError(std::string("instance json: bad array for ") + what);
  Eigen::VectorXd v(expect);
  for (int i = 0; i < expect; ++i) {
    if (!a[static_cast<std::size_t>(i)].is_number())
      throw ConfigError(std::string("instance json: non-numeric entry in ") + what);
    v[i] = a[static_cast<std::size_t>(i)].get<double>();
  }
  return v;
}

} // namespace detail

inline nlohmann::json to_json(const CostSequence& seq) {
  const int T = seq.horizon(), n = seq.dim();
  nlohmann::json j;
  j["T"] = T;
  j["n"] = n;
  j["beta"] = seq.beta();
  j["x0"] = detail::vec_to_json(seq.x0());
  j["space"] = {{"lower", detail::vec_to_json(seq.space().lower())},
                {"upper", detail::vec_to_json(seq.space().upper())}};

  bool compact = seq.all_isotropic();
  double alpha = compact ? seq.cost(1).isotropic_curvature() : 0.0;
  for (int t = 1; t <= T && compact; ++t) {
    const auto& c = seq.cost(t);
    compact = c.isotropic_curvature() == alpha &&
              c.offset() == 0.5 * alpha * c.isotropic_center().squaredNorm();
  }
  if (compact) {
    j["alpha"] = alpha;
    nlohmann::json thetas = nlohmann::json::array();
    for (int t = 1; t <= T; ++t)
      thetas.push_back(detail::vec_to_json(seq.cost(t).isotropic_center()));
    j["thetas"] = std::move(thetas);
    return j;
  }

  nlohmann::json costs = nlohmann::json::array();
  for (int t = 1; t <= T; ++t) {
    const auto& c = seq.cost(t);
    nlohmann::json p = nlohmann::json::array();
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col) p.push_back(c.quadratic()(r, col));
    costs.push_back({{"P", std::move(p)},
                     {"q", detail::vec_to_json(c.linear())},
                     {"c", c.offset()}});
  }
  j["costs"] = std::move(costs);
  return j;
}

namespace detail {

inline CostSequence sequence_from_json(const nlohmann::json& j) {
  for (const char* key : {"T", "n", "beta", "x0", "space"})
    if (!j.contains(key))
      throw ConfigError(std::string("instance json: missing field ") + key);
  const int T = j.at("T").get<int>();
  const int n = j.at("n").get<int>();
  if (T < 1 || n < 1) throw ConfigError("instance json: need T >= 1 and n >= 1");
  const double beta = j.at("beta").get<double>();
  Eigen::VectorXd x0 = detail::vec_from_json(j.at("x0"), n, "x0");
  const auto& sp = j.at("space");
  ActionSpace space(detail::vec_from_json(sp.at("lower"), n, "space.lower"),
                    detail::vec_from_json(sp.at("upper"), n, "space.upper"));

  if (j.contains("thetas")) {
    const double alpha = j.at("alpha").get<double>();
    const auto& arr = j.at("thetas");
    if (!arr.is_array() || static_cast<int>(arr.size()) != T)
      throw ConfigError("instance json: thetas must hold T centers");
    std::vector<Eigen::VectorXd> thetas;
    thetas.reserve(static_cast<std::size_t>(T));
    for (const auto& th : arr)
      thetas.push_back(detail::vec_from_json(th, n, "thetas"));
    return CostSequence::isotropic(alpha, thetas, beta, std::move(x0), std::move(space));
  }

  if (!j.contains("costs"))
    throw ConfigError("instance json: need either costs or alpha/thetas");
  const auto& arr = j.at("costs");
  if (!arr.is_array() || static_cast<int>(arr.size()) != T)
    throw ConfigError("instance json: costs must hold T entries");
  std::vector<QuadraticStageCost> costs;
  costs.reserve(static_cast<std::size_t>(T));
  for (const auto& cj : arr) {
    const auto& pj = cj.at("P");
    if (!pj.is_array() || static_cast<int>(pj.size()) != n * n)
      throw ConfigError("instance json: P must hold n*n row-major entries");
    Eigen::MatrixXd P(n, n);
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col)
        P(r, col) = pj[static_cast<std::size_t>(r * n + col)].get<double>();
    costs.emplace_back(std::move(P), detail::vec_from_json(cj.at("q"), n, "q"),
                       cj.at("c").get<double>());
  }
  return CostSequence(std::move(costs), beta, std::move(x0), std::move(space));
}

} // namespace detail

inline CostSequence from_json(const nlohmann::json& j) {
  try {
    return detail::sequence_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    // Wrong types, missing nested keys and such all count as bad documents.
    throw ConfigError(std::string("instance json: ") + e.what());
  }
}

inline void write_instance(const CostSequence& seq, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("write_instance: cannot open " + path);
  out << to_json(seq).dump(2) << "\n";
}

inline CostSequence read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("read_instance: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("read_instance: parse error: ") + e.what());
  }
  return from_json(j);
}

/// FNV-1a over the canonical (sorted-key, minified) dump. Stable across
/// runs and platforms; used to pin golden instances in tests.
inline std::uint64_t instance_hash(const CostSequence& seq) {
  const std::string s = to_json(seq).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace rhoco
