#pragma once

#include <stdexcept>
#include <string>

namespace rhoco {

// Invalid problem data or configuration (dimension mismatch, bad parameter
// ranges, malformed files). CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure (iteration cap reached before the requested tolerance).
// Carries the best residual seen. CLI maps this to exit code 3.
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

// An online algorithm touched a cost it has not been shown yet. Always a bug
// in the algorithm implementation, never in user data.
class GateError : public std::logic_error {
public:
  explicit GateError(const std::string& what) : std::logic_error(what) {}
};

} // namespace rhoco
