// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace xnits {

/// Invalid or inconsistent mesh / level-set input.
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised by the linear and nonlinear solvers.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public SolverError {
public:
  using SolverError::SolverError;
};

class ConvergenceError : public SolverError {
public:
  ConvergenceError(const std::string& what, double residual)
      : SolverError(what), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

/// Malformed study configuration; carries the offending line when known.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

}  // namespace xnits
