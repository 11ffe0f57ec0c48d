#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace robavg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Per-edge values, index-aligned with Graph::edges().
using EdgeValues = Eigen::VectorXd;

/// Adversary action: true on links broken for the interval.
using BreakMask = Eigen::Array<bool, Eigen::Dynamic, 1>;

// Raised for malformed or inconsistent input (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an exhaustive search would exceed its configured limit (CLI exit code 2).
class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(const std::string& what, double required, double limit)
      : std::runtime_error(what), required_(required), limit_(limit) {}
  double required() const { return required_; }
  double limit() const { return limit_; }

 private:
  double required_;
  double limit_;
};

}  // namespace robavg
