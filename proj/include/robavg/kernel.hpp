#pragma once

#include <cmath>
#include <string>

namespace robavg {

/// Positive weighting k(t) of the disagreement cost.
///
///   constant:     k(t) = scale
///   exponential:  k(t) = scale * exp(rate * t)
struct Kernel {
  enum class Kind { constant, exponential };

  Kind kind = Kind::constant;
  double scale = 1.0;
  double rate = 0.0;

  static Kernel constant(double scale = 1.0) { return {Kind::constant, scale, 0.0}; }
  static Kernel exponential(double rate, double scale = 1.0) { return {Kind::exponential, scale, rate}; }

  double operator()(double t) const {
    return kind == Kind::constant ? scale : scale * std::exp(rate * t);
  }
  double derivative(double t) const {
    return kind == Kind::constant ? 0.0 : scale * rate * std::exp(rate * t);
  }

  bool operator==(const Kernel&) const = default;
};

inline std::string to_string(Kernel::Kind kind) {
  return kind == Kernel::Kind::constant ? "constant" : "exponential";
}

}  // namespace robavg
