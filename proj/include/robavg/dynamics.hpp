#pragma once

#include "robavg/graph.hpp"
#include "robavg/kernel.hpp"
#include "robavg/types.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace robavg {

/// One switching interval's actions: the adversary's broken links and the
/// designer's additive boosts, both edge-aligned.
struct ControlPair {
  BreakMask broken;
  EdgeValues boost;

  static ControlPair none(std::size_t edge_count);

  std::size_t broken_count() const;
  std::size_t boost_count() const;  // links with nonzero boost
  std::vector<std::size_t> broken_edges() const;
  std::vector<std::size_t> boosted_edges() const;

  bool operator==(const ControlPair& other) const;
};

/// Budgets and bounds of the strategy sets: at most `budget` links broken,
/// at most `budget` nonzero boosts, each boost in [0, cap].
bool admissible(const Graph& g, const ControlPair& c, std::size_t budget, double cap);

/// A_ij = (a_ij + v_ij)(1 - u_ij) off the diagonal, zero row sums.
Matrix assemble_matrix(const Graph& g, const ControlPair& c);

/// One classical RK4 step of x' = A x is x <- R x with
/// R = I + hA + (hA)^2/2 + (hA)^3/6 + (hA)^4/24.
template <class Derived>
Matrix rk4_propagator(const Eigen::MatrixBase<Derived>& A, double h) {
  const Eigen::Index n = A.rows();
  const Matrix hA = h * A;
  // Horner form of the degree-4 Taylor polynomial.
  Matrix R = Matrix::Identity(n, n) + hA / 4.0;
  R = Matrix::Identity(n, n) + (hA * R) / 3.0;
  R = Matrix::Identity(n, n) + (hA * R) / 2.0;
  R = Matrix::Identity(n, n) + hA * R;
  return R;
}

/// f_ij = (p_j - p_i)(x_i - x_j) per edge.
template <class DX, class DP>
EdgeValues f_values(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DP>& p, const Graph& g) {
  EdgeValues f(static_cast<Eigen::Index>(g.edge_count()));
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const auto i = static_cast<Eigen::Index>(g.edge(k).id.i);
    const auto j = static_cast<Eigen::Index>(g.edge(k).id.j);
    f[static_cast<Eigen::Index>(k)] = (p[j] - p[i]) * (x[i] - x[j]);
  }
  return f;
}

/// nu_ij = -(x_i - x_j)^2 per edge.
template <class DX>
EdgeValues nu_values(const Eigen::MatrixBase<DX>& x, const Graph& g) {
  EdgeValues nu(static_cast<Eigen::Index>(g.edge_count()));
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const double d = x[static_cast<Eigen::Index>(g.edge(k).id.i)] - x[static_cast<Eigen::Index>(g.edge(k).id.j)];
    nu[static_cast<Eigen::Index>(k)] = -d * d;
  }
  return nu;
}

/// Uniform grid of N = K * steps_per_interval steps on [0, T]. Controls are
/// piecewise constant on the K switching intervals.
struct Trajectory {
  Vector times;                      // N + 1 points, times[0] = 0, times[N] = T
  Matrix states;                     // n x (N + 1)
  std::vector<ControlPair> controls;  // one per interval
  std::vector<Matrix> system;        // realized A per interval
  std::size_t steps_per_interval = 0;
  double step = 0.0;
  double average = 0.0;              // x_avg from x0
  Vector integrand;                  // k(t)|x(t) - xbar|^2 per grid point
  Vector cumulative_cost;            // running J per grid point

  std::size_t step_count() const { return static_cast<std::size_t>(times.size()) - 1; }
  std::size_t interval_count() const { return controls.size(); }
  double horizon() const { return times[times.size() - 1]; }
  double cost() const { return cumulative_cost[cumulative_cost.size() - 1]; }
  // Interval owning the step that starts at grid index k.
  std::size_t interval_of_step(std::size_t k) const { return k / steps_per_interval; }
};

struct AdjointTrajectory {
  Vector times;
  Matrix costates;  // n x (N + 1), last column exactly zero
};

/// Chooses the controls for interval q from the state at its left end.
using FeedbackPolicy = std::function<ControlPair(std::size_t q, double t, const Vector& x)>;

/// Closed-loop integration: the policy is queried at the start of each interval.
Trajectory integrate_feedback(const Graph& g, const Vector& x0, double horizon, double dt, std::size_t intervals,
                              const FeedbackPolicy& policy, const Kernel& kernel = Kernel::constant());

/// Open-loop integration of a fixed schedule (K = schedule.size()).
Trajectory integrate(const Graph& g, const Vector& x0, const std::vector<ControlPair>& schedule, double horizon,
                     double dt, const Kernel& kernel = Kernel::constant());

/// J = int_0^T k(t)|x(t) - xbar|^2 dt on the trajectory grid, by the
/// endpoint-corrected trapezoid rule (fourth order for piecewise-smooth x).
double cost(const Trajectory& traj, const Kernel& kernel);

/// Backward RK4 solve of p' = -2k(t)(x - xbar) - A(t) p with p(T) = 0.
AdjointTrajectory adjoint_integrate(const Trajectory& traj, const Kernel& kernel);

namespace detail {

inline double grid_time(std::size_t k, std::size_t total_steps, double horizon, double h) {
  return k == total_steps ? horizon : static_cast<double>(k) * h;
}

// Fills columns 1.. of `block` by repeated application of R to column 0.
void propagate(const Matrix& R, Eigen::Ref<Matrix> block);

// Adds the quadrature contribution of one interval whose grid points are the
// columns of `block` (global indices first_index .. first_index + cols - 1).
// Writes integrand / cumulative values when the outputs are non-null.
double accumulate_interval_cost(double running, const Matrix& A, const Eigen::Ref<const Matrix>& block,
                                std::size_t first_index, std::size_t total_steps, double horizon, double h,
                                const Kernel& kernel, double average, Vector* integrand, Vector* cumulative);

}  // namespace detail

}  // namespace robavg
