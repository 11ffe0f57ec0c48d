#pragma once

#include "robavg/config.hpp"
#include "robavg/dynamics.hpp"
#include "robavg/graph.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace robavg {

/// Exhaustive solution of the discretized game.
struct BruteForceReport {
  Mode mode = Mode::uncontrolled;
  double value = 0.0;
  // Optimal play along the principal line: one entry per interval.
  std::vector<ControlPair> adversary_actions;
  std::vector<ControlPair> designer_actions;
  double adversary_choices = 1;  // per interval
  double designer_choices = 1;   // per interval
  double leaves = 0;             // trajectories evaluated
  double guard = 0;
};

/// Nested max/min over every per-interval action of both players, in the
/// order given by cfg.mode. Boosts are restricted to {0, b}. Every leaf is
/// integrated with the same stepper and quadrature as run(). Throws
/// GuardExceeded when the leaf count exceeds cfg.limits.leaf_guard.
BruteForceReport brute_force_value(const Graph& g, const GameConfig& cfg, unsigned threads = 1);

/// Number of leaves brute_force_value would evaluate.
double brute_force_leaves(const Graph& g, const GameConfig& cfg);

/// Greedy (closed-loop strategies) against exhaustive value for one mode.
struct ModeComparison {
  Mode mode = Mode::maxmin;
  double greedy = 0.0;
  double exact = 0.0;
  double gap = 0.0;  // |greedy - exact| / exact, absolute when exact == 0
  bool pass = false;
  // Set when the first attempt failed and the check was repeated at dt / 2.
  std::optional<double> refined_step;
};

/// Runs both sides at cfg.step; on failure repeats once with the step halved
/// and reports the refined figures.
ModeComparison compare_mode(const Graph& g, GameConfig cfg, Mode mode, double tolerance, unsigned threads = 1);

/// Closed-form J for two nodes joined by one link of weight a + boost, k = 1.
double two_node_cost(double weight, double boost, double delta0, double horizon);

/// Uniform bound M = 4 n T (|x0|_inf + |x_avg|) |x0|_inf on |f_ij(t)|.
double lemma1_bound(std::size_t n, double horizon, const Vector& x0);

struct SpeCertificate {
  double M = 0.0;
  double epsilon = 0.0;
  double gamma = 0.0;
  double bound_b = 0.0;
  double b = 0.0;
  bool degenerate = false;  // fewer than two links
  bool side_conditions_ok = false;
  bool satisfied = false;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // offending edge pair
  std::string witness_reason;
};

/// Weight-diversity sufficient condition for equal upper and lower values.
/// Throws ConfigError unless epsilon > 0 and gamma = M / epsilon^2 > 1.
SpeCertificate spe_check(const Graph& g, const Vector& x0, double horizon, double epsilon, double b);

struct FBoundReport {
  bool within = true;
  double max_abs_f = 0.0;
  double bound = 0.0;
  double worst_ratio = 0.0;  // max |f| / M (infinite when M = 0 and f != 0)
  std::size_t worst_point = 0;
  std::size_t worst_edge = 0;
};

/// Checks max over grid points and links of |f_ij| against M.
FBoundReport f_bound_check(const Trajectory& traj, const AdjointTrajectory& adj, const Graph& g, double M);

struct MeetingTimes {
  // candidates[i-1] belongs to the adjacent pair (i-1, i) of the sorted state.
  std::vector<std::optional<double>> candidates;
  std::optional<double> horizon_cap;  // smallest positive candidate
};

/// Crossing-time candidates t* = ln(x_1 / x_n) / (a_{i-1} - a_i) + t0 with
/// a_i the off-diagonal row sum. Requires x strictly decreasing.
MeetingTimes meeting_time_bound(const Matrix& A, const Vector& x_t0, double t0);

/// meeting_time_bound at the start of every switching interval of a run,
/// after reordering nodes by decreasing state. Intervals whose state has ties
/// give an empty entry.
std::vector<std::optional<MeetingTimes>> meeting_time_scan(const Trajectory& traj);

}  // namespace robavg
