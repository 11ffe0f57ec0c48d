#include "robavg/dynamics.hpp"

#include "robavg/config.hpp"

#include <cmath>

namespace robavg {

ControlPair ControlPair::none(std::size_t edge_count) {
  const auto m = static_cast<Eigen::Index>(edge_count);
  return {BreakMask::Constant(m, false), EdgeValues::Zero(m)};
}

std::size_t ControlPair::broken_count() const { return static_cast<std::size_t>(broken.count()); }

std::size_t ControlPair::boost_count() const { return static_cast<std::size_t>((boost.array() != 0.0).count()); }

std::vector<std::size_t> ControlPair::broken_edges() const {
  std::vector<std::size_t> out;
  for (Eigen::Index k = 0; k < broken.size(); ++k)
    if (broken[k]) out.push_back(static_cast<std::size_t>(k));
  return out;
}

std::vector<std::size_t> ControlPair::boosted_edges() const {
  std::vector<std::size_t> out;
  for (Eigen::Index k = 0; k < boost.size(); ++k)
    if (boost[k] != 0.0) out.push_back(static_cast<std::size_t>(k));
  return out;
}

bool ControlPair::operator==(const ControlPair& other) const {
  return broken.size() == other.broken.size() && boost.size() == other.boost.size() &&
         (broken == other.broken).all() && boost == other.boost;
}

bool admissible(const Graph& g, const ControlPair& c, std::size_t budget, double cap) {
  const auto m = static_cast<Eigen::Index>(g.edge_count());
  if (c.broken.size() != m || c.boost.size() != m) return false;
  if (c.broken_count() > budget || c.boost_count() > budget) return false;
  return (c.boost.array() >= 0.0).all() && (c.boost.array() <= cap).all();
}

Matrix assemble_matrix(const Graph& g, const ControlPair& c) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Matrix A = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const auto e = static_cast<Eigen::Index>(k);
    if (c.broken.size() > 0 && c.broken[e]) continue;
    const double w = g.weight(k) + (c.boost.size() > 0 ? c.boost[e] : 0.0);
    const auto i = static_cast<Eigen::Index>(g.edge(k).id.i);
    const auto j = static_cast<Eigen::Index>(g.edge(k).id.j);
    A(i, j) += w;
    A(j, i) += w;
    A(i, i) -= w;
    A(j, j) -= w;
  }
  return A;
}

namespace detail {

void propagate(const Matrix& R, Eigen::Ref<Matrix> block) {
  for (Eigen::Index s = 1; s < block.cols(); ++s) block.col(s).noalias() = R * block.col(s - 1);
}

double accumulate_interval_cost(double running, const Matrix& A, const Eigen::Ref<const Matrix>& block,
                                std::size_t first_index, std::size_t total_steps, double horizon, double h,
                                const Kernel& kernel, double average, Vector* integrand, Vector* cumulative) {
  // f = k|y|^2 and f' = k'|y|^2 + 2k y'Ay with y = x - xbar (A xbar = 0).
  Vector y(block.rows());
  Vector Ay(block.rows());
  auto point = [&](Eigen::Index s, double& f, double& df) {
    const double t = grid_time(first_index + static_cast<std::size_t>(s), total_steps, horizon, h);
    y = block.col(s).array() - average;
    Ay.noalias() = A * y;
    const double sq = y.squaredNorm();
    f = kernel(t) * sq;
    df = kernel.derivative(t) * sq + 2.0 * kernel(t) * y.dot(Ay);
  };

  double f0 = 0.0, d0 = 0.0;
  point(0, f0, d0);
  if (integrand) (*integrand)[static_cast<Eigen::Index>(first_index)] = f0;
  if (cumulative) (*cumulative)[static_cast<Eigen::Index>(first_index)] = running;
  for (Eigen::Index s = 1; s < block.cols(); ++s) {
    double f1 = 0.0, d1 = 0.0;
    point(s, f1, d1);
    const double t0 = grid_time(first_index + static_cast<std::size_t>(s) - 1, total_steps, horizon, h);
    const double t1 = grid_time(first_index + static_cast<std::size_t>(s), total_steps, horizon, h);
    const double w = t1 - t0;
    running += 0.5 * w * (f0 + f1) + (w * w / 12.0) * (d0 - d1);
    const auto idx = static_cast<Eigen::Index>(first_index) + s;
    if (integrand) (*integrand)[idx] = f1;
    if (cumulative) (*cumulative)[idx] = running;
    f0 = f1;
    d0 = d1;
  }
  return running;
}

}  // namespace detail

Trajectory integrate_feedback(const Graph& g, const Vector& x0, double horizon, double dt, std::size_t intervals,
                              const FeedbackPolicy& policy, const Kernel& kernel) {
  if (!(dt > 0.0)) throw ConfigError("integration step dt must be > 0");
  if (intervals == 0) throw ConfigError("at least one switching interval is required");
  if (static_cast<std::size_t>(x0.size()) != g.node_count()) throw ConfigError("x0 length does not match the graph");
  GameConfig grid;
  grid.horizon = horizon;
  grid.step = dt;
  grid.intervals = intervals;
  const std::size_t per = grid.steps_per_interval();
  if (per == 0) throw ConfigError("dt does not align with the switching grid T/K");

  const std::size_t total = per * intervals;
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Trajectory traj;
  traj.steps_per_interval = per;
  traj.step = dt;
  traj.average = x0.mean();
  traj.times.resize(static_cast<Eigen::Index>(total + 1));
  for (std::size_t k = 0; k <= total; ++k)
    traj.times[static_cast<Eigen::Index>(k)] = detail::grid_time(k, total, horizon, dt);
  traj.states.resize(n, static_cast<Eigen::Index>(total + 1));
  traj.states.col(0) = x0;
  traj.integrand.resize(static_cast<Eigen::Index>(total + 1));
  traj.cumulative_cost.resize(static_cast<Eigen::Index>(total + 1));
  traj.controls.reserve(intervals);
  traj.system.reserve(intervals);

  double running = 0.0;
  for (std::size_t q = 0; q < intervals; ++q) {
    const auto first = static_cast<Eigen::Index>(q * per);
    const Vector x_start = traj.states.col(first);
    ControlPair c = policy(q, traj.times[first], x_start);
    Matrix A = assemble_matrix(g, c);
    const Matrix R = rk4_propagator(A, dt);
    auto block = traj.states.middleCols(first, static_cast<Eigen::Index>(per + 1));
    detail::propagate(R, block);
    running = detail::accumulate_interval_cost(running, A, block, q * per, total, horizon, dt, kernel,
                                               traj.average, &traj.integrand, &traj.cumulative_cost);
    traj.controls.push_back(std::move(c));
    traj.system.push_back(std::move(A));
  }
  return traj;
}

Trajectory integrate(const Graph& g, const Vector& x0, const std::vector<ControlPair>& schedule, double horizon,
                     double dt, const Kernel& kernel) {
  if (schedule.empty()) throw ConfigError("control schedule must contain at least one interval");
  return integrate_feedback(
      g, x0, horizon, dt, schedule.size(),
      [&](std::size_t q, double, const Vector&) { return schedule[q]; }, kernel);
}

double cost(const Trajectory& traj, const Kernel& kernel) {
  const std::size_t per = traj.steps_per_interval;
  const std::size_t total = traj.step_count();
  double running = 0.0;
  for (std::size_t q = 0; q < traj.interval_count(); ++q) {
    running = detail::accumulate_interval_cost(
        running, traj.system[q],
        traj.states.middleCols(static_cast<Eigen::Index>(q * per), static_cast<Eigen::Index>(per + 1)), q * per,
        total, traj.horizon(), traj.step, kernel, traj.average, nullptr, nullptr);
  }
  return running;
}

AdjointTrajectory adjoint_integrate(const Trajectory& traj, const Kernel& kernel) {
  const std::size_t total = traj.step_count();
  const Eigen::Index n = traj.states.rows();
  AdjointTrajectory adj;
  adj.times = traj.times;
  adj.costates = Matrix::Zero(n, static_cast<Eigen::Index>(total + 1));

  Vector p = Vector::Zero(n);
  for (std::size_t q = traj.interval_count(); q-- > 0;) {
    const Matrix& A = traj.system[q];
    const Matrix half = rk4_propagator(A, 0.5 * traj.step);
    auto rhs = [&](double t, const Vector& x, const Vector& costate) -> Vector {
      return -2.0 * kernel(t) * (x.array() - traj.average).matrix() - A * costate;
    };
    for (std::size_t k = (q + 1) * traj.steps_per_interval; k > q * traj.steps_per_interval; --k) {
      const auto k1i = static_cast<Eigen::Index>(k);
      const double t1 = traj.times[k1i];
      const double t0 = traj.times[k1i - 1];
      const double h = t1 - t0;
      const Vector x1 = traj.states.col(k1i);
      const Vector x0 = traj.states.col(k1i - 1);
      const Vector xm = half * x0;
      const double tm = t1 - 0.5 * h;
      const Vector s1 = rhs(t1, x1, p);
      const Vector s2 = rhs(tm, xm, p - 0.5 * h * s1);
      const Vector s3 = rhs(tm, xm, p - 0.5 * h * s2);
      const Vector s4 = rhs(t0, x0, p - h * s3);
      p -= (h / 6.0) * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
      adj.costates.col(k1i - 1) = p;
    }
  }
  return adj;
}

}  // namespace robavg
