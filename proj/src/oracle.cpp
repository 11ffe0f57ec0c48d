#include "robavg/oracle.hpp"

#include "robavg/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

namespace robavg {

namespace {

Eigen::Index idx(std::size_t k) { return static_cast<Eigen::Index>(k); }

// All subsets of 0..m-1 with at most `budget` members: empty set first, then
// by size, lexicographic within a size.
std::vector<std::vector<std::size_t>> small_subsets(std::size_t m, std::size_t budget) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t size = 1; size <= std::min(budget, m); ++size) {
    std::vector<std::size_t> pos(size);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    while (true) {
      out.push_back(pos);
      std::size_t r = size;
      while (r > 0 && pos[r - 1] == m - size + r - 1) --r;
      if (r == 0) break;
      ++pos[r - 1];
      for (std::size_t s = r; s < size; ++s) pos[s] = pos[s - 1] + 1;
    }
  }
  return out;
}

bool adversary_moves(Mode mode) { return mode == Mode::maxmin || mode == Mode::minmax || mode == Mode::adversary_only; }
bool designer_moves(Mode mode) { return mode == Mode::maxmin || mode == Mode::minmax || mode == Mode::designer_only; }

class GameTree {
 public:
  GameTree(const Graph& g, const GameConfig& cfg) : g_(g), cfg_(cfg) {
    const std::size_t m = g.edge_count();
    if (adversary_moves(cfg.mode)) {
      for (const auto& s : small_subsets(m, cfg.budget)) {
        ControlPair c = ControlPair::none(m);
        for (auto e : s) c.broken[idx(e)] = true;
        adversary_.push_back(std::move(c));
      }
    } else {
      adversary_.push_back(ControlPair::none(m));
    }
    if (designer_moves(cfg.mode)) {
      for (const auto& s : small_subsets(m, cfg.budget)) {
        ControlPair c = ControlPair::none(m);
        for (auto e : s) c.boost[idx(e)] = cfg.boost_cap;
        designer_.push_back(std::move(c));
      }
    } else {
      designer_.push_back(ControlPair::none(m));
    }
    per_ = cfg.steps_per_interval();
    total_ = per_ * cfg.intervals;
    average_ = cfg.x0.mean();
  }

  double adversary_choices() const { return static_cast<double>(adversary_.size()); }
  double designer_choices() const { return static_cast<double>(designer_.size()); }

  void prepare() {
    system_.reserve(adversary_.size() * designer_.size());
    for (const auto& a : adversary_) {
      for (const auto& d : designer_) {
        Matrix A = assemble_matrix(g_, ControlPair{a.broken, d.boost});
        propagator_.push_back(rk4_propagator(A, cfg_.step));
        system_.push_back(std::move(A));
      }
    }
  }

  struct Line {
    double value = 0.0;
    std::vector<std::size_t> adversary, designer;
  };

  Line solve(const Vector& x0, unsigned threads) const {
    const bool adversary_outer = cfg_.mode != Mode::minmax && cfg_.mode != Mode::designer_only;
    const std::size_t outer = adversary_outer ? adversary_.size() : designer_.size();
    std::vector<Line> branch(outer);
    auto work = [&](std::size_t begin, std::size_t stride) {
      for (std::size_t o = begin; o < outer; o += stride) branch[o] = inner(0, x0, 0.0, o, adversary_outer);
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(outer)));
    if (threads == 1) {
      work(0, 1);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
      for (auto& th : pool) th.join();
    }
    // Sequential reduction in enumeration order.
    std::size_t best = 0;
    for (std::size_t o = 1; o < outer; ++o)
      if (better_outer(branch[o].value, branch[best].value, adversary_outer)) best = o;
    return branch[best];
  }

 private:
  static bool better_outer(double candidate, double incumbent, bool maximize) {
    return maximize ? candidate > incumbent : candidate < incumbent;
  }

  // Best reply of the second mover at stage q, given the first mover's choice.
  Line inner(std::size_t q, const Vector& x, double running, std::size_t first, bool adversary_outer) const {
    const std::size_t count = adversary_outer ? designer_.size() : adversary_.size();
    Line best;
    bool have = false;
    for (std::size_t s = 0; s < count; ++s) {
      const std::size_t a = adversary_outer ? first : s;
      const std::size_t d = adversary_outer ? s : first;
      Line line = advance(q, x, running, a * designer_.size() + d);
      // The second mover minimizes when the adversary leads, maximizes otherwise.
      if (!have || better_outer(line.value, best.value, !adversary_outer)) {
        line.adversary.insert(line.adversary.begin(), a);
        line.designer.insert(line.designer.begin(), d);
        best = std::move(line);
        have = true;
      }
    }
    return best;
  }

  Line advance(std::size_t q, const Vector& x, double running, std::size_t combo) const {
    Matrix block(x.size(), static_cast<Eigen::Index>(per_ + 1));
    block.col(0) = x;
    detail::propagate(propagator_[combo], block);
    const double next =
        detail::accumulate_interval_cost(running, system_[combo], block, q * per_, total_, cfg_.horizon, cfg_.step,
                                         cfg_.kernel, average_, nullptr, nullptr);
    if (q + 1 == cfg_.intervals) return Line{next, {}, {}};
    const Vector x_next = block.col(block.cols() - 1);
    const bool adversary_outer = cfg_.mode != Mode::minmax && cfg_.mode != Mode::designer_only;
    const std::size_t outer = adversary_outer ? adversary_.size() : designer_.size();
    Line best;
    for (std::size_t o = 0; o < outer; ++o) {
      Line line = inner(q + 1, x_next, next, o, adversary_outer);
      if (o == 0 || better_outer(line.value, best.value, adversary_outer)) best = std::move(line);
    }
    return best;
  }

  const Graph& g_;
  const GameConfig& cfg_;
  std::vector<ControlPair> adversary_, designer_;
  std::vector<Matrix> system_, propagator_;
  std::size_t per_ = 0, total_ = 0;
  double average_ = 0.0;
};

}  // namespace

double brute_force_leaves(const Graph& g, const GameConfig& cfg) {
  const double subsets = static_cast<double>(small_subsets(g.edge_count(), cfg.budget).size());
  const double per_stage = (adversary_moves(cfg.mode) ? subsets : 1.0) * (designer_moves(cfg.mode) ? subsets : 1.0);
  return std::pow(per_stage, static_cast<double>(cfg.intervals));
}

BruteForceReport brute_force_value(const Graph& g, const GameConfig& cfg, unsigned threads) {
  validate(g, cfg);
  BruteForceReport report;
  report.mode = cfg.mode;
  report.guard = cfg.limits.leaf_guard;
  report.leaves = brute_force_leaves(g, cfg);
  if (report.leaves > cfg.limits.leaf_guard)
    throw GuardExceeded("exhaustive search needs " + std::to_string(static_cast<long long>(report.leaves)) +
                            " leaves, above the limit of " +
                            std::to_string(static_cast<long long>(cfg.limits.leaf_guard)),
                        report.leaves, cfg.limits.leaf_guard);

  GameTree tree(g, cfg);
  tree.prepare();
  report.adversary_choices = tree.adversary_choices();
  report.designer_choices = tree.designer_choices();
  const auto line = tree.solve(cfg.x0, threads);
  report.value = line.value;

  const auto subsets = small_subsets(g.edge_count(), cfg.budget);
  for (std::size_t q = 0; q < line.adversary.size(); ++q) {
    ControlPair a = ControlPair::none(g.edge_count());
    ControlPair d = ControlPair::none(g.edge_count());
    if (adversary_moves(cfg.mode))
      for (auto e : subsets[line.adversary[q]]) a.broken[idx(e)] = true;
    if (designer_moves(cfg.mode))
      for (auto e : subsets[line.designer[q]]) d.boost[idx(e)] = cfg.boost_cap;
    report.adversary_actions.push_back(std::move(a));
    report.designer_actions.push_back(std::move(d));
  }
  return report;
}

ModeComparison compare_mode(const Graph& g, GameConfig cfg, Mode mode, double tolerance, unsigned threads) {
  cfg.mode = mode;
  auto attempt = [&](const GameConfig& c) {
    ModeComparison r;
    r.mode = mode;
    r.greedy = run(g, c).value;
    r.exact = brute_force_value(g, c, threads).value;
    const double diff = std::abs(r.greedy - r.exact);
    r.gap = r.exact > 0.0 ? diff / r.exact : diff;
    r.pass = r.gap <= tolerance;
    return r;
  };
  ModeComparison first = attempt(cfg);
  if (first.pass) return first;
  cfg.step *= 0.5;
  ModeComparison refined = attempt(cfg);
  refined.refined_step = cfg.step;
  return refined;
}

double two_node_cost(double weight, double boost, double delta0, double horizon) {
  const double w = weight + boost;
  if (!(w > 0.0)) throw std::invalid_argument("two_node_cost needs a positive effective weight");
  return delta0 * delta0 * (1.0 - std::exp(-4.0 * w * horizon)) / (8.0 * w);
}

double lemma1_bound(std::size_t n, double horizon, const Vector& x0) {
  const double peak = x0.size() > 0 ? x0.cwiseAbs().maxCoeff() : 0.0;
  const double average = x0.size() > 0 ? x0.mean() : 0.0;
  return 4.0 * static_cast<double>(n) * horizon * (peak + std::abs(average)) * peak;
}

SpeCertificate spe_check(const Graph& g, const Vector& x0, double horizon, double epsilon, double b) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  SpeCertificate cert;
  cert.M = lemma1_bound(g.node_count(), horizon, x0);
  cert.epsilon = epsilon;
  cert.gamma = cert.M / (epsilon * epsilon);
  cert.b = b;
  if (!(cert.gamma > 1.0))
    throw ConfigError("gamma = M/epsilon^2 = " + std::to_string(cert.gamma) + " must exceed 1; choose a smaller epsilon");

  const std::size_t m = g.edge_count();
  if (m < 2) {
    cert.degenerate = true;
    cert.bound_b = std::numeric_limits<double>::quiet_NaN();
    return cert;
  }

  cert.bound_b = std::numeric_limits<double>::infinity();
  cert.side_conditions_ok = true;
  for (std::size_t e = 0; e < m; ++e) {
    for (std::size_t f = 0; f < m; ++f) {
      const double ae = g.weight(e), af = g.weight(f);
      cert.bound_b = std::min(cert.bound_b, std::abs(cert.gamma * ae - af));
      if (e == f || !cert.side_conditions_ok) continue;
      if (ae == af) {
        cert.side_conditions_ok = false;
        cert.witness = {e, f};
        cert.witness_reason = "equal weights";
      } else if (ae > af && !(ae > cert.gamma * af)) {
        cert.side_conditions_ok = false;
        cert.witness = {e, f};
        cert.witness_reason = "weights closer than a factor gamma";
      }
    }
  }
  cert.satisfied = cert.side_conditions_ok && b >= 0.0 && b <= cert.bound_b;
  return cert;
}

FBoundReport f_bound_check(const Trajectory& traj, const AdjointTrajectory& adj, const Graph& g, double M) {
  FBoundReport report;
  report.bound = M;
  for (Eigen::Index k = 0; k < traj.states.cols(); ++k) {
    const EdgeValues f = f_values(traj.states.col(k), adj.costates.col(k), g);
    if (f.size() == 0) continue;
    Eigen::Index e = 0;
    const double peak = f.cwiseAbs().maxCoeff(&e);
    if (peak > report.max_abs_f) {
      report.max_abs_f = peak;
      report.worst_point = static_cast<std::size_t>(k);
      report.worst_edge = static_cast<std::size_t>(e);
    }
  }
  report.within = report.max_abs_f <= M;
  if (M > 0.0)
    report.worst_ratio = report.max_abs_f / M;
  else
    report.worst_ratio = report.max_abs_f > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return report;
}

MeetingTimes meeting_time_bound(const Matrix& A, const Vector& x_t0, double t0) {
  const Eigen::Index n = x_t0.size();
  for (Eigen::Index i = 1; i < n; ++i)
    if (!(x_t0[i - 1] > x_t0[i])) throw std::invalid_argument("state must be strictly decreasing");

  // a_i = sum_{j != i} A_ij.
  const Vector degree = A.rowwise().sum() - A.diagonal();
  MeetingTimes out;
  const double ratio = n > 0 ? x_t0[0] / x_t0[n - 1] : 0.0;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double gap = degree[i - 1] - degree[i];
    if (gap == 0.0 || !(ratio > 0.0)) {
      out.candidates.emplace_back();
      continue;
    }
    const double t = std::log(ratio) / gap + t0;
    out.candidates.emplace_back(t);
    if (t > 0.0 && (!out.horizon_cap || t < *out.horizon_cap)) out.horizon_cap = t;
  }
  return out;
}

std::vector<std::optional<MeetingTimes>> meeting_time_scan(const Trajectory& traj) {
  std::vector<std::optional<MeetingTimes>> out;
  for (std::size_t q = 0; q < traj.interval_count(); ++q) {
    const auto k = static_cast<Eigen::Index>(q * traj.steps_per_interval);
    const Vector x = traj.states.col(k);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(x.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] > x[b]; });
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(x.size());
    for (Eigen::Index r = 0; r < x.size(); ++r) perm.indices()[r] = static_cast<int>(order[static_cast<std::size_t>(r)]);
    // Row r of the sorted system is node order[r].
    const Vector xs = perm.transpose() * x;
    bool strict = true;
    for (Eigen::Index r = 1; r < xs.size(); ++r) strict = strict && xs[r - 1] > xs[r];
    if (!strict) {
      out.emplace_back();
      continue;
    }
    const Matrix As = perm.transpose() * traj.system[q] * perm;
    out.emplace_back(meeting_time_bound(As, xs, traj.times[k]));
  }
  return out;
}

}  // namespace robavg
