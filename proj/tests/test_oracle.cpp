#include "doctest.h"
#include "robavg/game.hpp"
#include "robavg/oracle.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace robavg;
using robavg::testing::vec;

namespace {

// Path 1-2-3 with a12 = 1, a23 = 10, x0 = (1, 0, -1), T = 2/3: M = 8, gamma = 8 at epsilon = 1.
Graph spe_graph() { return testing::path3(1.0, 10.0); }

}  // namespace

TEST_CASE("brute force on two nodes") {
  const Graph g = testing::two_node();
  GameConfig cfg = testing::two_node_config(Mode::maxmin);
  BruteForceReport r = brute_force_value(g, cfg);
  CHECK(std::abs(r.value - 2.0) <= 1e-12);
  CHECK(r.adversary_choices == 2);
  CHECK(r.designer_choices == 2);
  CHECK(r.leaves == 4);
  REQUIRE(r.adversary_actions.size() == 1);
  CHECK(r.adversary_actions[0].broken_edges() == std::vector<std::size_t>{0});

  cfg.intervals = 2;
  r = brute_force_value(g, cfg);
  CHECK(r.leaves == 16);
  REQUIRE(r.adversary_actions.size() == 2);
  for (const auto& a : r.adversary_actions) CHECK(a.broken_edges() == std::vector<std::size_t>{0});
  CHECK(std::abs(r.value - 2.0) <= 1e-12);
}

TEST_CASE("brute force at consensus is zero") {
  GameConfig cfg = testing::two_node_config(Mode::minmax);
  cfg.x0 = vec({0.5, 0.5, 0.5});
  cfg.intervals = 2;
  CHECK(brute_force_value(testing::triangle(), cfg).value == 0.0);
}

TEST_CASE("brute force matches the greedy game on path 1-2-3") {
  for (double a23 : {1.0, 2.0}) {
    const Graph g = testing::path3(1.0, a23);
    GameConfig cfg = testing::two_node_config(Mode::minmax);
    cfg.x0 = vec({1, 0, -1});
    for (Mode mode : {Mode::minmax, Mode::maxmin}) {
      cfg.mode = mode;
      const double greedy = run(g, cfg).value;
      const double exact = brute_force_value(g, cfg).value;
      CHECK(std::abs(greedy - exact) / exact <= 1e-3);
    }
  }
}

TEST_CASE("brute force without moves equals the uncontrolled trajectory exactly") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    const Graph g = testing::random_connected(rng, n, 5);
    GameConfig cfg;
    cfg.x0 = testing::random_state(rng, n);
    cfg.budget = rng() % 2;
    cfg.boost_cap = 1.0;
    cfg.intervals = 1 + rng() % 3;
    cfg.horizon = 0.3 * static_cast<double>(cfg.intervals);
    cfg.step = 0.01;
    if (trial % 2) cfg.kernel = Kernel::exponential(0.4, 2.0);
    // ell = 0 leaves only the null action whatever the mode.
    cfg.mode = cfg.budget == 0 ? static_cast<Mode>(rng() % 5) : Mode::uncontrolled;
    GameConfig base = cfg;
    base.mode = Mode::uncontrolled;
    const BruteForceReport r = brute_force_value(g, cfg);
    CHECK(r.value == run(g, base).value);
  }
}

TEST_CASE("single-player brute force dominates the greedy player") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = testing::random_connected(rng, 4, 5);
    GameConfig cfg;
    cfg.x0 = testing::random_state(rng, 4);
    cfg.budget = 1 + rng() % 2;
    cfg.boost_cap = 2.0;
    cfg.intervals = 2;
    cfg.horizon = 0.5;
    cfg.step = 0.01;
    cfg.mode = Mode::adversary_only;
    CHECK(brute_force_value(g, cfg).value >= run(g, cfg).value - 1e-12);
    cfg.mode = Mode::designer_only;
    CHECK(brute_force_value(g, cfg).value <= run(g, cfg).value + 1e-12);
  }
}

TEST_CASE("brute force leaf count and guard") {
  const Graph g(4, {{{0, 1}, 1}, {{0, 2}, 2}, {{1, 2}, 1}, {{1, 3}, 3}, {{2, 3}, 1}});
  GameConfig cfg;
  cfg.x0 = vec({1, 2, 3, 4});
  cfg.budget = 2;
  cfg.boost_cap = 1.0;
  cfg.intervals = 2;
  cfg.step = 0.05;
  cfg.mode = Mode::maxmin;
  // 1 + 5 + 10 = 16 subsets per player.
  CHECK(brute_force_leaves(g, cfg) == std::pow(16.0 * 16.0, 2));
  cfg.mode = Mode::adversary_only;
  CHECK(brute_force_leaves(g, cfg) == 256.0);
  cfg.mode = Mode::maxmin;
  cfg.limits.leaf_guard = 65535;
  CHECK_THROWS_AS(brute_force_value(g, cfg), GuardExceeded);
  cfg.limits.leaf_guard = 65536;
  const BruteForceReport r = brute_force_value(g, cfg);
  CHECK(r.leaves == 65536);
  CHECK(r.guard == 65536);
}

TEST_CASE("brute force is independent of the thread count") {
  std::mt19937_64 rng(47);
  const Graph g = testing::random_connected(rng, 4, 5);
  GameConfig cfg;
  cfg.x0 = testing::random_state(rng, 4);
  cfg.budget = 1;
  cfg.boost_cap = 1.5;
  cfg.intervals = 2;
  cfg.step = 0.01;
  for (Mode mode : {Mode::maxmin, Mode::minmax}) {
    cfg.mode = mode;
    const BruteForceReport one = brute_force_value(g, cfg, 1);
    const BruteForceReport three = brute_force_value(g, cfg, 3);
    CHECK(one.value == three.value);
    REQUIRE(one.adversary_actions.size() == three.adversary_actions.size());
    for (std::size_t q = 0; q < one.adversary_actions.size(); ++q) {
      CHECK(one.adversary_actions[q] == three.adversary_actions[q]);
      CHECK(one.designer_actions[q] == three.designer_actions[q]);
    }
  }
}

TEST_CASE("compare_mode on two nodes") {
  const Graph g = testing::two_node();
  const ModeComparison c = compare_mode(g, testing::two_node_config(Mode::uncontrolled), Mode::maxmin, 1e-3);
  CHECK(c.pass);
  CHECK(c.gap == 0.0);
  CHECK_FALSE(c.refined_step);
}

TEST_CASE("two_node_cost examples and integrator agreement") {
  CHECK(two_node_cost(1, 0, 2, 1) == doctest::Approx(0.490842).epsilon(1e-6));
  CHECK(two_node_cost(1, 1, 2, 1) == doctest::Approx(0.249916).epsilon(1e-6));
  CHECK(two_node_cost(1, 0, 0, 1) == 0.0);
  CHECK_THROWS(two_node_cost(0, 0, 1, 1));

  for (double a : {0.3, 1.0, 2.5})
    for (double boost : {0.0, 0.7, 3.0})
      for (double delta : {0.5, 2.0})
        for (double T : {0.5, 1.0, 2.0}) {
          GameConfig cfg;
          cfg.x0 = vec({delta / 2 + 0.3, -delta / 2 + 0.3});
          cfg.budget = 1;
          cfg.boost_cap = boost;
          cfg.horizon = T;
          cfg.step = 1e-3;
          cfg.mode = boost > 0 ? Mode::designer_only : Mode::uncontrolled;
          const double want = two_node_cost(a, boost, delta, T);
          CHECK(std::abs(run(testing::two_node(a), cfg).value - want) / want <= 1e-6);
        }
}

TEST_CASE("lemma1_bound examples") {
  CHECK(lemma1_bound(2, 1.0, vec({1, -1})) == 8.0);
  CHECK(lemma1_bound(3, 2.0 / 3.0, vec({1, 0, -1})) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(lemma1_bound(4, 1.0, Vector::Zero(4)) == 0.0);
  CHECK(lemma1_bound(2, 1.0, vec({3, 1})) == 4.0 * 2 * (3 + 2) * 3);
}

TEST_CASE("spe_check examples") {
  const Graph g = spe_graph();
  const Vector x0 = vec({1, 0, -1});
  SpeCertificate c = spe_check(g, x0, 2.0 / 3.0, 1.0, 1.5);
  CHECK(c.M == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(c.gamma == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(c.bound_b == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c.side_conditions_ok);
  CHECK(c.satisfied);
  CHECK_FALSE(c.degenerate);

  c = spe_check(g, x0, 2.0 / 3.0, 1.0, 3.0);
  CHECK(c.side_conditions_ok);
  CHECK_FALSE(c.satisfied);

  c = spe_check(testing::path3(2, 2), x0, 2.0 / 3.0, 1.0, 0.0);
  CHECK_FALSE(c.side_conditions_ok);
  CHECK_FALSE(c.satisfied);
  REQUIRE(c.witness);
  CHECK(c.witness_reason == "equal weights");

  // 10 > 1 but not by the factor gamma = 16 at epsilon = 1/sqrt(2).
  c = spe_check(g, x0, 2.0 / 3.0, std::sqrt(0.5), 0.0);
  CHECK(c.gamma == doctest::Approx(16.0));
  CHECK_FALSE(c.side_conditions_ok);
  CHECK(c.witness_reason == "weights closer than a factor gamma");

  CHECK_THROWS_AS(spe_check(g, x0, 2.0 / 3.0, 3.0, 1.0), ConfigError);   // gamma = 8/9
  CHECK_THROWS_AS(spe_check(g, x0, 2.0 / 3.0, std::sqrt(8.0), 1.0), ConfigError);  // gamma = 1
  CHECK_THROWS_AS(spe_check(g, x0, 2.0 / 3.0, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(spe_check(g, x0, 2.0 / 3.0, -1.0, 1.0), ConfigError);

  const SpeCertificate single = spe_check(testing::two_node(), vec({1, -1}), 1.0, 1.0, 0.5);
  CHECK(single.degenerate);
  CHECK_FALSE(single.satisfied);
}

TEST_CASE("spe_check is monotone in b") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng() % 4;
    // Geometric weights make the side conditions plausible.
    Graph base = testing::random_connected(rng, n, n + 2);
    std::vector<Edge> edges(base.edges().begin(), base.edges().end());
    for (std::size_t k = 0; k < edges.size(); ++k) edges[k].weight = std::pow(50.0, static_cast<double>(k)) * 0.01;
    const Graph g(n, edges);
    const Vector x0 = testing::random_state(rng, n);
    const double T = 1.0;
    const double eps = std::sqrt(lemma1_bound(n, T, x0) / std::uniform_real_distribution<double>(1.5, 40)(rng));
    const double b_hi = std::uniform_real_distribution<double>(0, 5)(rng);
    const SpeCertificate hi = spe_check(g, x0, T, eps, b_hi);
    if (!hi.satisfied) continue;
    for (double frac : {0.0, 0.25, 0.5, 0.99}) CHECK(spe_check(g, x0, T, eps, frac * b_hi).satisfied);
  }
  // The sweep above must exercise satisfied certificates.
  const SpeCertificate anchor = spe_check(spe_graph(), vec({1, 0, -1}), 2.0 / 3.0, 1.0, 2.0);
  CHECK(anchor.satisfied);
  for (double b = 0.0; b <= 2.0; b += 0.125) CHECK(spe_check(spe_graph(), vec({1, 0, -1}), 2.0 / 3.0, 1.0, b).satisfied);
}

TEST_CASE("f_bound_check examples") {
  const Graph g = testing::two_node();
  const Trajectory traj = integrate(g, vec({1, -1}), {ControlPair::none(1)}, 1.0, 1e-3);
  const AdjointTrajectory adj = adjoint_integrate(traj, Kernel::constant());
  const FBoundReport r = f_bound_check(traj, adj, g, 8.0);
  CHECK(r.within);
  CHECK(std::abs(r.max_abs_f - 2.0 * (1.0 - std::exp(-4.0))) <= 1e-6);
  CHECK(r.max_abs_f == doctest::Approx(1.9634).epsilon(1e-4));
  CHECK(r.worst_point == 0);

  // f(t) = -2(e^{-4t} - e^{-4}) along the grid.
  double worst = 0.0;
  for (Eigen::Index k = 0; k < traj.states.cols(); ++k) {
    const double t = traj.times[k];
    const double f = f_values(traj.states.col(k), adj.costates.col(k), g)[0];
    worst = std::max(worst, std::abs(f + 2.0 * (std::exp(-4 * t) - std::exp(-4.0))));
  }
  CHECK(worst < 1e-9);

  const FBoundReport shrunk = f_bound_check(traj, adj, g, 0.0);
  CHECK_FALSE(shrunk.within);
  CHECK(std::isinf(shrunk.worst_ratio));

  const Trajectory flat = integrate(g, vec({2, 2}), {ControlPair::none(1)}, 1.0, 1e-2);
  CHECK(f_bound_check(flat, adjoint_integrate(flat, Kernel::constant()), g, lemma1_bound(2, 1.0, vec({2, 2}))).within);
}

TEST_CASE("f stays within the uniform bound on random game runs") {
  std::mt19937_64 rng(59);
  double worst = 0.0;
  for (int seed = 0; seed < 100; ++seed) {
    const std::size_t n = 2 + rng() % 5;
    const Graph g = testing::random_connected(rng, n, 2 * n);
    GameConfig cfg;
    cfg.x0 = testing::random_state(rng, n, 3.0);
    cfg.budget = 1 + rng() % std::min<std::size_t>(2, g.edge_count());
    cfg.boost_cap = std::uniform_real_distribution<double>(0, 3)(rng);
    cfg.intervals = 1 + rng() % 4;
    cfg.horizon = 1.0;
    cfg.step = 1.0 / static_cast<double>(cfg.intervals * 100);
    cfg.mode = static_cast<Mode>(rng() % 5);
    const GameResult r = run(g, cfg);
    const FBoundReport f =
        f_bound_check(r.trajectory, adjoint_integrate(r.trajectory, cfg.kernel), g, lemma1_bound(n, 1.0, cfg.x0));
    CHECK(f.within);
    worst = std::max(worst, f.worst_ratio);
  }
  MESSAGE("largest |f|/M over 100 runs: " << worst);
}

TEST_CASE("meeting_time_bound examples") {
  Matrix two(2, 2);
  two << -1, 1, 1, -1;
  const MeetingTimes degenerate = meeting_time_bound(two, vec({1, -1}), 0.0);
  REQUIRE(degenerate.candidates.size() == 1);
  CHECK_FALSE(degenerate.candidates[0]);
  CHECK_FALSE(degenerate.horizon_cap);

  // Off-diagonal row sums a = (3, 2, 3).
  Matrix A(3, 3);
  A << -3, 1, 2, 1, -2, 1, 2, 1, -3;
  const MeetingTimes m = meeting_time_bound(A, vec({4, 2, 1}), 0.0);
  REQUIRE(m.candidates.size() == 2);
  REQUIRE(m.candidates[0]);
  CHECK(*m.candidates[0] == doctest::Approx(std::log(4.0)).epsilon(1e-15));
  CHECK(*m.candidates[1] == doctest::Approx(-std::log(4.0)).epsilon(1e-15));
  REQUIRE(m.horizon_cap);
  CHECK(*m.horizon_cap == doctest::Approx(1.3863).epsilon(1e-4));
  CHECK(*meeting_time_bound(A, vec({4, 2, 1}), 0.5).candidates[0] == doctest::Approx(std::log(4.0) + 0.5));

  const MeetingTimes neg = meeting_time_bound(A, vec({4, 2, -1}), 0.0);
  CHECK_FALSE(neg.candidates[0]);
  CHECK_FALSE(neg.horizon_cap);

  CHECK_THROWS(meeting_time_bound(A, vec({1, 2, 0.5}), 0.0));
  CHECK_THROWS(meeting_time_bound(A, vec({2, 2, 1}), 0.0));
}

TEST_CASE("meeting_time_scan sorts the state of each interval") {
  const Graph g(3, {{{0, 1}, 1}, {{0, 2}, 2}, {{1, 2}, 1}});
  // Nodes listed out of order: sorted state (4, 2, 1) is node 2, node 0, node 1.
  const Trajectory traj = integrate(g, vec({2, 1, 4}), {ControlPair::none(3), ControlPair::none(3)}, 0.2, 0.01);
  const auto scan = meeting_time_scan(traj);
  REQUIRE(scan.size() == 2);
  REQUIRE(scan[0]);
  // Row sums in sorted order: node 2 -> 3, node 0 -> 3, node 1 -> 2.
  CHECK_FALSE(scan[0]->candidates[0]);
  REQUIRE(scan[0]->candidates[1]);
  CHECK(*scan[0]->candidates[1] == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  REQUIRE(scan[1]);
  CHECK(*scan[1]->candidates[1] > 0.1);

  const Trajectory tied = integrate(g, vec({1, 1, 4}), {ControlPair::none(3)}, 0.1, 0.01);
  CHECK_FALSE(meeting_time_scan(tied)[0]);
}
