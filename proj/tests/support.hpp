#pragma once

// Fixtures and random instance generators shared by the test binaries.

#include "robavg/config.hpp"
#include "robavg/graph.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace robavg::testing {

inline Graph two_node(double a = 1.0) { return Graph(2, {{{0, 1}, a}}); }

inline Graph path3(double a12, double a23) { return Graph(3, {{{0, 1}, a12}, {{1, 2}, a23}}); }

inline Graph triangle() { return Graph(3, {{{0, 1}, 1.0}, {{0, 2}, 1.0}, {{1, 2}, 1.0}}); }

inline Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index k = 0;
  for (double d : v) x[k++] = d;
  return x;
}

inline GameConfig two_node_config(Mode mode) {
  GameConfig cfg;
  cfg.x0 = vec({1.0, -1.0});
  cfg.budget = 1;
  cfg.boost_cap = 1.0;
  cfg.horizon = 1.0;
  cfg.step = 1e-3;
  cfg.intervals = 1;
  cfg.mode = mode;
  return cfg;
}

// Path a12 = 1, a23 = 2 with x chosen so that a*nu = (-10, -8).
inline Graph deception_graph() { return path3(1.0, 2.0); }
inline Vector deception_state() { return vec({std::sqrt(10.0), 0.0, -2.0}); }

// Random spanning tree plus extra links, weights in [lo, hi].
inline Graph random_connected(std::mt19937_64& rng, std::size_t n, std::size_t max_edges, double lo = 0.2,
                              double hi = 3.0) {
  std::uniform_real_distribution<double> weight(lo, hi);
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (std::size_t v = 1; v < n; ++v) {
    const std::size_t u = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    edges.push_back({EdgeId::canonical(u, v), weight(rng)});
    used[u][v] = used[v][u] = true;
  }
  const std::size_t possible = n * (n - 1) / 2;
  const std::size_t target = std::min(max_edges, possible);
  std::uniform_int_distribution<std::size_t> node(0, n - 1);
  while (edges.size() < target) {
    const std::size_t a = node(rng), b = node(rng);
    if (a == b || used[a][b]) continue;
    // Extra links are optional: stop early now and then.
    if (std::bernoulli_distribution(0.15)(rng)) break;
    used[a][b] = used[b][a] = true;
    edges.push_back({EdgeId::canonical(a, b), weight(rng)});
  }
  return Graph(n, std::move(edges));
}

inline Vector random_state(std::mt19937_64& rng, std::size_t n, double spread = 2.0) {
  std::uniform_real_distribution<double> d(-spread, spread);
  Vector x(static_cast<Eigen::Index>(n));
  for (auto& v : x) v = d(rng);
  return x;
}

}  // namespace robavg::testing
