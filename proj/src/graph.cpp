#include "robavg/graph.hpp"

#include <algorithm>
#include <numeric>

namespace robavg {

std::string EdgeId::label() const {
  return "{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}";
}

Graph::Graph(std::size_t node_count, std::vector<Edge> edges) : n_(node_count), edges_(std::move(edges)) {
  if (n_ == 0) throw ConfigError("graph must have at least one node");
  for (auto& e : edges_) {
    if (e.id.i == e.id.j) throw ConfigError("self-loop on node " + std::to_string(e.id.i + 1));
    e.id = EdgeId::canonical(e.id.i, e.id.j);
    if (e.id.j >= n_) throw ConfigError("edge " + e.id.label() + " references a node outside 1.." + std::to_string(n_));
    if (!(e.weight > 0.0)) throw ConfigError("edge " + e.id.label() + " has nonpositive weight");
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  auto dup = std::adjacent_find(edges_.begin(), edges_.end(),
                                [](const Edge& a, const Edge& b) { return a.id == b.id; });
  if (dup != edges_.end()) throw ConfigError("duplicate edge " + dup->id.label());
}

EdgeValues Graph::weights() const {
  EdgeValues w(edges_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) w[k] = edges_[k].weight;
  return w;
}

std::optional<std::size_t> Graph::find(EdgeId id) const {
  id = EdgeId::canonical(id.i, id.j);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, const EdgeId& key) { return e.id < key; });
  if (it == edges_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

bool is_connected(const Graph& g, const BreakMask& removed) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::size_t components = n;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    if (removed.size() > 0 && removed[static_cast<Eigen::Index>(k)]) continue;
    auto a = find_root(parent, g.edge(k).id.i);
    auto b = find_root(parent, g.edge(k).id.j);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

bool is_connected(const Graph& g, std::span<const EdgeId> removed) {
  BreakMask mask = BreakMask::Constant(static_cast<Eigen::Index>(g.edge_count()), false);
  for (const auto& id : removed) {
    auto k = g.find(id);
    if (!k) throw std::invalid_argument("removed edge " + id.label() + " is not in the graph");
    mask[static_cast<Eigen::Index>(*k)] = true;
  }
  return is_connected(g, mask);
}

}  // namespace robavg
