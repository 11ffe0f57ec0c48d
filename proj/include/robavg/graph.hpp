#pragma once

#include "robavg/types.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace robavg {

/// Undirected link {i,j}, stored with i < j (0-based node indices).
struct EdgeId {
  std::size_t i = 0;
  std::size_t j = 0;

  static EdgeId canonical(std::size_t a, std::size_t b) {
    return a < b ? EdgeId{a, b} : EdgeId{b, a};
  }
  auto operator<=>(const EdgeId&) const = default;
  bool operator==(const EdgeId&) const = default;

  // 1-based "{i,j}" for diagnostics and files.
  std::string label() const;
};

struct Edge {
  EdgeId id;
  double weight = 0.0;
};

/// Undirected weighted graph with positive averaging gains.
///
/// Edges are kept in lexicographic order of their canonical ids. That order
/// is the tie-break for every ranking in the library, and edge indices
/// (positions in edges()) are what EdgeValues and BreakMask are aligned to.
/// Immutable after construction.
class Graph {
 public:
  Graph() = default;

  // Throws ConfigError on self-loops, duplicates, out-of-range nodes or
  // nonpositive weights. Connectivity is not required.
  Graph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_[index]; }
  double weight(std::size_t index) const { return edges_[index].weight; }

  /// Nominal weights a_ij as an edge-aligned vector.
  EdgeValues weights() const;

  std::optional<std::size_t> find(EdgeId id) const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// True iff the graph with the masked links deleted is connected.
/// An empty mask (size 0) removes nothing.
bool is_connected(const Graph& g, const BreakMask& removed = BreakMask());

/// Convenience overload taking the removed links by id.
bool is_connected(const Graph& g, std::span<const EdgeId> removed);

}  // namespace robavg
