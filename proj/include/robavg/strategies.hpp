#pragma once

#include "robavg/config.hpp"
#include "robavg/dynamics.hpp"
#include "robavg/graph.hpp"
#include "robavg/types.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace robavg {

struct RankedLink {
  std::size_t edge = 0;
  double value = 0.0;
  bool operator==(const RankedLink&) const = default;
};

/// Strictly negative (edge, value) pairs, ascending by value; ties go to the
/// lexicographically smaller edge.
using RankedLinks = std::vector<RankedLink>;

/// The at most `budget` most negative entries of an edge-aligned vector.
RankedLinks select_phi(const EdgeValues& values, std::size_t budget);

/// Same selection over an explicit candidate list (one entry per edge).
RankedLinks select_phi(std::vector<RankedLink> candidates, std::size_t budget);

/// Which routine produced a StrategyOutcome.
enum class Rule {
  designer_response_maxmin,
  adversary_first_move_maxmin,
  adversary_response_minmax,
  designer_first_move_minmax,
};

std::string to_string(Rule rule);

struct StrategyOutcome {
  Rule rule{};
  ControlPair control;
  // The ranked values that determined the action.
  RankedLinks ranked;

  // Designer subset search only.
  std::optional<std::size_t> protect_level;  // loop index i that succeeded
  std::vector<std::size_t> subset;           // S, ascending edge indices
  std::optional<std::size_t> protected_edge;  // link pushed out of the adversary's list
  bool fallback = false;
  std::size_t subsets_examined = 0;
};

// Each routine ranks an edge-aligned sensitivity vector. Passing nu_values(x)
// gives the adjoint-free strategies; passing f_values(x, p) gives the
// costate-based ones.

/// Max-min designer: boost b on the most negative sensitivities among links
/// that survive `broken`.
StrategyOutcome designer_response_maxmin(const Graph& g, const BreakMask& broken, const EdgeValues& sensitivity,
                                         std::size_t budget, double cap);

/// Max-min adversary: rank {a s} together with {(a+b) s} over links with s < 0
/// and break the links behind the smallest values. A link appearing twice
/// consumes one budget slot.
StrategyOutcome adversary_first_move_maxmin(const Graph& g, const EdgeValues& sensitivity, std::size_t budget,
                                            double cap);

/// Min-max adversary: break the most negative (a + v) s.
StrategyOutcome adversary_response_minmax(const Graph& g, const EdgeValues& boost, const EdgeValues& sensitivity,
                                          std::size_t budget);

/// Min-max designer: subset search that tries to push protected links out of
/// the adversary's break list, falling back to the best links the adversary
/// leaves alone. Throws GuardExceeded when the worst-case number of candidate
/// subsets exceeds limits.subset_guard.
StrategyOutcome designer_first_move_minmax(const Graph& g, const EdgeValues& sensitivity, std::size_t budget,
                                           double cap, const SearchLimits& limits = {});

/// Worst-case number of subsets the min-max designer may examine for this sensitivity.
double designer_search_size(const Graph& g, const EdgeValues& sensitivity, std::size_t budget);

}  // namespace robavg
