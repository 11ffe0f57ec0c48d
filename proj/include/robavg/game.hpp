#pragma once

#include "robavg/config.hpp"
#include "robavg/dynamics.hpp"
#include "robavg/graph.hpp"
#include "robavg/strategies.hpp"

#include <utility>
#include <vector>

namespace robavg {

/// Actions taken at one switching instant; a player who does not act in the
/// chosen mode has no outcome.
struct IntervalPlay {
  std::optional<StrategyOutcome> adversary;
  std::optional<StrategyOutcome> designer;
};

struct GameResult {
  Mode mode = Mode::uncontrolled;
  double value = 0.0;  // J
  Trajectory trajectory;
  std::vector<IntervalPlay> plays;
};

/// Controls for one switching instant under `mode`, evaluated at state x.
std::pair<ControlPair, IntervalPlay> play_instant(const Graph& g, const GameConfig& cfg, Mode mode, const Vector& x);

/// Closed-loop play over the switching grid.
GameResult run(const Graph& g, const GameConfig& cfg);

struct GameValues {
  double lower = 0.0;  // max-min
  double upper = 0.0;  // min-max
};

GameValues upper_lower_values(const Graph& g, const GameConfig& cfg);

}  // namespace robavg
