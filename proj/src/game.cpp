#include "robavg/game.hpp"

namespace robavg {

std::pair<ControlPair, IntervalPlay> play_instant(const Graph& g, const GameConfig& cfg, Mode mode, const Vector& x) {
  const std::size_t m = g.edge_count();
  const EdgeValues nu = nu_values(x, g);
  IntervalPlay play;
  switch (mode) {
    case Mode::maxmin: {
      play.adversary = adversary_first_move_maxmin(g, nu, cfg.budget, cfg.boost_cap);
      play.designer = designer_response_maxmin(g, play.adversary->control.broken, nu, cfg.budget, cfg.boost_cap);
      return {play.designer->control, std::move(play)};
    }
    case Mode::minmax: {
      play.designer = designer_first_move_minmax(g, nu, cfg.budget, cfg.boost_cap, cfg.limits);
      play.adversary = adversary_response_minmax(g, play.designer->control.boost, nu, cfg.budget);
      return {play.adversary->control, std::move(play)};
    }
    case Mode::adversary_only: {
      play.adversary = adversary_response_minmax(g, EdgeValues::Zero(static_cast<Eigen::Index>(m)), nu, cfg.budget);
      return {play.adversary->control, std::move(play)};
    }
    case Mode::designer_only: {
      play.designer = designer_response_maxmin(g, BreakMask(), nu, cfg.budget, cfg.boost_cap);
      return {play.designer->control, std::move(play)};
    }
    case Mode::uncontrolled:
      break;
  }
  return {ControlPair::none(m), std::move(play)};
}

GameResult run(const Graph& g, const GameConfig& cfg) {
  validate(g, cfg);
  GameResult result;
  result.mode = cfg.mode;
  result.plays.reserve(cfg.intervals);
  result.trajectory = integrate_feedback(
      g, cfg.x0, cfg.horizon, cfg.step, cfg.intervals,
      [&](std::size_t, double, const Vector& x) {
        auto [control, play] = play_instant(g, cfg, cfg.mode, x);
        result.plays.push_back(std::move(play));
        return control;
      },
      cfg.kernel);
  result.value = result.trajectory.cost();
  return result;
}

GameValues upper_lower_values(const Graph& g, const GameConfig& cfg) {
  GameConfig lower = cfg;
  lower.mode = Mode::maxmin;
  GameConfig upper = cfg;
  upper.mode = Mode::minmax;
  return {run(g, lower).value, run(g, upper).value};
}

}  // namespace robavg
