#pragma once

#include "json.hpp"
#include "robavg/config.hpp"
#include "robavg/dynamics.hpp"
#include "robavg/game.hpp"
#include "robavg/oracle.hpp"
#include "robavg/strategies.hpp"

#include <iosfwd>
#include <string>

namespace robavg {

/// printf("%.{digits}g").
std::string format_g(double value, int digits = 17);

nlohmann::json config_to_json(const Graph& g, const GameConfig& cfg);
nlohmann::json to_json(const Graph& g, const ControlPair& c);
nlohmann::json to_json(const Graph& g, const StrategyOutcome& outcome);
nlohmann::json to_json(const Graph& g, const GameResult& result);
nlohmann::json to_json(const Graph& g, const BruteForceReport& report);
nlohmann::json to_json(const Graph& g, const SpeCertificate& cert);

/// Header t,x_1..x_n,integrand,J_cumulative; one row per grid point.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// One-line human-readable verdict.
std::string verdict_line(const SpeCertificate& cert);

}  // namespace robavg
