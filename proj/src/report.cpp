#include "robavg/report.hpp"

#include <cstdio>
#include <ostream>

namespace robavg {

using nlohmann::json;

std::string format_g(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

namespace {

json edge_json(const Graph& g, std::size_t k) {
  const auto& id = g.edge(k).id;
  return json::array({id.i + 1, id.j + 1});
}

json edge_list(const Graph& g, const std::vector<std::size_t>& edges) {
  json out = json::array();
  for (auto k : edges) out.push_back(edge_json(g, k));
  return out;
}

json ranked_json(const Graph& g, const RankedLinks& ranked) {
  json out = json::array();
  for (const auto& r : ranked) out.push_back({{"edge", edge_json(g, r.edge)}, {"value", r.value}});
  return out;
}

// JSON numbers cannot carry infinities or NaN.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json config_to_json(const Graph& g, const GameConfig& cfg) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back(json::array({e.id.i + 1, e.id.j + 1, e.weight}));
  json kernel = {{"type", to_string(cfg.kernel.kind)}, {"scale", cfg.kernel.scale}};
  if (cfg.kernel.kind == Kernel::Kind::exponential) kernel["rate"] = cfg.kernel.rate;
  return json{{"nodes", g.node_count()},
              {"edges", edges},
              {"x0", std::vector<double>(cfg.x0.data(), cfg.x0.data() + cfg.x0.size())},
              {"ell", cfg.budget},
              {"b", cfg.boost_cap},
              {"T", cfg.horizon},
              {"dt", cfg.step},
              {"K", cfg.intervals},
              {"kernel", kernel},
              {"mode", to_string(cfg.mode)},
              {"subset_guard", cfg.limits.subset_guard},
              {"leaf_guard", cfg.limits.leaf_guard},
              {"slack", cfg.limits.slack}};
}

json to_json(const Graph& g, const ControlPair& c) {
  json boosts = json::array();
  for (auto k : c.boosted_edges()) boosts.push_back({{"edge", edge_json(g, k)}, {"boost", c.boost[static_cast<Eigen::Index>(k)]}});
  return json{{"broken", edge_list(g, c.broken_edges())}, {"boosted", boosts}};
}

json to_json(const Graph& g, const StrategyOutcome& outcome) {
  json out = to_json(g, outcome.control);
  out["rule"] = to_string(outcome.rule);
  out["ranked"] = ranked_json(g, outcome.ranked);
  if (outcome.rule == Rule::designer_first_move_minmax) {
    out["fallback"] = outcome.fallback;
    out["subsets_examined"] = outcome.subsets_examined;
    out["subset"] = edge_list(g, outcome.subset);
    out["protect_level"] = outcome.protect_level ? json(*outcome.protect_level) : json(nullptr);
    out["protected_edge"] = outcome.protected_edge ? edge_json(g, *outcome.protected_edge) : json(nullptr);
  }
  return out;
}

json to_json(const Graph& g, const GameResult& result) {
  json intervals = json::array();
  const auto& traj = result.trajectory;
  for (std::size_t q = 0; q < result.plays.size(); ++q) {
    const auto& play = result.plays[q];
    json entry = {{"index", q},
                  {"t", traj.times[static_cast<Eigen::Index>(q * traj.steps_per_interval)]},
                  {"applied", to_json(g, traj.controls[q])}};
    entry["adversary"] = play.adversary ? to_json(g, *play.adversary) : json(nullptr);
    entry["designer"] = play.designer ? to_json(g, *play.designer) : json(nullptr);
    intervals.push_back(entry);
  }
  return json{{"mode", to_string(result.mode)}, {"J", result.value}, {"intervals", intervals}};
}

json to_json(const Graph& g, const BruteForceReport& report) {
  json line = json::array();
  for (std::size_t q = 0; q < report.adversary_actions.size(); ++q)
    line.push_back({{"index", q},
                    {"broken", edge_list(g, report.adversary_actions[q].broken_edges())},
                    {"boosted", edge_list(g, report.designer_actions[q].boosted_edges())}});
  return json{{"mode", to_string(report.mode)},
              {"value", report.value},
              {"optimal_line", line},
              {"adversary_choices", report.adversary_choices},
              {"designer_choices", report.designer_choices},
              {"leaves", report.leaves},
              {"guard", report.guard}};
}

json to_json(const Graph& g, const SpeCertificate& cert) {
  json witness = nullptr;
  if (cert.witness)
    witness = {{"first", edge_json(g, cert.witness->first)},
               {"second", edge_json(g, cert.witness->second)},
               {"reason", cert.witness_reason}};
  return json{{"M", cert.M},
              {"epsilon", cert.epsilon},
              {"gamma", cert.gamma},
              {"bound_b", number_or_null(cert.bound_b)},
              {"b", cert.b},
              {"degenerate", cert.degenerate},
              {"side_conditions_ok", cert.side_conditions_ok},
              {"satisfied", cert.satisfied},
              {"witness", witness}};
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t";
  for (Eigen::Index i = 0; i < traj.states.rows(); ++i) out << ",x_" << (i + 1);
  out << ",integrand,J_cumulative\n";
  for (Eigen::Index k = 0; k < traj.times.size(); ++k) {
    out << format_g(traj.times[k]);
    for (Eigen::Index i = 0; i < traj.states.rows(); ++i) out << ',' << format_g(traj.states(i, k));
    out << ',' << format_g(traj.integrand[k]) << ',' << format_g(traj.cumulative_cost[k]) << '\n';
  }
}

std::string verdict_line(const SpeCertificate& cert) {
  std::string line = cert.satisfied ? "SATISFIED" : "NOT SATISFIED";
  line += ": M=" + format_g(cert.M, 6) + " epsilon=" + format_g(cert.epsilon, 6) + " gamma=" + format_g(cert.gamma, 6);
  if (cert.degenerate) return line + " (single link: no certificate)";
  line += " b=" + format_g(cert.b, 6) + " bound=" + format_g(cert.bound_b, 6);
  line += cert.side_conditions_ok ? " side-conditions=ok" : " side-conditions=violated (" + cert.witness_reason + ")";
  return line;
}

}  // namespace robavg
