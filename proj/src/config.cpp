#include "robavg/config.hpp"

#include "json.hpp"
#include "robavg/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace robavg {

using nlohmann::json;

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::maxmin: return "maxmin";
    case Mode::minmax: return "minmax";
    case Mode::adversary_only: return "adversary_only";
    case Mode::designer_only: return "designer_only";
    case Mode::uncontrolled: return "uncontrolled";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view name) {
  for (Mode m : {Mode::maxmin, Mode::minmax, Mode::adversary_only, Mode::designer_only, Mode::uncontrolled}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::size_t GameConfig::steps_per_interval() const {
  if (!(step > 0.0) || intervals == 0) return 0;
  const double ratio = interval_length() / step;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(rounded - ratio) > 1e-9 * std::max(1.0, ratio)) return 0;
  return static_cast<std::size_t>(rounded);
}

bool GameConfig::operator==(const GameConfig& other) const {
  return x0.size() == other.x0.size() && x0 == other.x0 && budget == other.budget &&
         boost_cap == other.boost_cap && horizon == other.horizon && step == other.step &&
         intervals == other.intervals && kernel == other.kernel && mode == other.mode &&
         limits == other.limits;
}

void validate(const Graph& g, const GameConfig& cfg) {
  if (static_cast<std::size_t>(cfg.x0.size()) != g.node_count())
    throw ConfigError("x0 has length " + std::to_string(cfg.x0.size()) + " but the graph has " +
                      std::to_string(g.node_count()) + " nodes");
  if (!cfg.x0.allFinite()) throw ConfigError("x0 must be finite");
  if (cfg.budget > g.edge_count())
    throw ConfigError("budget ell=" + std::to_string(cfg.budget) + " exceeds the edge count " +
                      std::to_string(g.edge_count()));
  if (!(cfg.boost_cap >= 0.0) || !std::isfinite(cfg.boost_cap)) throw ConfigError("boost cap b must be >= 0");
  if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) throw ConfigError("horizon T must be > 0");
  if (!(cfg.step > 0.0)) throw ConfigError("integration step dt must be > 0");
  if (cfg.intervals == 0) throw ConfigError("switching count K must be >= 1");
  if (cfg.steps_per_interval() == 0)
    throw ConfigError("dt=" + format_g(cfg.step, 6) + " does not divide T/K=" + format_g(cfg.interval_length(), 6));
  if (!(cfg.kernel.scale > 0.0)) throw ConfigError("kernel scale must be > 0");
  if (!std::isfinite(cfg.kernel.rate)) throw ConfigError("kernel rate must be finite");
  if (!(cfg.limits.subset_guard >= 1.0) || !(cfg.limits.leaf_guard >= 1.0))
    throw ConfigError("guards must be >= 1");
  if (!(cfg.limits.slack >= 0.0)) throw ConfigError("slack must be >= 0");
}

namespace {

template <class T>
T required(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

template <class T>
T optional_value(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::size_t count_value(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ConfigError(std::string("'") + key + "' must be a nonnegative integer");
  return v.get<std::size_t>();
}

Kernel parse_kernel(const json& doc) {
  if (!doc.contains("kernel")) return Kernel::constant();
  const auto& k = doc.at("kernel");
  if (!k.is_object()) throw ConfigError("'kernel' must be an object");
  const auto type = optional_value<std::string>(k, "type", "constant");
  const double scale = optional_value<double>(k, "scale", 1.0);
  if (type == "constant") return Kernel::constant(scale);
  if (type == "exponential") return Kernel::exponential(required<double>(k, "rate"), scale);
  throw ConfigError("unknown kernel type '" + type + "'");
}

}  // namespace

Scenario parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");

  for (const char* key : {"nodes", "edges", "x0", "ell", "b", "T", "dt", "K", "mode"})
    if (!doc.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");

  const std::size_t n = count_value(doc, "nodes");
  const auto& edge_list = doc.at("edges");
  if (!edge_list.is_array()) throw ConfigError("'edges' must be an array of [i, j, weight]");
  std::vector<Edge> edges;
  for (const auto& item : edge_list) {
    if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() || !item[1].is_number_integer() ||
        !item[2].is_number())
      throw ConfigError("each edge must be [i, j, weight] with integer node ids");
    const auto i = item[0].get<long long>();
    const auto j = item[1].get<long long>();
    if (i < 1 || j < 1) throw ConfigError("node ids are 1-based");
    edges.push_back({EdgeId{static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)}, item[2].get<double>()});
  }

  Scenario s{Graph(n, std::move(edges)), GameConfig{}, {}};
  GameConfig& cfg = s.config;

  const auto x0 = required<std::vector<double>>(doc, "x0");
  cfg.x0 = Eigen::Map<const Vector>(x0.data(), static_cast<Eigen::Index>(x0.size()));
  cfg.budget = count_value(doc, "ell");
  cfg.boost_cap = required<double>(doc, "b");
  cfg.horizon = required<double>(doc, "T");
  cfg.step = required<double>(doc, "dt");
  cfg.intervals = count_value(doc, "K");
  cfg.kernel = parse_kernel(doc);
  const auto mode_name = required<std::string>(doc, "mode");
  const auto mode = parse_mode(mode_name);
  if (!mode) throw ConfigError("unknown mode '" + mode_name + "'");
  cfg.mode = *mode;
  cfg.limits.subset_guard = optional_value<double>(doc, "subset_guard", cfg.limits.subset_guard);
  cfg.limits.leaf_guard = optional_value<double>(doc, "leaf_guard", cfg.limits.leaf_guard);
  cfg.limits.slack = optional_value<double>(doc, "slack", cfg.limits.slack);

  validate(s.graph, cfg);
  if (!is_connected(s.graph)) s.warnings.push_back("graph is not connected");
  return s;
}

Scenario load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const Graph& g, const GameConfig& cfg) {
  return config_to_json(g, cfg).dump(2) + "\n";
}

}  // namespace robavg
