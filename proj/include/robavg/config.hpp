#pragma once

#include "robavg/graph.hpp"
#include "robavg/kernel.hpp"
#include "robavg/types.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace robavg {

enum class Mode { maxmin, minmax, adversary_only, designer_only, uncontrolled };

std::string to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

/// Knobs for the first-moving designer's subset search.
struct SearchLimits {
  // Maximum number of candidate subsets examined per switching instant.
  double subset_guard = 1e6;
  // Maximum number of leaves for the exhaustive game oracle.
  double leaf_guard = 1e7;
  // A protected link counts as displaced only if ell links beat it by more than this.
  double slack = 0.0;

  bool operator==(const SearchLimits&) const = default;
};

struct GameConfig {
  Vector x0;
  std::size_t budget = 0;   // ell
  double boost_cap = 0.0;   // b
  double horizon = 1.0;     // T
  double step = 1e-3;       // dt
  std::size_t intervals = 1;  // K
  Kernel kernel;
  Mode mode = Mode::uncontrolled;
  SearchLimits limits;

  /// Integration steps per switching interval (dt aligned to T/K).
  std::size_t steps_per_interval() const;
  double interval_length() const { return horizon / static_cast<double>(intervals); }

  bool operator==(const GameConfig& other) const;
};

/// Throws ConfigError if cfg is not admissible for g.
void validate(const Graph& g, const GameConfig& cfg);

struct Scenario {
  Graph graph;
  GameConfig config;
  std::vector<std::string> warnings;
};

/// Parse the JSON configuration document (schema in README.md).
Scenario parse_config(std::string_view text);
Scenario load_config(const std::filesystem::path& path);

/// Inverse of parse_config; every resolved field is written.
std::string serialize_config(const Graph& g, const GameConfig& cfg);

}  // namespace robavg
