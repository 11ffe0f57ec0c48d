#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace robavg::cli {

/// Process exit codes.
enum Exit : int { ok = 0, usage_error = 1, runtime_error = 2 };

struct Options {
  std::filesystem::path config;  // scenario config, or sweep spec for sweep
  std::filesystem::path out;     // directory (simulate) or file (sweep, optional elsewhere)
  std::optional<double> epsilon;
  std::optional<double> guard;   // overrides both search limits
  unsigned threads = 1;
  std::optional<double> dt_override;
  std::optional<std::size_t> k_override;
  bool timing = false;           // add wall-clock seconds to result JSON
};

int simulate(const Options& opt, std::ostream& out, std::ostream& err);
int compare(const Options& opt, std::ostream& out, std::ostream& err);
int spe_check(const Options& opt, std::ostream& out, std::ostream& err);
int sweep(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace robavg::cli
