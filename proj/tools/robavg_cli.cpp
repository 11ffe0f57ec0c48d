// Command-line driver: simulate, compare, spe-check, sweep.

#include "CLI11.hpp"
#include "robavg/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Designer vs adversary on continuous-time distributed averaging"};
  app.require_subcommand(1);

  robavg::cli::Options opt;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Scenario configuration (JSON)")->required();
    sub->add_option("--guard", opt.guard, "Override the subset and exhaustive-search limits");
    sub->add_option("--threads", opt.threads, "Worker threads for exhaustive search and sweeps")
        ->check(CLI::PositiveNumber);
    sub->add_option("--dt-override", opt.dt_override, "Replace the configured integration step");
    sub->add_option("--k-override", opt.k_override, "Replace the configured switching count");
  };

  auto* simulate = app.add_subcommand("simulate", "Run one game and write trajectory.csv and result.json");
  common(simulate);
  simulate->add_option("--out", opt.out, "Output directory")->required();
  simulate->add_flag("--timing", opt.timing, "Record wall-clock time in result.json");

  auto* compare = app.add_subcommand("compare", "Greedy strategies against exhaustive search, both orders of play");
  common(compare);
  compare->add_option("--out", opt.out, "Optional JSON report path");

  auto* spe = app.add_subcommand("spe-check", "Check the weight-diversity condition for equal game values");
  common(spe);
  spe->add_option("--epsilon", opt.epsilon, "Lower-bound parameter epsilon (> 0)")->required();
  spe->add_option("--out", opt.out, "Optional JSON certificate path");

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep over b, ell, K or T");
  common(sweep);
  sweep->add_option("--out", opt.out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : robavg::cli::usage_error;
  }

  if (simulate->parsed()) return robavg::cli::simulate(opt, std::cout, std::cerr);
  if (compare->parsed()) return robavg::cli::compare(opt, std::cout, std::cerr);
  if (spe->parsed()) return robavg::cli::spe_check(opt, std::cout, std::cerr);
  return robavg::cli::sweep(opt, std::cout, std::cerr);
}
