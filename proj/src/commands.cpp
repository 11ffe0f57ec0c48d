#include "robavg/commands.hpp"

#include "robavg/config.hpp"
#include "robavg/game.hpp"
#include "robavg/oracle.hpp"
#include "robavg/report.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace robavg::cli {

using nlohmann::json;

namespace {

constexpr double kCompareTolerance = 1e-3;

Scenario load(const Options& opt) {
  Scenario s = load_config(opt.config);
  if (opt.dt_override) s.config.step = *opt.dt_override;
  if (opt.k_override) s.config.intervals = *opt.k_override;
  if (opt.guard) {
    s.config.limits.subset_guard = *opt.guard;
    s.config.limits.leaf_guard = *opt.guard;
  }
  validate(s.graph, s.config);
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw ConfigError("failed writing '" + path.string() + "'");
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << "\n";
    return runtime_error;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return runtime_error;
  }
}

double relative_gap(double a, double b) {
  const double scale = std::max(a, b);
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

}  // namespace

int simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load(opt);
    for (const auto& w : s.warnings) err << "warning: " << w << "\n";
    if (opt.out.empty()) throw ConfigError("simulate needs --out <directory>");
    std::filesystem::create_directories(opt.out);

    const auto start = std::chrono::steady_clock::now();
    const GameResult result = run(s.graph, s.config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream csv;
    write_trajectory_csv(csv, result.trajectory);
    write_file(opt.out / "trajectory.csv", csv.str());

    json doc = {{"config", config_to_json(s.graph, s.config)}, {"result", to_json(s.graph, result)}};
    if (opt.timing) doc["wall_clock_seconds"] = seconds;
    write_file(opt.out / "result.json", doc.dump(2) + "\n");

    out << "mode " << to_string(result.mode) << "  J = " << format_g(result.value, 6) << "  ("
        << format_g(seconds, 3) << " s)\n";
    return static_cast<int>(ok);
  });
}

int compare(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = load(opt);
    for (const auto& w : s.warnings) err << "warning: " << w << "\n";
    json doc = {{"config", config_to_json(s.graph, s.config)}, {"tolerance", kCompareTolerance}};
    json rows = json::array();
    bool all = true;
    for (Mode mode : {Mode::maxmin, Mode::minmax}) {
      const ModeComparison c = compare_mode(s.graph, s.config, mode, kCompareTolerance, opt.threads);
      all = all && c.pass;
      out << to_string(mode) << ": greedy " << format_g(c.greedy, 6) << "  exhaustive " << format_g(c.exact, 6)
          << "  gap " << format_g(c.gap, 3);
      if (c.refined_step) out << "  (after refining dt to " << format_g(*c.refined_step, 6) << ")";
      out << "  " << (c.pass ? "PASS" : "FAIL") << "\n";
      json row = {{"mode", to_string(mode)}, {"greedy", c.greedy}, {"exhaustive", c.exact}, {"gap", c.gap},
                  {"pass", c.pass}};
      row["refined_dt"] = c.refined_step ? json(*c.refined_step) : json(nullptr);
      rows.push_back(row);
    }
    out << (all ? "PASS" : "FAIL") << " at relative tolerance " << format_g(kCompareTolerance, 3) << "\n";
    doc["modes"] = rows;
    doc["pass"] = all;
    if (!opt.out.empty()) write_file(opt.out, doc.dump(2) + "\n");
    return static_cast<int>(ok);
  });
}

int spe_check(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!opt.epsilon) throw ConfigError("spe-check needs --epsilon");
    const Scenario s = load(opt);
    const SpeCertificate cert = robavg::spe_check(s.graph, s.config.x0, s.config.horizon, *opt.epsilon,
                                                  s.config.boost_cap);
    out << verdict_line(cert) << "\n";
    json doc = {{"config", config_to_json(s.graph, s.config)}, {"certificate", to_json(s.graph, cert)}};
    if (cert.satisfied) {
      const GameValues v = upper_lower_values(s.graph, s.config);
      const double gap = relative_gap(v.upper, v.lower);
      out << "lower value " << format_g(v.lower, 6) << "  upper value " << format_g(v.upper, 6)
          << "  relative gap " << format_g(gap, 3) << "\n";
      doc["values"] = {{"lower", v.lower}, {"upper", v.upper}, {"relative_gap", gap}};
    }
    if (!opt.out.empty()) write_file(opt.out, doc.dump(2) + "\n");
    return static_cast<int>(ok);
  });
}

int sweep(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.out.empty()) throw ConfigError("sweep needs --out <file>");
    std::ifstream in(opt.config);
    if (!in) throw ConfigError("cannot read sweep spec '" + opt.config.string() + "'");
    json spec;
    try {
      spec = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("malformed sweep spec: ") + e.what());
    }
    if (!spec.is_object() || !spec.contains("parameter") || !spec.contains("values") || !spec.contains("base"))
      throw ConfigError("sweep spec needs 'parameter', 'values' and 'base'");
    const auto parameter = spec.at("parameter").get<std::string>();
    if (parameter != "b" && parameter != "ell" && parameter != "K" && parameter != "T")
      throw ConfigError("sweep parameter must be one of b, ell, K, T");
    if (!spec.at("values").is_array() || spec.at("values").empty()) throw ConfigError("sweep value list is empty");

    Options base_opt = opt;
    const auto& base = spec.at("base");
    Scenario scenario;
    if (base.is_string()) {
      base_opt.config = opt.config.parent_path() / base.get<std::string>();
      scenario = load(base_opt);
    } else {
      scenario = parse_config(base.dump());
      if (opt.dt_override) scenario.config.step = *opt.dt_override;
      if (opt.k_override) scenario.config.intervals = *opt.k_override;
      if (opt.guard) scenario.config.limits.subset_guard = scenario.config.limits.leaf_guard = *opt.guard;
      validate(scenario.graph, scenario.config);
    }

    std::vector<GameConfig> configs;
    std::vector<double> values;
    for (const auto& v : spec.at("values")) {
      if (!v.is_number()) throw ConfigError("sweep values must be numbers");
      const double value = v.get<double>();
      GameConfig cfg = scenario.config;
      if (parameter == "b") cfg.boost_cap = value;
      if (parameter == "T") cfg.horizon = value;
      if (parameter == "ell" || parameter == "K") {
        if (!v.is_number_integer() || value < 0) throw ConfigError(parameter + " values must be nonnegative integers");
        (parameter == "ell" ? cfg.budget : cfg.intervals) = v.get<std::size_t>();
      }
      validate(scenario.graph, cfg);
      configs.push_back(cfg);
      values.push_back(value);
    }

    struct Row {
      GameValues game;
      double baseline = 0.0;
    };
    std::vector<Row> rows(configs.size());
    auto evaluate = [&](std::size_t r) {
      GameConfig baseline = configs[r];
      baseline.mode = Mode::uncontrolled;
      rows[r] = {upper_lower_values(scenario.graph, configs[r]), run(scenario.graph, baseline).value};
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(configs.size())));
    if (workers == 1) {
      for (std::size_t r = 0; r < configs.size(); ++r) evaluate(r);
    } else {
      std::vector<std::exception_ptr> failures(workers);
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          try {
            for (std::size_t r = w; r < configs.size(); r += workers) evaluate(r);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      for (auto& t : pool) t.join();
      for (auto& f : failures)
        if (f) std::rethrow_exception(f);
    }

    std::ostringstream csv;
    csv << parameter << ",V_lower,V_upper,J_baseline\n";
    for (std::size_t r = 0; r < rows.size(); ++r)
      csv << format_g(values[r]) << ',' << format_g(rows[r].game.lower) << ',' << format_g(rows[r].game.upper) << ','
          << format_g(rows[r].baseline) << '\n';
    write_file(opt.out, csv.str());
    out << "wrote " << rows.size() << " rows to " << opt.out.string() << "\n";
    return static_cast<int>(ok);
  });
}

}  // namespace robavg::cli
