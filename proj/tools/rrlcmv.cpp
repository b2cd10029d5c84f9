// rrlcmv: command-line front end for scenario runs, rank sweeps, grid
// searches and complexity tables.
//
// Exit codes: 0 success, 2 configuration error, 3 divergence threshold
// exceeded.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rrlcmv/complexity.hpp"
#include "rrlcmv/errors.hpp"
#include "rrlcmv/monte_carlo.hpp"
#include "rrlcmv/report.hpp"
#include "rrlcmv/scenario.hpp"
#include "rrlcmv/tuning.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  int workers = 0;
  std::string out;
  std::string avg_domain = "db";
  std::string manifest;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "Master seed (overrides the scenario)");
  cmd->add_option("--trials", f.trials, "Number of Monte Carlo trials")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", f.workers, "Worker threads (0: one per core)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", f.out, "Output file (default: stdout)");
  cmd->add_option("--avg-domain", f.avg_domain, "Averaging domain across trials")
      ->check(CLI::IsMember({"db", "linear"}));
  cmd->add_option("--manifest", f.manifest, "Write a JSON run manifest to this path");
}

rrlcmv::RunOptions to_options(const CommonFlags& f) {
  rrlcmv::RunOptions o;
  o.workers = f.workers;
  o.trials = f.trials;
  o.seed = f.seed;
  o.domain = f.avg_domain == "linear" ? rrlcmv::AveragingDomain::linear
                                      : rrlcmv::AveragingDomain::db;
  return o;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw rrlcmv::ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw rrlcmv::ConfigError("cannot open '" + path + "' for writing");
  f << text << '\n';
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rrlcmv::ConfigError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int report_divergence(const rrlcmv::RunResult& run) {
  if (!run.divergence_exceeded) return 0;
  for (const auto& t : run.traces) {
    if (t.divergent_trials > 0) {
      std::cerr << "rrlcmv: " << t.label << " diverged in " << t.divergent_trials << " of "
                << run.num_trials << " trials\n";
    }
  }
  return kExitDivergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust reduced-rank LCMV beamforming simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string run_scenario_name;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario and emit the mean SINR trace as CSV");
  run_cmd->add_option("scenario", run_scenario_name, "Scenario file or builtin name")->required();
  add_common(run_cmd, run_flags);

  CommonFlags sweep_flags;
  std::string sweep_scenario_name;
  std::string ranks_text = "1..8";
  auto* sweep_cmd =
      app.add_subcommand("sweep-rank", "Final SINR of each fixed-rank RJIO algorithm per rank");
  sweep_cmd->add_option("scenario", sweep_scenario_name, "Scenario file or builtin name")
      ->required();
  sweep_cmd->add_option("--ranks", ranks_text, "Ranks, e.g. 1..8 or 2,4,8");
  add_common(sweep_cmd, sweep_flags);

  CommonFlags grid_flags;
  std::string grid_scenario_name;
  std::string grid_path;
  std::string tuned_path;
  auto* grid_cmd = app.add_subcommand("grid-search", "Exhaustive hyperparameter search");
  grid_cmd->add_option("scenario", grid_scenario_name, "Scenario file or builtin name")
      ->required();
  grid_cmd->add_option("--grid", grid_path, "JSON grid file")->required();
  grid_cmd->add_option("--tuned", tuned_path, "Write the scenario with the best values here");
  add_common(grid_cmd, grid_flags);

  int m = 32;
  int d = 4;
  std::string complexity_out;
  auto* cx_cmd = app.add_subcommand("complexity", "Per-snapshot arithmetic cost table");
  cx_cmd->add_option("--M", m, "Number of sensors")->required();
  cx_cmd->add_option("--D", d, "Rank")->required();
  cx_cmd->add_option("--out", complexity_out, "Output file (default: stdout)");

  bool show_json = false;
  auto* list_cmd = app.add_subcommand("list-scenarios", "List the builtin scenarios");
  list_cmd->add_flag("--json", show_json, "Print each scenario in canonical JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) {
      const rrlcmv::Scenario s = rrlcmv::load_scenario(run_scenario_name);
      const rrlcmv::RunResult run = rrlcmv::run_scenario(s, to_options(run_flags));
      Output out(run_flags.out);
      rrlcmv::write_trace_csv(out.stream(), run);
      if (!run_flags.manifest.empty()) {
        write_text(run_flags.manifest, rrlcmv::run_manifest_json(run));
      }
      return report_divergence(run);
    }
    if (*sweep_cmd) {
      const rrlcmv::Scenario s = rrlcmv::load_scenario(sweep_scenario_name);
      const auto rows =
          rrlcmv::sweep_rank(s, rrlcmv::parse_rank_list(ranks_text), to_options(sweep_flags));
      Output out(sweep_flags.out);
      rrlcmv::write_sweep_csv(out.stream(), rows);
      return 0;
    }
    if (*grid_cmd) {
      const rrlcmv::Scenario s = rrlcmv::load_scenario(grid_scenario_name);
      const auto grid = rrlcmv::parse_grid(read_text(grid_path));
      const auto results = rrlcmv::grid_search(s, grid, to_options(grid_flags));
      Output out(grid_flags.out);
      out.stream() << rrlcmv::grid_results_json(results) << '\n';
      if (!tuned_path.empty()) {
        write_text(tuned_path, rrlcmv::scenario_to_json(rrlcmv::apply_best(s, results)));
      }
      for (const auto& r : results) {
        if (!r.best) {
          std::cerr << "rrlcmv: every candidate for " << r.label << " diverged\n";
          return kExitDivergence;
        }
      }
      return 0;
    }
    if (*cx_cmd) {
      Output out(complexity_out);
      rrlcmv::write_complexity_csv(out.stream(), rrlcmv::complexity_report(m, d));
      return 0;
    }
    if (*list_cmd) {
      for (const auto& b : rrlcmv::builtin_scenarios()) {
        const rrlcmv::Scenario s = rrlcmv::parse_scenario(b.json);
        if (show_json) {
          std::cout << rrlcmv::scenario_to_json(s) << '\n';
        } else {
          std::cout << b.name << "\t" << s.description << '\n';
        }
      }
      return 0;
    }
  } catch (const rrlcmv::ConfigError& e) {
    std::cerr << "rrlcmv: " << e.what() << '\n';
    return kExitConfig;
  } catch (const rrlcmv::DimensionError& e) {
    std::cerr << "rrlcmv: " << e.what() << '\n';
    return kExitConfig;
  } catch (const rrlcmv::Error& e) {
    std::cerr << "rrlcmv: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
