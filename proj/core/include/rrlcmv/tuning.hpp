#pragma once

// Hyperparameter search and rank sweeps on top of run_scenario.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rrlcmv/monte_carlo.hpp"

namespace rrlcmv {

struct ParameterAxis {
  std::string name;  ///< a set_parameter() name
  std::vector<double> values;
};

struct AlgorithmGrid {
  std::string label;  ///< algorithm label in the scenario
  std::vector<ParameterAxis> axes;
};

using ParameterGrid = std::vector<AlgorithmGrid>;

/// {"<label>": {"<param>": [v1, v2, ...], ...}, ...}; listed order is kept.
ParameterGrid parse_grid(std::string_view json_text);

struct Candidate {
  std::vector<std::pair<std::string, double>> params;
  double score_db = 0.0;  ///< tail mean SINR over the last 10% of snapshots
  bool divergent = false; ///< any divergent trial or rejected step
};

struct GridResult {
  std::string label;
  std::vector<Candidate> candidates;  ///< Cartesian product, first axis slowest
  std::optional<std::size_t> best;    ///< unset when every candidate diverged
};

/// Exhaustive search. Each candidate runs its algorithm alone on the
/// scenario; divergent candidates are never chosen and ties go to the
/// first-listed candidate. Throws ConfigError on an empty grid.
std::vector<GridResult> grid_search(const Scenario& scenario, const ParameterGrid& grid,
                                    const RunOptions& options = {});

/// Copy of `scenario` with each searched algorithm set to its best candidate.
Scenario apply_best(const Scenario& scenario, const std::vector<GridResult>& results);

struct RankSweepRow {
  int rank = 0;
  std::string label;
  double final_sinr_db = 0.0;  ///< tail mean over the last 10% of snapshots
  int divergent_trials = 0;
  double wall_seconds = 0.0;
};

/// Runs every fixed-rank RJIO algorithm of `scenario` once per rank.
std::vector<RankSweepRow> sweep_rank(const Scenario& scenario, const std::vector<int>& ranks,
                                     const RunOptions& options = {});

/// Parses "1..8", "2,4,6" or a mix such as "1..3,8".
std::vector<int> parse_rank_list(std::string_view text);

struct LoadingChoice {
  double eps2 = 0.0;
  double sinr_db = 0.0;
};

/// Picks eps^2 from `grid` maximizing the SINR of loaded_lcmv(r, a_p, eps^2)
/// scored on (r_s, r_i); ties go to the first-listed value.
LoadingChoice tune_loading(const ComplexMatrix& r, const ComplexVector& a_p,
                           const ComplexMatrix& r_s, const ComplexMatrix& r_i,
                           const std::vector<double>& grid);

}  // namespace rrlcmv
