#pragma once

// CSV and JSON emission for runs, rank sweeps, grid searches and complexity.

#include <ostream>
#include <string>
#include <vector>

#include "rrlcmv/complexity.hpp"
#include "rrlcmv/monte_carlo.hpp"
#include "rrlcmv/tuning.hpp"

namespace rrlcmv {

/// Header `snapshot,algorithm,mean_sinr_db[,selected_rank]`; the rank column
/// appears when any trace carries one and is empty for the others.
void write_trace_csv(std::ostream& out, const RunResult& run);

/// Seed, config hash, trial counts, divergence counts and wall time.
std::string run_manifest_json(const RunResult& run);

/// Header `rank,algorithm,final_sinr_db,divergent_trials,wall_seconds`.
void write_sweep_csv(std::ostream& out, const std::vector<RankSweepRow>& rows);

std::string grid_results_json(const std::vector<GridResult>& results);

/// Header `algorithm,additions,multiplications`.
void write_complexity_csv(std::ostream& out, const ComplexityReport& report);

}  // namespace rrlcmv
