#pragma once

// Monte Carlo execution of a scenario: every trial streams the same snapshots
// through each configured algorithm and scores SINR per snapshot against the
// exact covariances in force at that snapshot.
//
// Random draws per trial come from independent substreams of the master seed
// (1: steering mismatch, 2: snapshots, 3: interferer powers), so a trial's
// result does not depend on which worker ran it or how many trials were run.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rrlcmv/scenario.hpp"

namespace rrlcmv {

enum class AveragingDomain { db, linear };

struct RunOptions {
  int workers = 0;  ///< 0: one per hardware thread
  AveragingDomain domain = AveragingDomain::db;
  std::optional<int> trials;            ///< overrides Scenario::num_trials
  std::optional<std::uint64_t> seed;    ///< overrides Scenario::master_seed
  std::uint64_t first_trial = 0;        ///< substream index of the first trial
  /// Fraction of divergent trials above which a run is flagged.
  double divergence_limit = 0.05;
};

/// One algorithm's result within one trial.
struct AlgorithmTrial {
  std::vector<double> sinr_db;     ///< length N; empty if the trial diverged
  std::vector<int> selected_rank;  ///< rank-adaptive algorithms only
  bool divergent = false;
  std::uint64_t rejected_steps = 0;
};

struct TrialResult {
  std::vector<AlgorithmTrial> algorithms;  ///< scenario order
};

/// Runs trial number `trial` (a substream index) of `scenario` with `seed`.
TrialResult run_trial(const Scenario& scenario, std::uint64_t seed, std::uint64_t trial);

struct SinrTrace {
  std::string label;
  std::vector<double> mean_sinr_db;         ///< length N
  std::vector<double> mean_selected_rank;   ///< length N, or empty
  int trials_used = 0;
  int divergent_trials = 0;
  std::uint64_t rejected_steps = 0;

  /// Mean of mean_sinr_db over the last ceil(N/10) snapshots.
  double tail_mean_db() const;
};

struct RunResult {
  std::string scenario_name;
  std::string config_hash;
  std::uint64_t master_seed = 0;
  int num_trials = 0;
  int num_snapshots = 0;
  AveragingDomain domain = AveragingDomain::db;
  std::vector<SinrTrace> traces;  ///< scenario order
  double wall_seconds = 0.0;
  bool divergence_exceeded = false;

  const SinrTrace& trace(const std::string& label) const;
};

RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// First 1-based snapshot at which `trace` reaches `level_db`, or 0 if never.
int first_crossing(const std::vector<double>& trace, double level_db, int from_snapshot = 1);

}  // namespace rrlcmv
