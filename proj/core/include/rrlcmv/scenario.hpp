#pragma once

// Scenario description for Monte Carlo runs and its JSON file format.
//
// Scenario files give angles in degrees (relative to endfire by default, or to
// broadside with "angle_reference": "broadside"), powers in linear units and
// SNR in dB. Snapshot indices in files are 1-based: a change event at
// snapshot i applies to snapshots i, i+1, ...

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rrlcmv/array_model.hpp"
#include "rrlcmv/lcmv.hpp"
#include "rrlcmv/rank_adapt.hpp"
#include "rrlcmv/rjio.hpp"

namespace rrlcmv {

enum class AlgorithmKind {
  optimal,      ///< clairvoyant: true covariance and actual steering vector
  loaded_lcmv,  ///< true covariance, presumed steering vector, fixed eps^2
  lcmv_sg,
  lcmv_rls,
  rjio_sg,
  rjio_rls,
};

std::string_view kind_name(AlgorithmKind kind);
AlgorithmKind parse_kind(std::string_view name);

struct AlgorithmSpec {
  std::string label;
  AlgorithmKind kind = AlgorithmKind::optimal;

  double mu = 1e-3;  ///< LCMV-SG
  FullRankInit init = FullRankInit::first_sensor;
  double alpha = 0.998;  ///< LCMV-RLS
  double delta = 100.0;
  double eps2 = 0.0;  ///< loaded-lcmv

  RjioHyperParams rjio;
  /// Unset step sizes / initial loading are resolved from the first snapshot's
  /// per-sensor energy e: mu_s = mu_w = 1e-3 / e, eps0 = 0.01 * e.
  bool auto_mu_s = false;
  bool auto_mu_w = false;
  bool auto_eps0 = false;
  std::optional<RankAdaptConfig> rank_adapt;

  bool is_adaptive() const {
    return kind != AlgorithmKind::optimal && kind != AlgorithmKind::loaded_lcmv;
  }
  bool is_rjio() const { return kind == AlgorithmKind::rjio_sg || kind == AlgorithmKind::rjio_rls; }
};

struct ChangeEvent {
  int snapshot = 1;  ///< 1-based
  SourceSet sources;
  double interferer_power_spread_db = 0.0;
};

struct Scenario {
  std::string name;
  std::string description;
  ArrayGeometry geometry;
  SourceSet sources;  ///< angles stored in the endfire convention
  /// Interferer power in dB drawn per trial as Normal(nominal dB, spread).
  double interferer_power_spread_db = 0.0;
  MismatchModel mismatch;
  int num_snapshots = 1;
  int num_trials = 1;
  std::vector<ChangeEvent> change_events;
  std::vector<AlgorithmSpec> algorithms;
  std::uint64_t master_seed = 1;

  void validate() const;
  const AlgorithmSpec& algorithm(std::string_view label) const;
  AlgorithmSpec& algorithm(std::string_view label);
};

Scenario parse_scenario(std::string_view json_text);
std::string scenario_to_json(const Scenario& scenario);

struct BuiltinScenario {
  const char* name;
  const char* json;
};

const std::vector<BuiltinScenario>& builtin_scenarios();

/// Loads a builtin scenario by name, or else reads the file at `name_or_path`.
Scenario load_scenario(const std::string& name_or_path);

/// FNV-1a hash of the canonical JSON form, as 16 hex digits.
std::string scenario_hash(const Scenario& scenario);

/// Sets a tunable numeric parameter on an algorithm spec by name (mu, alpha,
/// delta, eps2, rank, mu_s, mu_w, mu_eps, delta_bar, eps0, d_min, d_max,
/// rank_alpha). Throws ConfigError for unknown names.
void set_parameter(AlgorithmSpec& spec, std::string_view name, double value);
double get_parameter(const AlgorithmSpec& spec, std::string_view name);

}  // namespace rrlcmv
