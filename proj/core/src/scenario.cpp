#include "rrlcmv/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "rrlcmv/errors.hpp"

namespace rrlcmv {

namespace {

using Json = nlohmann::ordered_json;

struct KindName {
  AlgorithmKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {AlgorithmKind::optimal, "optimal"},   {AlgorithmKind::loaded_lcmv, "loaded-lcmv"},
    {AlgorithmKind::lcmv_sg, "lcmv-sg"},   {AlgorithmKind::lcmv_rls, "lcmv-rls"},
    {AlgorithmKind::rjio_sg, "rjio-sg"},   {AlgorithmKind::rjio_rls, "rjio-rls"},
};

double angle_in(double deg, bool broadside) { return broadside ? to_endfire_deg(deg) : deg; }

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

SourceSet parse_sources(const Json& j, bool broadside, double* spread_db) {
  SourceSet s;
  s.soi_doa_deg = angle_in(j.at("soi_doa_deg").get<double>(), broadside);
  s.soi_power = get_or(j, "soi_power", 1.0);
  if (j.contains("snr_db") && j.contains("noise_power")) {
    throw ConfigError("sources: give either snr_db or noise_power, not both");
  }
  if (j.contains("snr_db")) {
    s.noise_power = s.soi_power / std::pow(10.0, j.at("snr_db").get<double>() / 10.0);
  } else {
    s.noise_power = get_or(j, "noise_power", 1.0);
  }
  if (j.contains("interferers")) {
    for (const auto& it : j.at("interferers")) {
      s.interferer_doas_deg.push_back(angle_in(it.at("doa_deg").get<double>(), broadside));
      s.interferer_powers.push_back(get_or(it, "power", 1.0));
    }
  }
  *spread_db = get_or(j, "interferer_power_spread_db", 0.0);
  return s;
}

Json sources_to_json(const SourceSet& s, double spread_db) {
  Json j;
  j["soi_doa_deg"] = s.soi_doa_deg;
  j["soi_power"] = s.soi_power;
  j["noise_power"] = s.noise_power;
  j["interferers"] = Json::array();
  for (std::size_t i = 0; i < s.interferer_doas_deg.size(); ++i) {
    j["interferers"].push_back({{"doa_deg", s.interferer_doas_deg[i]},
                                {"power", s.interferer_powers[i]}});
  }
  j["interferer_power_spread_db"] = spread_db;
  return j;
}

FullRankInit parse_init(const std::string& name) {
  if (name == "first_sensor") return FullRankInit::first_sensor;
  if (name == "quiescent") return FullRankInit::quiescent;
  throw ConfigError("unknown full-rank init '" + name + "' (first_sensor | quiescent)");
}

AlgorithmSpec parse_algorithm(const Json& j) {
  AlgorithmSpec a;
  a.kind = parse_kind(j.at("kind").get<std::string>());
  a.label = get_or(j, "label", std::string(kind_name(a.kind)));
  a.mu = get_or(j, "mu", a.mu);
  if (j.contains("init")) a.init = parse_init(j.at("init").get<std::string>());
  a.alpha = get_or(j, "alpha", a.alpha);
  a.delta = get_or(j, "delta", a.delta);
  a.eps2 = get_or(j, "eps2", a.eps2);

  RjioHyperParams& hp = a.rjio;
  hp.rank = get_or(j, "rank", hp.rank);
  a.auto_mu_s = !j.contains("mu_s");
  a.auto_mu_w = !j.contains("mu_w");
  a.auto_eps0 = !j.contains("eps0");
  hp.mu_s = get_or(j, "mu_s", hp.mu_s);
  hp.mu_w = get_or(j, "mu_w", hp.mu_w);
  hp.mu_eps = get_or(j, "mu_eps", hp.mu_eps);
  hp.alpha = get_or(j, "alpha", hp.alpha);
  hp.delta = get_or(j, "delta", hp.delta);
  hp.delta_bar = get_or(j, "delta_bar", hp.delta_bar);
  hp.eps0 = get_or(j, "eps0", hp.eps0);
  if (j.contains("rank_adapt")) {
    const auto& ra = j.at("rank_adapt");
    RankAdaptConfig cfg;
    cfg.d_min = get_or(ra, "d_min", cfg.d_min);
    cfg.d_max = get_or(ra, "d_max", cfg.d_max);
    cfg.alpha = get_or(ra, "alpha", cfg.alpha);
    a.rank_adapt = cfg;
  }
  return a;
}

Json algorithm_to_json(const AlgorithmSpec& a) {
  Json j;
  j["label"] = a.label;
  j["kind"] = std::string(kind_name(a.kind));
  switch (a.kind) {
    case AlgorithmKind::optimal:
      break;
    case AlgorithmKind::loaded_lcmv:
      j["eps2"] = a.eps2;
      break;
    case AlgorithmKind::lcmv_sg:
      j["mu"] = a.mu;
      j["init"] = a.init == FullRankInit::quiescent ? "quiescent" : "first_sensor";
      break;
    case AlgorithmKind::lcmv_rls:
      j["alpha"] = a.alpha;
      j["delta"] = a.delta;
      break;
    case AlgorithmKind::rjio_sg:
    case AlgorithmKind::rjio_rls:
      j["rank"] = a.rjio.rank;
      if (!a.auto_mu_s) j["mu_s"] = a.rjio.mu_s;
      if (!a.auto_mu_w) j["mu_w"] = a.rjio.mu_w;
      j["mu_eps"] = a.rjio.mu_eps;
      if (!a.auto_eps0) j["eps0"] = a.rjio.eps0;
      if (a.kind == AlgorithmKind::rjio_rls) {
        j["alpha"] = a.rjio.alpha;
        j["delta"] = a.rjio.delta;
        j["delta_bar"] = a.rjio.delta_bar;
      }
      if (a.rank_adapt) {
        j["rank_adapt"] = {{"d_min", a.rank_adapt->d_min},
                           {"d_max", a.rank_adapt->d_max},
                           {"alpha", a.rank_adapt->alpha}};
      }
      break;
  }
  return j;
}

}  // namespace

std::string_view kind_name(AlgorithmKind kind) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == kind) return kn.name;
  }
  return "?";
}

AlgorithmKind parse_kind(std::string_view name) {
  for (const auto& kn : kKindNames) {
    if (kn.name == name) return kn.kind;
  }
  throw ConfigError("unknown algorithm kind '" + std::string(name) + "'");
}

void Scenario::validate() const {
  geometry.validate();
  sources.validate(geometry);
  if (!(sources.noise_power > 0.0)) {
    throw ConfigError("scenario: noise power must be positive");
  }
  mismatch.validate();
  if (num_snapshots < 1 || num_trials < 1) {
    throw ConfigError("scenario: need at least one snapshot and one trial");
  }
  if (!(interferer_power_spread_db >= 0.0)) {
    throw ConfigError("scenario: interferer power spread must be >= 0 dB");
  }
  int last = 0;
  for (const auto& ev : change_events) {
    if (ev.snapshot < 1 || ev.snapshot > num_snapshots) {
      throw ConfigError("scenario: change event index " + std::to_string(ev.snapshot) +
                        " outside [1, " + std::to_string(num_snapshots) + "]");
    }
    if (ev.snapshot <= last) {
      throw ConfigError("scenario: change events must be strictly increasing in snapshot index");
    }
    last = ev.snapshot;
    if (ev.sources.soi_doa_deg != sources.soi_doa_deg) {
      throw ConfigError("scenario: change events may not move the SoI");
    }
    ev.sources.validate(geometry);
    if (!(ev.sources.noise_power > 0.0)) {
      throw ConfigError("scenario: change event noise power must be positive");
    }
  }
  if (algorithms.empty()) {
    throw ConfigError("scenario: no algorithms configured");
  }
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    const auto& a = algorithms[i];
    for (std::size_t k = 0; k < i; ++k) {
      if (algorithms[k].label == a.label) {
        throw ConfigError("scenario: duplicate algorithm label '" + a.label + "'");
      }
    }
    switch (a.kind) {
      case AlgorithmKind::lcmv_sg:
        if (!(a.mu > 0.0)) throw ConfigError(a.label + ": mu must be positive");
        break;
      case AlgorithmKind::lcmv_rls:
        if (!(a.alpha > 0.0 && a.alpha <= 1.0) || !(a.delta > 0.0)) {
          throw ConfigError(a.label + ": need 0 < alpha <= 1 and delta > 0");
        }
        break;
      case AlgorithmKind::loaded_lcmv:
        if (!(a.eps2 >= 0.0)) throw ConfigError(a.label + ": eps2 must be >= 0");
        break;
      case AlgorithmKind::rjio_sg:
      case AlgorithmKind::rjio_rls:
        if (a.rank_adapt) {
          a.rank_adapt->validate(geometry.num_sensors);
          RjioHyperParams hp = a.rjio;
          hp.rank = a.rank_adapt->d_max;
          hp.validate(geometry.num_sensors);
        } else {
          a.rjio.validate(geometry.num_sensors);
        }
        break;
      case AlgorithmKind::optimal:
        break;
    }
  }
}

const AlgorithmSpec& Scenario::algorithm(std::string_view label) const {
  for (const auto& a : algorithms) {
    if (a.label == label) return a;
  }
  throw ConfigError("scenario has no algorithm labelled '" + std::string(label) + "'");
}

AlgorithmSpec& Scenario::algorithm(std::string_view label) {
  return const_cast<AlgorithmSpec&>(std::as_const(*this).algorithm(label));
}

Scenario parse_scenario(std::string_view json_text) {
  try {
    const Json j = Json::parse(json_text);
    Scenario s;
    s.name = get_or(j, "name", std::string("unnamed"));
    s.description = get_or(j, "description", std::string());
    const std::string ref = get_or(j, "angle_reference", std::string("endfire"));
    if (ref != "endfire" && ref != "broadside") {
      throw ConfigError("angle_reference must be 'endfire' or 'broadside'");
    }
    const bool broadside = ref == "broadside";
    const auto& arr = j.at("array");
    s.geometry.num_sensors = arr.at("num_sensors").get<int>();
    s.geometry.spacing_ratio = get_or(arr, "spacing_ratio", 0.5);
    s.sources = parse_sources(j.at("sources"), broadside, &s.interferer_power_spread_db);
    if (j.contains("mismatch")) {
      const auto& mm = j.at("mismatch");
      const std::string kind = get_or(mm, "kind", std::string("none"));
      if (kind == "none") {
        s.mismatch.kind = MismatchModel::Kind::none;
      } else if (kind == "coherent_scattering") {
        s.mismatch.kind = MismatchModel::Kind::coherent_scattering;
      } else {
        throw ConfigError("unknown mismatch kind '" + kind + "'");
      }
      s.mismatch.num_paths = get_or(mm, "num_paths", s.mismatch.num_paths);
      s.mismatch.doa_stddev_deg = get_or(mm, "doa_stddev_deg", s.mismatch.doa_stddev_deg);
      s.mismatch.rng_seed = get_or(mm, "seed", s.mismatch.rng_seed);
    }
    s.num_snapshots = j.at("num_snapshots").get<int>();
    s.num_trials = get_or(j, "num_trials", 1);
    s.master_seed = get_or(j, "master_seed", std::uint64_t{1});
    if (j.contains("change_events")) {
      for (const auto& ev : j.at("change_events")) {
        ChangeEvent ce;
        ce.snapshot = ev.at("snapshot").get<int>();
        ce.sources = parse_sources(ev.at("sources"), broadside, &ce.interferer_power_spread_db);
        s.change_events.push_back(std::move(ce));
      }
    }
    for (const auto& a : j.at("algorithms")) {
      s.algorithms.push_back(parse_algorithm(a));
    }
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid scenario JSON: ") + e.what());
  }
}

std::string scenario_to_json(const Scenario& s) {
  Json j;
  j["name"] = s.name;
  j["description"] = s.description;
  j["angle_reference"] = "endfire";
  j["array"] = {{"num_sensors", s.geometry.num_sensors},
                {"spacing_ratio", s.geometry.spacing_ratio}};
  j["sources"] = sources_to_json(s.sources, s.interferer_power_spread_db);
  j["mismatch"] = {
      {"kind", s.mismatch.kind == MismatchModel::Kind::none ? "none" : "coherent_scattering"},
      {"num_paths", s.mismatch.num_paths},
      {"doa_stddev_deg", s.mismatch.doa_stddev_deg},
      {"seed", s.mismatch.rng_seed}};
  j["num_snapshots"] = s.num_snapshots;
  j["num_trials"] = s.num_trials;
  j["master_seed"] = s.master_seed;
  j["change_events"] = Json::array();
  for (const auto& ev : s.change_events) {
    j["change_events"].push_back(
        {{"snapshot", ev.snapshot},
         {"sources", sources_to_json(ev.sources, ev.interferer_power_spread_db)}});
  }
  j["algorithms"] = Json::array();
  for (const auto& a : s.algorithms) {
    j["algorithms"].push_back(algorithm_to_json(a));
  }
  return j.dump(2);
}

Scenario load_scenario(const std::string& name_or_path) {
  for (const auto& b : builtin_scenarios()) {
    if (name_or_path == b.name) {
      return parse_scenario(b.json);
    }
  }
  std::ifstream in(name_or_path);
  if (!in) {
    throw ConfigError("no builtin scenario or readable file named '" + name_or_path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

std::string scenario_hash(const Scenario& scenario) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : scenario_to_json(scenario)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void set_parameter(AlgorithmSpec& a, std::string_view name, double value) {
  auto ensure_rank_adapt = [&]() -> RankAdaptConfig& {
    if (!a.rank_adapt) a.rank_adapt = RankAdaptConfig{};
    return *a.rank_adapt;
  };
  if (name == "mu") {
    a.mu = value;
  } else if (name == "alpha") {
    a.alpha = value;
    a.rjio.alpha = value;
  } else if (name == "delta") {
    a.delta = value;
    a.rjio.delta = value;
  } else if (name == "eps2") {
    a.eps2 = value;
  } else if (name == "rank") {
    a.rjio.rank = static_cast<int>(std::lround(value));
  } else if (name == "mu_s") {
    a.rjio.mu_s = value;
    a.auto_mu_s = false;
  } else if (name == "mu_w") {
    a.rjio.mu_w = value;
    a.auto_mu_w = false;
  } else if (name == "mu_eps") {
    a.rjio.mu_eps = value;
  } else if (name == "delta_bar") {
    a.rjio.delta_bar = value;
  } else if (name == "eps0") {
    a.rjio.eps0 = value;
    a.auto_eps0 = false;
  } else if (name == "d_min") {
    ensure_rank_adapt().d_min = static_cast<int>(std::lround(value));
  } else if (name == "d_max") {
    ensure_rank_adapt().d_max = static_cast<int>(std::lround(value));
  } else if (name == "rank_alpha") {
    ensure_rank_adapt().alpha = value;
  } else {
    throw ConfigError("unknown tunable parameter '" + std::string(name) + "'");
  }
}

double get_parameter(const AlgorithmSpec& a, std::string_view name) {
  if (name == "mu") return a.mu;
  if (name == "alpha") return a.is_rjio() ? a.rjio.alpha : a.alpha;
  if (name == "delta") return a.is_rjio() ? a.rjio.delta : a.delta;
  if (name == "eps2") return a.eps2;
  if (name == "rank") return a.rjio.rank;
  if (name == "mu_s") return a.rjio.mu_s;
  if (name == "mu_w") return a.rjio.mu_w;
  if (name == "mu_eps") return a.rjio.mu_eps;
  if (name == "delta_bar") return a.rjio.delta_bar;
  if (name == "eps0") return a.rjio.eps0;
  if (a.rank_adapt) {
    if (name == "d_min") return a.rank_adapt->d_min;
    if (name == "d_max") return a.rank_adapt->d_max;
    if (name == "rank_alpha") return a.rank_adapt->alpha;
  }
  throw ConfigError("unknown tunable parameter '" + std::string(name) + "'");
}

}  // namespace rrlcmv
