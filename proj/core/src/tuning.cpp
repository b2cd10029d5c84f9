#include "rrlcmv/tuning.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

#include "rrlcmv/errors.hpp"
#include "rrlcmv/sinr.hpp"

namespace rrlcmv {

namespace {

using Json = nlohmann::ordered_json;

std::size_t product_size(const AlgorithmGrid& g) {
  std::size_t n = 1;
  for (const auto& axis : g.axes) n *= axis.values.size();
  return n;
}

void require_nonempty(const ParameterGrid& grid) {
  if (grid.empty()) throw ConfigError("grid search: empty grid");
  for (const auto& g : grid) {
    if (g.axes.empty()) throw ConfigError("grid search: no parameters for '" + g.label + "'");
    for (const auto& axis : g.axes) {
      if (axis.values.empty()) {
        throw ConfigError("grid search: no values for " + g.label + "." + axis.name);
      }
    }
  }
}

int parse_int(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("invalid rank '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

ParameterGrid parse_grid(std::string_view json_text) {
  ParameterGrid grid;
  try {
    const Json j = Json::parse(json_text);
    if (!j.is_object()) throw ConfigError("grid file must hold a JSON object");
    for (const auto& [label, params] : j.items()) {
      AlgorithmGrid g;
      g.label = label;
      for (const auto& [name, values] : params.items()) {
        ParameterAxis axis;
        axis.name = name;
        if (values.is_array()) {
          for (const auto& v : values) axis.values.push_back(v.get<double>());
        } else {
          axis.values.push_back(values.get<double>());
        }
        g.axes.push_back(std::move(axis));
      }
      grid.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid grid JSON: ") + e.what());
  }
  require_nonempty(grid);
  return grid;
}

std::vector<GridResult> grid_search(const Scenario& scenario, const ParameterGrid& grid,
                                    const RunOptions& options) {
  require_nonempty(grid);
  std::vector<GridResult> results;
  for (const auto& g : grid) {
    const AlgorithmSpec& base = scenario.algorithm(g.label);
    GridResult gr;
    gr.label = g.label;
    const std::size_t count = product_size(g);
    for (std::size_t c = 0; c < count; ++c) {
      Scenario single = scenario;
      single.algorithms = {base};
      AlgorithmSpec& spec = single.algorithms.front();
      Candidate cand;
      std::size_t rest = c;
      std::vector<std::size_t> idx(g.axes.size());
      for (std::size_t a = g.axes.size(); a-- > 0;) {
        idx[a] = rest % g.axes[a].values.size();
        rest /= g.axes[a].values.size();
      }
      for (std::size_t a = 0; a < g.axes.size(); ++a) {
        const double v = g.axes[a].values[idx[a]];
        set_parameter(spec, g.axes[a].name, v);
        cand.params.emplace_back(g.axes[a].name, v);
      }
      const RunResult run = run_scenario(single, options);
      const SinrTrace& t = run.traces.front();
      cand.divergent = t.divergent_trials > 0 || t.rejected_steps > 0 || t.trials_used == 0;
      cand.score_db = t.trials_used > 0 ? t.tail_mean_db() : -INFINITY;
      if (!cand.divergent && (!gr.best || cand.score_db > gr.candidates[*gr.best].score_db)) {
        gr.best = gr.candidates.size();
      }
      gr.candidates.push_back(std::move(cand));
    }
    results.push_back(std::move(gr));
  }
  return results;
}

Scenario apply_best(const Scenario& scenario, const std::vector<GridResult>& results) {
  Scenario out = scenario;
  for (const auto& gr : results) {
    if (!gr.best) continue;
    AlgorithmSpec& spec = out.algorithm(gr.label);
    for (const auto& [name, value] : gr.candidates[*gr.best].params) {
      set_parameter(spec, name, value);
    }
  }
  out.validate();
  return out;
}

std::vector<RankSweepRow> sweep_rank(const Scenario& scenario, const std::vector<int>& ranks,
                                     const RunOptions& options) {
  if (ranks.empty()) throw ConfigError("rank sweep: empty rank list");
  std::vector<AlgorithmSpec> swept;
  for (const auto& a : scenario.algorithms) {
    if (a.is_rjio() && !a.rank_adapt) swept.push_back(a);
  }
  if (swept.empty()) throw ConfigError("rank sweep: scenario has no fixed-rank RJIO algorithm");
  std::vector<RankSweepRow> rows;
  for (int d : ranks) {
    if (d < 1 || d > scenario.geometry.num_sensors) {
      throw ConfigError("rank sweep: rank " + std::to_string(d) + " outside [1, M]");
    }
    Scenario s = scenario;
    s.algorithms = swept;
    for (auto& a : s.algorithms) a.rjio.rank = d;
    const RunResult run = run_scenario(s, options);
    for (const auto& t : run.traces) {
      RankSweepRow row;
      row.rank = d;
      row.label = t.label;
      row.final_sinr_db = t.trials_used > 0 ? t.tail_mean_db() : std::nan("");
      row.divergent_trials = t.divergent_trials;
      row.wall_seconds = run.wall_seconds;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<int> parse_rank_list(std::string_view text) {
  std::vector<int> ranks;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      ranks.push_back(parse_int(item));
    } else {
      const int lo = parse_int(item.substr(0, dots));
      const int hi = parse_int(item.substr(dots + 2));
      if (hi < lo) throw ConfigError("invalid rank range '" + std::string(item) + "'");
      for (int d = lo; d <= hi; ++d) ranks.push_back(d);
    }
    pos = comma + 1;
  }
  return ranks;
}

LoadingChoice tune_loading(const ComplexMatrix& r, const ComplexVector& a_p,
                           const ComplexMatrix& r_s, const ComplexMatrix& r_i,
                           const std::vector<double>& grid) {
  if (grid.empty()) throw ConfigError("loading search: empty grid");
  std::optional<LoadingChoice> best;
  for (double eps2 : grid) {
    if (!(eps2 >= 0.0)) throw ConfigError("loading search: eps^2 must be >= 0");
    const double s = sinr_db(loaded_lcmv(r, a_p, eps2).w, r_s, r_i);
    if (!best || s > best->sinr_db) best = LoadingChoice{eps2, s};
  }
  return *best;
}

}  // namespace rrlcmv
