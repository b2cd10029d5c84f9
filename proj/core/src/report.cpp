#include "rrlcmv/report.hpp"

#include <iomanip>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace rrlcmv {

namespace {

using Json = nlohmann::ordered_json;

class PrecisionGuard {
 public:
  explicit PrecisionGuard(std::ostream& out)
      : out_(out), precision_(out.precision()), flags_(out.flags()) {
    out_ << std::setprecision(std::numeric_limits<double>::max_digits10);
  }
  ~PrecisionGuard() {
    out_.precision(precision_);
    out_.flags(flags_);
  }

 private:
  std::ostream& out_;
  std::streamsize precision_;
  std::ios_base::fmtflags flags_;
};

const char* domain_name(AveragingDomain d) { return d == AveragingDomain::db ? "db" : "linear"; }

}  // namespace

void write_trace_csv(std::ostream& out, const RunResult& run) {
  PrecisionGuard guard(out);
  bool any_rank = false;
  for (const auto& t : run.traces) any_rank = any_rank || !t.mean_selected_rank.empty();
  out << "snapshot,algorithm,mean_sinr_db";
  if (any_rank) out << ",selected_rank";
  out << '\n';
  for (int i = 0; i < run.num_snapshots; ++i) {
    for (const auto& t : run.traces) {
      out << i + 1 << ',' << t.label << ',';
      if (t.mean_sinr_db.empty()) {
        out << "nan";
      } else {
        out << t.mean_sinr_db[static_cast<std::size_t>(i)];
      }
      if (any_rank) {
        out << ',';
        if (!t.mean_selected_rank.empty()) out << t.mean_selected_rank[static_cast<std::size_t>(i)];
      }
      out << '\n';
    }
  }
}

std::string run_manifest_json(const RunResult& run) {
  Json j;
  j["scenario"] = run.scenario_name;
  j["master_seed"] = run.master_seed;
  j["config_hash"] = run.config_hash;
  j["num_trials"] = run.num_trials;
  j["num_snapshots"] = run.num_snapshots;
  j["avg_domain"] = domain_name(run.domain);
  j["wall_seconds"] = run.wall_seconds;
  j["divergence_exceeded"] = run.divergence_exceeded;
  Json algs = Json::array();
  for (const auto& t : run.traces) {
    algs.push_back({{"label", t.label},
                    {"trials_used", t.trials_used},
                    {"divergent_trials", t.divergent_trials},
                    {"rejected_steps", t.rejected_steps}});
  }
  j["algorithms"] = std::move(algs);
  return j.dump(2);
}

void write_sweep_csv(std::ostream& out, const std::vector<RankSweepRow>& rows) {
  PrecisionGuard guard(out);
  out << "rank,algorithm,final_sinr_db,divergent_trials,wall_seconds\n";
  for (const auto& r : rows) {
    out << r.rank << ',' << r.label << ',' << r.final_sinr_db << ',' << r.divergent_trials << ','
        << r.wall_seconds << '\n';
  }
}

std::string grid_results_json(const std::vector<GridResult>& results) {
  Json j = Json::array();
  for (const auto& gr : results) {
    Json entry;
    entry["algorithm"] = gr.label;
    Json cands = Json::array();
    for (const auto& c : gr.candidates) {
      Json params = Json::object();
      for (const auto& [name, value] : c.params) params[name] = value;
      Json cj;
      cj["params"] = std::move(params);
      if (std::isfinite(c.score_db)) {
        cj["score_db"] = c.score_db;
      } else {
        cj["score_db"] = nullptr;
      }
      cj["divergent"] = c.divergent;
      cands.push_back(std::move(cj));
    }
    if (gr.best) {
      entry["best"] = cands[*gr.best]["params"];
      entry["best_score_db"] = gr.candidates[*gr.best].score_db;
    } else {
      entry["best"] = nullptr;
    }
    entry["candidates"] = std::move(cands);
    j.push_back(std::move(entry));
  }
  return j.dump(2);
}

void write_complexity_csv(std::ostream& out, const ComplexityReport& report) {
  out << "algorithm,additions,multiplications\n";
  for (const auto& row : report) {
    out << row.algorithm << ',' << row.counts.additions << ',' << row.counts.multiplications
        << '\n';
  }
}

}  // namespace rrlcmv
