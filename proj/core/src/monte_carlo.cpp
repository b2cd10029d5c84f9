#include "rrlcmv/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include "rrlcmv/errors.hpp"
#include "rrlcmv/sinr.hpp"

namespace rrlcmv {

namespace {

constexpr std::uint64_t kMismatchStream = 1;
constexpr std::uint64_t kSnapshotStream = 2;
constexpr std::uint64_t kPowerStream = 3;

struct Segment {
  int start = 1;  // 1-based first snapshot
  SourceSet sources;
  std::unique_ptr<SnapshotGenerator> generator;
  TrueCovariances cov;
  ComplexVector soi_steering;
};

SourceSet draw_powers(const SourceSet& nominal, double spread_db, Rng& rng) {
  SourceSet s = nominal;
  if (spread_db > 0.0) {
    std::normal_distribution<double> jitter(0.0, spread_db);
    for (double& p : s.interferer_powers) {
      const double d = jitter(rng);
      if (p > 0.0) p *= std::pow(10.0, d / 10.0);
    }
  }
  return s;
}

// Per-algorithm adaptive chain within a trial.
class Runner {
 public:
  virtual ~Runner() = default;
  virtual void step(const ComplexVector& r) = 0;
  virtual ComplexVector weights() const = 0;
  virtual void on_segment(const Segment&) {}
  virtual int selected_rank() const { return 0; }
  virtual std::uint64_t rejected_steps() const { return 0; }
};

class OptimalRunner final : public Runner {
 public:
  void step(const ComplexVector&) override {}
  ComplexVector weights() const override { return w_; }
  void on_segment(const Segment& seg) override {
    w_ = optimal_lcmv(seg.cov.r, seg.soi_steering).w;
  }

 private:
  ComplexVector w_;
};

class LoadedRunner final : public Runner {
 public:
  LoadedRunner(ComplexVector a_p, double eps2) : a_p_(std::move(a_p)), eps2_(eps2) {}
  void step(const ComplexVector&) override {}
  ComplexVector weights() const override { return w_; }
  void on_segment(const Segment& seg) override { w_ = loaded_lcmv(seg.cov.r, a_p_, eps2_).w; }

 private:
  ComplexVector a_p_;
  double eps2_;
  ComplexVector w_;
};

class LcmvSgRunner final : public Runner {
 public:
  LcmvSgRunner(const ComplexVector& a_p, FullRankInit init, double mu)
      : state_(init_full_rank(a_p, init)), mu_(mu) {}
  void step(const ComplexVector& r) override { state_ = lcmv_sg_step(state_, r, mu_); }
  ComplexVector weights() const override { return state_.w; }

 private:
  FullRankBeamformer state_;
  double mu_;
};

class LcmvRlsRunner final : public Runner {
 public:
  LcmvRlsRunner(const ComplexVector& a_p, FullRankInit init, double alpha, double delta)
      : state_(init_full_rank(a_p, init)),
        p_(delta * ComplexMatrix::Identity(a_p.size(), a_p.size())),
        alpha_(alpha) {}
  void step(const ComplexVector& r) override {
    LcmvRlsUpdate u = lcmv_rls_step(state_, p_, r, alpha_);
    state_ = std::move(u.beamformer);
    p_ = std::move(u.p);
  }
  ComplexVector weights() const override { return state_.w; }

 private:
  FullRankBeamformer state_;
  ComplexMatrix p_;
  double alpha_;
};

class RjioRunner final : public Runner {
 public:
  RjioRunner(const ComplexVector& a_p, const RjioHyperParams& hp, RjioStepper stepper)
      : state_(rjio_init(static_cast<int>(a_p.size()), hp, a_p)), hp_(hp), stepper_(stepper) {}
  void step(const ComplexVector& r) override { state_ = stepper_(state_, r, hp_); }
  ComplexVector weights() const override { return state_.effective_weights(); }
  int selected_rank() const override { return state_.rank(); }
  std::uint64_t rejected_steps() const override { return state_.rejected_steps; }

 private:
  RjioState state_;
  RjioHyperParams hp_;
  RjioStepper stepper_;
};

class RankAdaptRunner final : public Runner {
 public:
  RankAdaptRunner(const ComplexVector& a_p, const RjioHyperParams& hp,
                  const RankAdaptConfig& cfg, RjioStepper stepper)
      : state_(rank_adapt_init(static_cast<int>(a_p.size()), hp, cfg, a_p)),
        hp_(hp),
        stepper_(stepper) {
    hp_.rank = cfg.d_max;
  }
  void step(const ComplexVector& r) override { state_ = adapt_step(state_, stepper_, hp_, r); }
  ComplexVector weights() const override { return emitted_weights(state_); }
  int selected_rank() const override { return state_.d_opt; }
  std::uint64_t rejected_steps() const override { return state_.extended.rejected_steps; }

 private:
  RankAdaptState state_;
  RjioHyperParams hp_;
  RjioStepper stepper_;
};

RjioHyperParams resolve_rjio(const AlgorithmSpec& spec, const ComplexVector& first_snapshot) {
  RjioHyperParams hp = spec.rjio;
  const double e = first_snapshot.squaredNorm() / static_cast<double>(first_snapshot.size());
  if (e > 0.0 && std::isfinite(e)) {
    if (spec.auto_mu_s) hp.mu_s = 1e-3 / e;
    if (spec.auto_mu_w) hp.mu_w = 1e-3 / e;
    if (spec.auto_eps0) hp.eps0 = 0.01 * e;
  }
  return hp;
}

std::unique_ptr<Runner> make_runner(const AlgorithmSpec& spec, const ComplexVector& a_p,
                                    const ComplexVector& first_snapshot) {
  switch (spec.kind) {
    case AlgorithmKind::optimal:
      return std::make_unique<OptimalRunner>();
    case AlgorithmKind::loaded_lcmv:
      return std::make_unique<LoadedRunner>(a_p, spec.eps2);
    case AlgorithmKind::lcmv_sg:
      return std::make_unique<LcmvSgRunner>(a_p, spec.init, spec.mu);
    case AlgorithmKind::lcmv_rls:
      return std::make_unique<LcmvRlsRunner>(a_p, spec.init, spec.alpha, spec.delta);
    case AlgorithmKind::rjio_sg:
    case AlgorithmKind::rjio_rls: {
      const RjioStepper stepper =
          spec.kind == AlgorithmKind::rjio_sg ? &rjio_sg_step : &rjio_rls_step;
      const RjioHyperParams hp = resolve_rjio(spec, first_snapshot);
      if (spec.rank_adapt) {
        return std::make_unique<RankAdaptRunner>(a_p, hp, *spec.rank_adapt, stepper);
      }
      return std::make_unique<RjioRunner>(a_p, hp, stepper);
    }
  }
  throw ConfigError("unhandled algorithm kind");
}

bool has_rank_trace(const AlgorithmSpec& spec) { return spec.is_rjio(); }

}  // namespace

TrialResult run_trial(const Scenario& scenario, std::uint64_t seed, std::uint64_t trial) {
  const ArrayGeometry& geom = scenario.geometry;
  Rng mismatch_rng = substream(seed, trial, kMismatchStream);
  Rng snapshot_rng = substream(seed, trial, kSnapshotStream);
  Rng power_rng = substream(seed, trial, kPowerStream);

  std::vector<Segment> segments;
  auto add_segment = [&](int start, const SourceSet& nominal, double spread_db) {
    Segment seg;
    seg.start = start;
    seg.sources = draw_powers(nominal, spread_db, power_rng);
    seg.generator = std::make_unique<SnapshotGenerator>(geom, seg.sources);
    seg.cov = true_covariances(geom, seg.sources);
    seg.soi_steering = steering_vector(geom, seg.sources.soi_doa_deg);
    segments.push_back(std::move(seg));
  };
  add_segment(1, scenario.sources, scenario.interferer_power_spread_db);
  for (const auto& ev : scenario.change_events) {
    add_segment(ev.snapshot, ev.sources, ev.interferer_power_spread_db);
  }

  const ComplexVector a_p =
      presumed_steering(geom, scenario.sources.soi_doa_deg, scenario.mismatch, mismatch_rng);

  const std::size_t num_algs = scenario.algorithms.size();
  const auto n = static_cast<std::size_t>(scenario.num_snapshots);
  TrialResult result;
  result.algorithms.resize(num_algs);
  for (std::size_t k = 0; k < num_algs; ++k) {
    result.algorithms[k].sinr_db.reserve(n);
    if (has_rank_trace(scenario.algorithms[k])) result.algorithms[k].selected_rank.reserve(n);
  }

  std::vector<std::unique_ptr<Runner>> runners(num_algs);
  std::size_t seg_index = 0;
  for (int i = 1; i <= scenario.num_snapshots; ++i) {
    bool new_segment = i == 1;
    while (seg_index + 1 < segments.size() && segments[seg_index + 1].start <= i) {
      ++seg_index;
      new_segment = true;
    }
    const Segment& seg = segments[seg_index];
    const ComplexVector r = (*seg.generator)(snapshot_rng);

    for (std::size_t k = 0; k < num_algs; ++k) {
      AlgorithmTrial& out = result.algorithms[k];
      if (out.divergent) continue;
      try {
        if (!runners[k]) runners[k] = make_runner(scenario.algorithms[k], a_p, r);
        if (new_segment) runners[k]->on_segment(seg);
        runners[k]->step(r);
        const double s = sinr_db(runners[k]->weights(), seg.cov.r_s, seg.cov.r_i);
        if (!std::isfinite(s)) throw NumericError("non-finite SINR");
        out.sinr_db.push_back(s);
        if (has_rank_trace(scenario.algorithms[k])) {
          out.selected_rank.push_back(runners[k]->selected_rank());
        }
      } catch (const ConfigError&) {
        throw;
      } catch (const Error&) {
        out.divergent = true;
        out.sinr_db.clear();
        out.selected_rank.clear();
      }
    }
  }
  for (std::size_t k = 0; k < num_algs; ++k) {
    if (runners[k]) result.algorithms[k].rejected_steps = runners[k]->rejected_steps();
  }
  return result;
}

double SinrTrace::tail_mean_db() const {
  if (mean_sinr_db.empty()) return std::nan("");
  const std::size_t n = mean_sinr_db.size();
  const std::size_t tail = std::max<std::size_t>(1, (n + 9) / 10);
  double sum = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) sum += mean_sinr_db[i];
  return sum / static_cast<double>(tail);
}

const SinrTrace& RunResult::trace(const std::string& label) const {
  for (const auto& t : traces) {
    if (t.label == label) return t;
  }
  throw ConfigError("run has no trace labelled '" + label + "'");
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  scenario.validate();
  const auto start = std::chrono::steady_clock::now();
  const int num_trials = options.trials.value_or(scenario.num_trials);
  if (num_trials < 1) throw ConfigError("need at least one trial");
  const std::uint64_t seed = options.seed.value_or(scenario.master_seed);

  std::vector<TrialResult> trials(static_cast<std::size_t>(num_trials));
  int workers = options.workers > 0 ? options.workers
                                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, num_trials);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const int t = next.fetch_add(1);
      if (t >= num_trials) return;
      try {
        trials[static_cast<std::size_t>(t)] =
            run_trial(scenario, seed, options.first_trial + static_cast<std::uint64_t>(t));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(num_trials);
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  RunResult result;
  result.scenario_name = scenario.name;
  result.config_hash = scenario_hash(scenario);
  result.master_seed = seed;
  result.num_trials = num_trials;
  result.num_snapshots = scenario.num_snapshots;
  result.domain = options.domain;

  const auto n = static_cast<std::size_t>(scenario.num_snapshots);
  for (std::size_t k = 0; k < scenario.algorithms.size(); ++k) {
    SinrTrace trace;
    trace.label = scenario.algorithms[k].label;
    const bool ranks = has_rank_trace(scenario.algorithms[k]);
    std::vector<double> sum(n, 0.0);
    std::vector<double> rank_sum(ranks ? n : 0, 0.0);
    for (const auto& trial : trials) {
      const AlgorithmTrial& a = trial.algorithms[k];
      trace.rejected_steps += a.rejected_steps;
      if (a.divergent) {
        ++trace.divergent_trials;
        continue;
      }
      ++trace.trials_used;
      for (std::size_t i = 0; i < n; ++i) {
        sum[i] += options.domain == AveragingDomain::db ? a.sinr_db[i]
                                                        : std::pow(10.0, a.sinr_db[i] / 10.0);
        if (ranks) rank_sum[i] += a.selected_rank[i];
      }
    }
    if (trace.trials_used > 0) {
      const double used = trace.trials_used;
      trace.mean_sinr_db.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double mean = sum[i] / used;
        trace.mean_sinr_db[i] =
            options.domain == AveragingDomain::db ? mean : 10.0 * std::log10(mean);
      }
      if (ranks) {
        trace.mean_selected_rank.resize(n);
        for (std::size_t i = 0; i < n; ++i) trace.mean_selected_rank[i] = rank_sum[i] / used;
      }
    }
    if (trace.divergent_trials > options.divergence_limit * num_trials) {
      result.divergence_exceeded = true;
    }
    result.traces.push_back(std::move(trace));
  }
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

int first_crossing(const std::vector<double>& trace, double level_db, int from_snapshot) {
  for (std::size_t i = static_cast<std::size_t>(std::max(from_snapshot, 1)) - 1; i < trace.size();
       ++i) {
    if (trace[i] >= level_db) return static_cast<int>(i) + 1;
  }
  return 0;
}

}  // namespace rrlcmv
