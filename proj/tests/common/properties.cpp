#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "rrlcmv/array_model.hpp"
#include "rrlcmv/lcmv.hpp"
#include "rrlcmv/monte_carlo.hpp"
#include "rrlcmv/rank_adapt.hpp"
#include "rrlcmv/rjio.hpp"
#include "rrlcmv/sinr.hpp"

namespace props {

namespace {

using rrlcmv::Complex;
using rrlcmv::ComplexMatrix;
using rrlcmv::ComplexVector;

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

void record(Outcome& out, int index, double deviation, double bound, const char* what) {
  out.worst = std::max(out.worst, deviation);
  if (!(deviation <= bound)) {
    if (out.failures == 0) {
      std::ostringstream s;
      s << "case " << index << ": " << what << " deviation " << deviation << " > " << bound;
      out.first_failure = s.str();
    }
    ++out.failures;
  }
}

// A random ULA scenario with scattered presumed steering; returns a_p and a
// snapshot generator.
struct RandomArray {
  rrlcmv::ArrayGeometry geom;
  rrlcmv::SourceSet sources;
  ComplexVector a_p;
};

RandomArray random_array(std::mt19937_64& rng, int m_lo, int m_hi) {
  RandomArray ra;
  ra.geom.num_sensors = uniform_int(rng, m_lo, m_hi);
  ra.sources.soi_doa_deg = uniform(rng, 20.0, 160.0);
  const int k = uniform_int(rng, 0, std::min(3, ra.geom.num_sensors - 2));
  for (int i = 0; i < k; ++i) {
    ra.sources.interferer_doas_deg.push_back(uniform(rng, 0.0, 180.0));
    ra.sources.interferer_powers.push_back(uniform(rng, 0.1, 10.0));
  }
  ra.sources.noise_power = uniform(rng, 0.01, 1.0);
  rrlcmv::MismatchModel mm;
  mm.kind = rrlcmv::MismatchModel::Kind::coherent_scattering;
  ra.a_p = rrlcmv::presumed_steering(ra.geom, ra.sources.soi_doa_deg, mm, rng);
  return ra;
}

}  // namespace

Outcome constraint_feasibility(std::uint64_t seed, int cases) {
  Outcome out{"constraint feasibility", 0, 0, 0.0, {}};
  std::mt19937_64 rng(seed);
  constexpr double bound = rrlcmv::kConstraintTolerance;
  for (int c = 0; c < cases; ++c) {
    const int m = uniform_int(rng, 2, 16);
    const int d = uniform_int(rng, 1, m);
    const ComplexMatrix r = oracle::random_hpd(rng, m);
    const ComplexVector a = oracle::random_vector(rng, m);
    record(out, c, std::abs(rrlcmv::optimal_lcmv(r, a).constraint_residual()), bound, "optimal");
    record(out, c, std::abs(rrlcmv::loaded_lcmv(r, a, uniform(rng, 0.0, 5.0)).constraint_residual()),
           bound, "loaded");
    const ComplexMatrix s = oracle::random_matrix(rng, m, d);
    record(out, c,
           std::abs(rrlcmv::reduced_rank_lcmv(r, s, a, uniform(rng, 0.0, 1.0)).constraint_residual()),
           bound, "reduced-rank");

    // Adaptive chains on synthesized snapshots.
    const RandomArray ra = random_array(rng, std::max(2, d + 1), 16);
    const int ma = ra.geom.num_sensors;
    rrlcmv::SnapshotGenerator gen(ra.geom, ra.sources);
    auto sg = rrlcmv::init_full_rank(ra.a_p, rrlcmv::FullRankInit::first_sensor);
    rrlcmv::FullRankBeamformer rls = sg;
    ComplexMatrix p = 100.0 * ComplexMatrix::Identity(ma, ma);
    rrlcmv::RjioHyperParams hp;
    hp.rank = std::min(d, ma);
    hp.mu_s = 1e-4;
    hp.mu_w = 1e-3;
    hp.eps0 = uniform(rng, 0.0, 1.0);
    rrlcmv::RjioState js = rrlcmv::rjio_init(ma, hp, ra.a_p);
    rrlcmv::RjioState jr = js;
    for (int i = 0; i < 10; ++i) {
      const ComplexVector x = gen(rng);
      sg = rrlcmv::lcmv_sg_step(sg, x, 1e-3);
      record(out, c, std::abs(sg.constraint_residual()), bound, "lcmv-sg");
      auto u = rrlcmv::lcmv_rls_step(rls, p, x, 0.998);
      rls = u.beamformer;
      p = u.p;
      record(out, c, std::abs(rls.constraint_residual()), bound, "lcmv-rls");
      js = rrlcmv::rjio_sg_step(js, x, hp);
      jr = rrlcmv::rjio_rls_step(jr, x, hp);
      if (js.rejected_steps == 0) record(out, c, std::abs(js.constraint_residual()), bound, "rjio-sg");
      if (jr.rejected_steps == 0) record(out, c, std::abs(jr.constraint_residual()), bound, "rjio-rls");
    }
    if (js.rejected_steps + jr.rejected_steps > 0) {
      record(out, c, 1.0, 0.0, "rejected adaptive step");
    }
    ++out.cases;
  }
  return out;
}

Outcome determinism(std::uint64_t seed, int cases) {
  Outcome out{"determinism", 0, 0, 0.0, {}};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    const RandomArray ra = random_array(rng, 4, 8);
    rrlcmv::Scenario s;
    s.name = "det";
    s.geometry = ra.geom;
    s.sources = ra.sources;
    s.mismatch.kind = rrlcmv::MismatchModel::Kind::coherent_scattering;
    s.interferer_power_spread_db = 3.0;
    s.num_snapshots = 12;
    s.num_trials = 1;
    s.master_seed = rng();
    rrlcmv::AlgorithmSpec sg;
    sg.label = "sg";
    sg.kind = rrlcmv::AlgorithmKind::rjio_sg;
    sg.rjio.rank = std::min(2, ra.geom.num_sensors);
    sg.auto_mu_s = sg.auto_mu_w = sg.auto_eps0 = true;
    rrlcmv::AlgorithmSpec rls = sg;
    rls.label = "rls";
    rls.kind = rrlcmv::AlgorithmKind::rjio_rls;
    rrlcmv::AlgorithmSpec full;
    full.label = "lcmv";
    full.kind = rrlcmv::AlgorithmKind::lcmv_rls;
    s.algorithms = {sg, rls, full};
    const std::uint64_t trial = rng() % 1000;
    const auto first = rrlcmv::run_trial(s, s.master_seed, trial);
    const auto second = rrlcmv::run_trial(s, s.master_seed, trial);
    double dev = 0.0;
    for (std::size_t k = 0; k < first.algorithms.size(); ++k) {
      const auto& x = first.algorithms[k].sinr_db;
      const auto& y = second.algorithms[k].sinr_db;
      if (x.size() != y.size()) {
        dev = INFINITY;
        break;
      }
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != y[i]) dev = std::max(dev, std::abs(x[i] - y[i]) + 1e-300);
      }
    }
    record(out, c, dev, 0.0, "repeated trial");
    ++out.cases;
  }
  return out;
}

Outcome fixed_point_descent(std::uint64_t seed, int cases) {
  Outcome out{"fixed-point descent", 0, 0, 0.0, {}};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    const int m = uniform_int(rng, 2, 12);
    const int d = uniform_int(rng, 1, m);
    const ComplexMatrix r = oracle::random_hpd(rng, m);
    const ComplexVector a = oracle::random_vector(rng, m);
    const double eps2 = uniform(rng, 0.0, 0.5);
    const auto res = rrlcmv::rjio_fixed_point(r, a, d, eps2, 20, 0.0);
    double rise = 0.0;
    // Objective after each full alternation (every second entry).
    for (std::size_t i = 3; i < res.objective.size(); i += 2) {
      rise = std::max(rise, res.objective[i] - res.objective[i - 2]);
    }
    record(out, c, rise, 1e-10, "objective rise");
    ++out.cases;
  }
  return out;
}

Outcome rank_one_degeneracy(std::uint64_t seed, int cases) {
  Outcome out{"rank-one degeneracy", 0, 0, 0.0, {}};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    const RandomArray ra = random_array(rng, 2, 16);
    const int m = ra.geom.num_sensors;
    rrlcmv::RjioHyperParams hp;
    hp.rank = 1;
    hp.mu_s = 1e-4;
    hp.mu_w = 1e-3;
    rrlcmv::RjioState s = rrlcmv::rjio_init(m, hp, ra.a_p);
    s.s_d = oracle::random_matrix(rng, m, 1);
    s.w_bar = oracle::random_vector(rng, 1);
    rrlcmv::SnapshotGenerator gen(ra.geom, ra.sources);
    const bool use_rls = c % 2 == 1;
    for (int i = 0; i < 5; ++i) {
      const ComplexVector r = gen(rng);
      const ComplexVector weight = s.w_bar[0] * s.s_d.col(0);
      const Complex expected = oracle::dot(weight, r);
      const Complex got = rrlcmv::rjio_output(s, r);
      record(out, c, std::abs(got - expected) / std::max(1.0, std::abs(expected)), 1e-12,
             "rank-one output");
      s = use_rls ? rrlcmv::rjio_rls_step(s, r, hp) : rrlcmv::rjio_sg_step(s, r, hp);
    }
    ++out.cases;
  }
  return out;
}

Outcome rank_cost_equivalence(std::uint64_t seed, int cases) {
  Outcome out{"rank-cost recursion", 0, 0, 0.0, {}};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    const RandomArray ra = random_array(rng, 9, 16);
    const int m = ra.geom.num_sensors;
    rrlcmv::RankAdaptConfig cfg;
    cfg.d_min = uniform_int(rng, 1, 4);
    cfg.d_max = uniform_int(rng, cfg.d_min, std::min(8, m));
    cfg.alpha = uniform(rng, 0.9, 1.0);
    rrlcmv::RjioHyperParams hp;
    hp.mu_s = 1e-4;
    hp.mu_w = 1e-3;
    hp.eps0 = 0.1;
    rrlcmv::RankAdaptState st = rrlcmv::rank_adapt_init(m, hp, cfg, ra.a_p);
    rrlcmv::SnapshotGenerator gen(ra.geom, ra.sources);
    const rrlcmv::RjioStepper stepper = c % 2 == 0 ? &rrlcmv::rjio_sg_step : &rrlcmv::rjio_rls_step;
    std::vector<ComplexVector> history;
    for (int i = 0; i < 15; ++i) {
      const ComplexVector r = gen(rng);
      history.push_back(r);
      const rrlcmv::RjioState before = st.extended;
      st = rrlcmv::adapt_step(st, stepper, hp, r);
      for (int d = cfg.d_min; d <= cfg.d_max; ++d) {
        // Normalized leading-d truncation of the pre-step state.
        const ComplexVector raw = before.s_d.leftCols(d) * before.w_bar.head(d);
        const ComplexVector v = raw / oracle::dot(before.a_p, raw);
        double direct = 0.0;
        const auto n = history.size();
        for (std::size_t l = 0; l < n; ++l) {
          direct += std::pow(cfg.alpha, static_cast<double>(n - 1 - l)) *
                    std::norm(oracle::dot(v, history[l]));
        }
        const double got = st.cost(d);
        record(out, c, std::abs(got - direct) / std::max(direct, 1e-300), 1e-10, "rank cost");
      }
    }
    ++out.cases;
  }
  return out;
}

Outcome sinr_scale_invariance(std::uint64_t seed, int cases) {
  Outcome out{"SINR scale invariance", 0, 0, 0.0, {}};
  std::mt19937_64 rng(seed);
  for (int c = 0; c < cases; ++c) {
    const int m = uniform_int(rng, 2, 32);
    const ComplexMatrix r_i = oracle::random_hpd(rng, m, 0.05);
    const ComplexVector a = oracle::random_vector(rng, m);
    const ComplexMatrix r_s = a * a.adjoint();
    const ComplexVector w = oracle::random_vector(rng, m);
    const Complex scale = std::polar(std::pow(10.0, uniform(rng, -6.0, 6.0)),
                                     uniform(rng, 0.0, 6.283185307179586));
    const double base = rrlcmv::sinr_db(w, r_s, r_i);
    const double scaled = rrlcmv::sinr_db(ComplexVector(scale * w), r_s, r_i);
    record(out, c, std::abs(base - scaled), 1e-9, "scaled SINR");
    ++out.cases;
  }
  return out;
}

}  // namespace props
