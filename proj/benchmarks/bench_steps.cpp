#include <benchmark/benchmark.h>

#include "rrlcmv/array_model.hpp"
#include "rrlcmv/lcmv.hpp"
#include "rrlcmv/rank_adapt.hpp"
#include "rrlcmv/rjio.hpp"

namespace {

using namespace rrlcmv;

struct Setup {
  ArrayGeometry geom;
  SourceSet sources;
  ComplexVector a;
  std::vector<ComplexVector> snapshots;

  explicit Setup(int m) : geom{m, 0.5} {
    sources.soi_doa_deg = 60.0;
    sources.interferer_doas_deg = {30.0, 100.0, 140.0};
    sources.interferer_powers = {1.0, 1.0, 1.0};
    sources.noise_power = 0.03;
    a = steering_vector(geom, sources.soi_doa_deg);
    SnapshotGenerator gen(geom, sources);
    Rng rng(7);
    for (int i = 0; i < 256; ++i) snapshots.push_back(gen(rng));
  }
};

RjioHyperParams hyper(int d) {
  RjioHyperParams hp;
  hp.rank = d;
  hp.mu_s = 1e-4;
  hp.mu_w = 1e-3;
  hp.eps0 = 0.1;
  return hp;
}

void BM_LcmvSg(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  FullRankBeamformer bf = init_full_rank(s.a, FullRankInit::quiescent);
  std::size_t i = 0;
  for (auto _ : state) {
    bf = lcmv_sg_step(bf, s.snapshots[i++ % s.snapshots.size()], 1e-4);
    benchmark::DoNotOptimize(bf.w.data());
  }
}

void BM_LcmvRls(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Setup s(m);
  FullRankBeamformer bf = init_full_rank(s.a, FullRankInit::quiescent);
  ComplexMatrix p = 100.0 * ComplexMatrix::Identity(m, m);
  std::size_t i = 0;
  for (auto _ : state) {
    LcmvRlsUpdate up = lcmv_rls_step(bf, p, s.snapshots[i++ % s.snapshots.size()], 0.998);
    bf = std::move(up.beamformer);
    p = std::move(up.p);
    benchmark::DoNotOptimize(bf.w.data());
  }
}

template <RjioStepper Step>
void BM_Rjio(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const Setup s(m);
  const RjioHyperParams hp = hyper(d);
  RjioState st = rjio_init(m, hp, s.a);
  std::size_t i = 0;
  for (auto _ : state) {
    st = Step(st, s.snapshots[i++ % s.snapshots.size()], hp);
    benchmark::DoNotOptimize(st.w_bar.data());
  }
}

void BM_RankAdaptSg(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Setup s(m);
  const RjioHyperParams hp = hyper(8);
  RankAdaptState st = rank_adapt_init(m, hp, {3, 8, 0.998}, s.a);
  std::size_t i = 0;
  for (auto _ : state) {
    st = adapt_step(st, &rjio_sg_step, hp, s.snapshots[i++ % s.snapshots.size()]);
    benchmark::DoNotOptimize(st.d_opt);
  }
}

void BM_OptimalLcmv(benchmark::State& state) {
  const Setup s(static_cast<int>(state.range(0)));
  const TrueCovariances cov = true_covariances(s.geom, s.sources);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimal_lcmv(cov.r, s.a).w.data());
  }
}

void sensor_sweep(benchmark::internal::Benchmark* b) {
  for (int m : {8, 16, 32, 64}) b->Arg(m);
}

void rank_sweep(benchmark::internal::Benchmark* b) {
  for (int m : {16, 32, 64}) {
    for (int d : {1, 4, 8}) b->Args({m, d});
  }
}

BENCHMARK(BM_LcmvSg)->Apply(sensor_sweep);
BENCHMARK(BM_LcmvRls)->Apply(sensor_sweep);
BENCHMARK(BM_Rjio<&rjio_sg_step>)->Name("BM_RjioSg")->Apply(rank_sweep);
BENCHMARK(BM_Rjio<&rjio_rls_step>)->Name("BM_RjioRls")->Apply(rank_sweep);
BENCHMARK(BM_RankAdaptSg)->Arg(24)->Arg(32);
BENCHMARK(BM_OptimalLcmv)->Apply(sensor_sweep);

}  // namespace

BENCHMARK_MAIN();
