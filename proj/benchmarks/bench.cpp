#include <benchmark/benchmark.h>

#include "latfol/builtin_models.hpp"
#include "latfol/graph.hpp"
#include "latfol/groundstate.hpp"
#include "latfol/hull.hpp"
#include "latfol/model.hpp"

using namespace latfol;

namespace {

constexpr double kOmega = 0.6180339887498949;

SiteSet interval(int lo, int hi) {
  SiteSet w;
  for (int i = lo; i <= hi; ++i) w.insert(Site(i));
  return w;
}

const HullFunction& demo_hull() {
  static HullFunction h =
      solve_hull(demo_quasiperiodic_potential(0.01), kOmega, {}).h;
  return h;
}

void BM_WindowEnergy(benchmark::State& state) {
  InteractionSpec spec = fk_model(cosine_potential(0.1));
  LatticeConfiguration u = LatticeConfiguration::linear(kOmega);
  SiteSet w = interval(0, static_cast<int>(state.range(0)) - 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(window_energy(spec, u, w));
}
BENCHMARK(BM_WindowEnergy)->Arg(8)->Arg(32)->Arg(128);

void BM_Residual(benchmark::State& state) {
  InteractionSpec spec = long_range_pair_model(static_cast<int>(state.range(0)));
  LatticeConfiguration u = LatticeConfiguration::linear(kOmega);
  for (auto _ : state)
    benchmark::DoNotOptimize(residual(spec, u, Site(0)));
}
BENCHMARK(BM_Residual)->Arg(1)->Arg(4)->Arg(8);

void BM_MinimizeWindow(benchmark::State& state) {
  InteractionSpec spec = fk_model(cosine_potential(0.1));
  LatticeConfiguration u =
      LatticeConfiguration::linear(kOmega).overlay({{Site(0), 0.2}});
  SiteSet w = interval(-static_cast<int>(state.range(0)) / 2,
                       static_cast<int>(state.range(0)) / 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(minimize_window(spec, u, w));
}
BENCHMARK(BM_MinimizeWindow)->Arg(3)->Arg(7)->Arg(15);

void BM_ConnectedHull(benchmark::State& state) {
  InteractionSpec spec = long_range_pair_model(3);
  std::vector<LatticeConfiguration> probes{LatticeConfiguration::linear(0.3)};
  InteractionGraph g = build_graph(spec, probes, interval(-60, 60));
  SiteSet B{Site(-50), Site(0), Site(50)};
  for (auto _ : state)
    benchmark::DoNotOptimize(connected_hull(g, B));
}
BENCHMARK(BM_ConnectedHull);

void BM_HullResidualGrid(benchmark::State& state) {
  const HullFunction& h = demo_hull();
  TorusPotential v = demo_quasiperiodic_potential(0.01);
  for (auto _ : state)
    benchmark::DoNotOptimize(hull_residual_max(h, v, h.side()));
}
BENCHMARK(BM_HullResidualGrid);

void BM_SolveHull1D(benchmark::State& state) {
  TorusPotential v = cosine_potential(0.01);
  HullSolveParams p;
  p.n_trunc = static_cast<int>(state.range(0));
  p.tol = 1e-10;  // attainable at every benchmarked truncation order
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_hull(v, kOmega, p));
}
BENCHMARK(BM_SolveHull1D)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Translate(benchmark::State& state) {
  const HullFunction& h = demo_hull();
  double beta = 0.0;
  for (auto _ : state) {
    beta += 0.01;
    benchmark::DoNotOptimize(translate(h, beta));
  }
}
BENCHMARK(BM_Translate);

}  // namespace

BENCHMARK_MAIN();
