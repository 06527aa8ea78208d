#include <benchmark/benchmark.h>

#include "matchq/analytics.hpp"
#include "matchq/ctmc.hpp"
#include "matchq/sim.hpp"

namespace {

using namespace matchq;

void BM_StationarySideChain(benchmark::State& state) {
  const SideRates r{0.3, 0.3, 0.4};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto model = ctmc::build_side_selection(r, n);
    auto dist = ctmc::stationary(model);
    benchmark::DoNotOptimize(dist.probabilities.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_StationarySideChain)->RangeMultiplier(2)->Range(25, 200)->Complexity();

void BM_CentralTaggedMoments(benchmark::State& state) {
  const Rates2v2 r{0.5, 0.25};
  for (auto _ : state) {
    auto m = ctmc::central_tagged(r, ServiceOrder::LIFO,
                                  ctmc::CentralClass::AllPlayers);
    benchmark::DoNotOptimize(m.variance);
  }
}
BENCHMARK(BM_CentralTaggedMoments);

void BM_ZoneStatsClosedForm(benchmark::State& state) {
  const ZoneRates r{0.7, 0.2, 0.1};
  for (auto _ : state) {
    auto s = analytics::two_zone_stats(r);
    benchmark::DoNotOptimize(s.meanOverall);
  }
}
BENCHMARK(BM_ZoneStatsClosedForm);

void BM_SimulateKPlayer(benchmark::State& state) {
  const long long arrivals = state.range(0);
  for (auto _ : state) {
    sim::ExperimentConfig cfg{sim::KPlayerSim{4, 1.0}, arrivals, 1000, 7, 1, 1,
                              false};
    auto res = sim::simulate(cfg);
    benchmark::DoNotOptimize(res.classes.data());
  }
  state.SetItemsProcessed(state.iterations() * arrivals);
}
BENCHMARK(BM_SimulateKPlayer)->Arg(100000);

void BM_SimulateSideSelection(benchmark::State& state) {
  const long long arrivals = state.range(0);
  for (auto _ : state) {
    sim::ExperimentConfig cfg{sim::SideSim{{0.3, 0.3, 0.4}}, arrivals, 1000, 7,
                              1, 1, false};
    auto res = sim::simulate(cfg);
    benchmark::DoNotOptimize(res.classes.data());
  }
  state.SetItemsProcessed(state.iterations() * arrivals);
}
BENCHMARK(BM_SimulateSideSelection)->Arg(100000);

void BM_PackedInterarrivals(benchmark::State& state) {
  const long long n = state.range(0);
  for (auto _ : state) {
    auto samples = sim::packed_interarrival_samples({0.5, 0.25}, n, 7);
    benchmark::DoNotOptimize(samples.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_PackedInterarrivals)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
