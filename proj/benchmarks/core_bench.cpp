#include <benchmark/benchmark.h>

#include "diqss/heralding/loading.hpp"
#include "diqss/keyrate/eve_solver.hpp"
#include "diqss/keyrate/keyrate.hpp"
#include "diqss/mc/simulate.hpp"
#include "diqss/quantum/ghz.hpp"

namespace {

diqss::heralding::ChannelParams bench_channel(int n_max) {
  diqss::heralding::ChannelParams ch;
  ch.distance_km = 50.0;
  ch.memory_efficiency = 0.8;
  ch.max_storage_intervals = n_max;
  return ch;
}

void BM_PLoaded(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(diqss::heralding::p_loaded(n, 0.03, 0.8));
  }
}
BENCHMARK(BM_PLoaded)->Arg(3)->Arg(20)->Arg(100);

void BM_LoadingStats(benchmark::State& state) {
  const auto ch = bench_channel(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(diqss::heralding::loading_stats(ch).efficiency);
  }
}
BENCHMARK(BM_LoadingStats)->Arg(3)->Arg(10);

void BM_EntanglementSwap(benchmark::State& state) {
  const auto input = diqss::quantum::loaded_pairs_state();
  for (auto _ : state) {
    benchmark::DoNotOptimize(diqss::quantum::entanglement_swap(input, {3, 4, 5}));
  }
}
BENCHMARK(BM_EntanglementSwap);

void BM_EveSolver(benchmark::State& state) {
  const double lambda = state.range(1) == 0 ? 0.5 : 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(diqss::keyrate::eve_correlation_bound(
        2.4, lambda, diqss::keyrate::Sense::min, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_EveSolver)->Args({32, 0})->Args({64, 0})->Args({32, 1})->Args({64, 1});

void BM_KeyratePoint(benchmark::State& state) {
  const auto ch = bench_channel(3);
  const diqss::quantum::NoiseParams noise{0.98, 0.9702};
  for (auto _ : state) {
    benchmark::DoNotOptimize(diqss::keyrate::evaluate_keyrate(ch, noise, {}).e_c);
  }
}
BENCHMARK(BM_KeyratePoint);

void BM_SimulateLoading(benchmark::State& state) {
  diqss::mc::SimConfig cfg;
  cfg.channel = bench_channel(3);
  cfg.noise = {0.98, 0.9702};
  cfg.trials = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(diqss::mc::simulate_loading(cfg).loading_efficiency);
  }
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}
BENCHMARK(BM_SimulateLoading)->Arg(100000);

void BM_SimulateRounds(benchmark::State& state) {
  diqss::mc::SimConfig cfg;
  cfg.channel = bench_channel(3);
  cfg.noise = {0.98, 0.9702};
  cfg.trials = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(diqss::mc::simulate_rounds(cfg).chsh);
  }
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}
BENCHMARK(BM_SimulateRounds)->Arg(500000);

}  // namespace

BENCHMARK_MAIN();
