#include <benchmark/benchmark.h>

#include "aanet/analysis.hpp"
#include "aanet/graph.hpp"
#include "aanet/routing.hpp"
#include "aanet/scenario.hpp"

namespace {

aanet::Scenario scenario_with(std::size_t relays) {
  aanet::SyntheticConfig cfg = aanet::reference_synthetic_config();
  cfg.n_intermediate = relays;
  cfg.seed = 7;
  return aanet::generate_synthetic(cfg);
}

void BM_BuildDigraph(benchmark::State& state) {
  const aanet::Scenario sc = scenario_with(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(aanet::build_digraph(sc.nodes, sc.params));
  }
  const auto n = static_cast<double>(sc.nodes.size());
  state.counters["pairs/s"] = benchmark::Counter(n * (n - 1), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_BuildDigraph)->RangeMultiplier(2)->Range(16, 1024)->Unit(benchmark::kMicrosecond);

void BM_ShortestPath(benchmark::State& state) {
  const aanet::Scenario sc = scenario_with(static_cast<std::size_t>(state.range(0)));
  const aanet::WeightedDigraph g = aanet::build_digraph(sc.nodes, sc.params);
  const auto s = g.index_of(sc.source_id);
  const auto d = g.index_of(sc.target_id);
  const aanet::SearchOptions options{state.range(1) != 0};
  aanet::SearchStats stats;
  for (auto _ : state) {
    benchmark::DoNotOptimize(aanet::shortest_path(g, s, d, options, &stats));
  }
  state.counters["edges"] = static_cast<double>(g.edge_count());
  state.counters["pruned"] = static_cast<double>(stats.pruned);
}
BENCHMARK(BM_ShortestPath)
    ->ArgsProduct({{16, 64, 256, 1024}, {0, 1}})
    ->ArgNames({"relays", "prune"})
    ->Unit(benchmark::kMicrosecond);

void BM_BruteForce(benchmark::State& state) {
  const aanet::Scenario sc = scenario_with(static_cast<std::size_t>(state.range(0)));
  const aanet::WeightedDigraph g = aanet::build_digraph(sc.nodes, sc.params);
  const auto s = g.index_of(sc.source_id);
  const auto d = g.index_of(sc.target_id);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aanet::brute_force_shortest(g, s, d));
  }
}
BENCHMARK(BM_BruteForce)->DenseRange(3, 9, 3)->Unit(benchmark::kMicrosecond);

void BM_SweepRealization(benchmark::State& state) {
  aanet::SweepOptions options;
  options.n_intermediate = {static_cast<std::size_t>(state.range(0))};
  options.realizations = 8;
  options.threads = 1;
  options.scheme1_min_hops = 6;
  const aanet::SyntheticConfig base = aanet::reference_synthetic_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(aanet::run_sweep(base, options));
  }
  state.SetItemsProcessed(state.iterations() * 8);
}
BENCHMARK(BM_SweepRealization)->Arg(0)->Arg(120)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
