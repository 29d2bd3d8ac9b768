// Serial reference vs OpenMP kernel timings. Pair entries share arguments, so
// the ratio of their times is the parallel speedup at the current thread count.

#include <benchmark/benchmark.h>

#include <bit>
#include <numeric>
#include <vector>

#include "ccsub/instances.hpp"
#include "ccsub/kernels.hpp"
#include "ccsub/oracle.hpp"
#include "support.hpp"

using namespace ccsub;

namespace {

const Graph& pa_graph() {
  static const Graph g = ccsub::testing::preferential_attachment(4039, 22, 2023);
  return g;
}

const InfluenceOracle& influence() {
  static const InfluenceOracle f = build_live_edge_samples(pa_graph(), 0.05, 50, 0);
  return f;
}

template <auto Kernel>
void violations(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const Instance inst = build_random_instance(n, static_cast<double>(n) * 0.9, 0.01, 1);
  std::vector<ElementId> ids(n);
  std::iota(ids.begin(), ids.end(), ElementId{0});
  std::vector<double> deltas(n);
  for (std::size_t i = 0; i < n; ++i) deltas[i] = inst[static_cast<ElementId>(i)].delta;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(ids, deltas, static_cast<double>(n) * 0.9, 100000, 7));
  }
}

template <auto Kernel>
void live_edges(benchmark::State& state) {
  const auto arcs = symmetrized_arcs(pa_graph());
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(pa_graph().node_count(), arcs, 0.05, 50, 0));
  }
}

template <auto Kernel>
void reach(benchmark::State& state) {
  std::vector<NodeId> seeds;
  for (NodeId v = 0; v < 4039; v += 97) seeds.push_back(v);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(influence().samples(), seeds));
}

template <auto Kernel>
void gains(benchmark::State& state) {
  const Graph g = ccsub::testing::erdos_renyi(3000, 0.01, 5);
  const CoverageOracle f(g);
  auto cursor = f.cursor();
  for (std::uint32_t v = 0; v < 3000; v += 101) cursor->add(v);
  std::vector<std::uint32_t> all(3000);
  std::iota(all.begin(), all.end(), 0u);
  std::vector<double> out(all.size());
  for (auto _ : state) {
    Kernel(*cursor, all, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <auto Kernel>
void subsets(benchmark::State& state) {
  const unsigned bits = static_cast<unsigned>(state.range(0));
  const Graph g = ccsub::testing::erdos_renyi(bits, 0.3, 3);
  const CoverageOracle f(g);
  const MaskPredicate fits = [](std::uint64_t m) { return std::popcount(m) <= 6; };
  const MaskScore score = [&f, bits](std::uint64_t m) {
    std::vector<std::uint32_t> members;
    for (unsigned b = 0; b < bits; ++b) {
      if (m >> b & 1) members.push_back(b);
    }
    return f.eval(members);
  };
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(bits, fits, score, std::nullopt));
}

// Singleton spreads: one cursor gain per node vs the condensation pass.
void singletons_by_sweep(benchmark::State& state) {
  auto cursor = influence().cursor();
  std::vector<std::uint32_t> all(4039);
  std::iota(all.begin(), all.end(), 0u);
  std::vector<double> out(all.size());
  for (auto _ : state) {
    kernels::sweep_gains(*cursor, all, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void singletons_by_condensation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(singleton_reach_counts(influence().samples()));
}

}  // namespace

BENCHMARK(violations<kernels::count_violations_serial>)->Name("count_violations/serial")->Arg(100)->Arg(1000);
BENCHMARK(violations<kernels::count_violations>)->Name("count_violations/omp")->Arg(100)->Arg(1000);
BENCHMARK(live_edges<kernels::sample_live_edges_serial>)->Name("sample_live_edges/serial");
BENCHMARK(live_edges<kernels::sample_live_edges>)->Name("sample_live_edges/omp");
BENCHMARK(reach<kernels::reach_count_serial>)->Name("reach_count/serial");
BENCHMARK(reach<kernels::reach_count>)->Name("reach_count/omp");
BENCHMARK(gains<kernels::sweep_gains_serial>)->Name("sweep_gains/serial");
BENCHMARK(gains<kernels::sweep_gains>)->Name("sweep_gains/omp");
BENCHMARK(subsets<kernels::best_subset_serial>)->Name("best_subset/serial")->Arg(16)->Arg(20);
BENCHMARK(subsets<kernels::best_subset>)->Name("best_subset/omp")->Arg(16)->Arg(20);
BENCHMARK(singletons_by_sweep)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK(singletons_by_condensation)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
