// Serial reference vs OpenMP kernels on generated instances.
#include <benchmark/benchmark.h>

#include "ccproof/instance.hpp"
#include "ccproof/optdag.hpp"
#include "ccproof/runner.hpp"
#include "ccproof/treeopt.hpp"

using namespace ccproof;

namespace {

ClosedInstance instance(std::size_t n, std::size_t depth, std::uint64_t seed) {
  return close_instance(gen_random_instance(n, depth, seed));
}

void treeopt_table(benchmark::State& state, PassSchedule schedule) {
  ClosedInstance c = instance(static_cast<std::size_t>(state.range(0)), kDefaultDepth, 42);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_tree_size_table(c.snap, schedule).passes);
  state.counters["C"] = static_cast<double>(c.snap.congruence_edges().size());
}

void BM_TreeOptSerial(benchmark::State& state) { treeopt_table(state, PassSchedule::Sequential); }
void BM_TreeOptParallel(benchmark::State& state) { treeopt_table(state, PassSchedule::Parallel); }

// Instance whose minimal DAG needs several axioms, so the search walks many subsets.
ClosedInstance dag_instance(std::size_t axiom_edges) {
  for (std::uint64_t seed = 1;; ++seed) {
    ClosedInstance c = instance(axiom_edges, 1, seed);
    if (c.snap.axiom_edges().size() != axiom_edges) continue;
    if (brute_min_dag(c.snap, c.s, c.t).size >= 3) return c;
  }
}

void BM_BruteDagSerial(benchmark::State& state) {
  ClosedInstance c = dag_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_min_dag(c.snap, c.s, c.t).size);
}

void BM_BruteDagParallel(benchmark::State& state) {
  ClosedInstance c = dag_instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_min_dag_parallel(c.snap, c.s, c.t).size);
}

void bench_rows(benchmark::State& state, int threads) {
  BenchOptions opts;
  opts.n_lo = 8;
  opts.n_hi = 12;
  opts.trials = 10;
  for (auto _ : state) {
    setenv("CCPROOF_THREADS", std::to_string(threads).c_str(), 1);
    benchmark::DoNotOptimize(run_bench(opts).violations);
  }
  unsetenv("CCPROOF_THREADS");
}

void BM_BenchSerial(benchmark::State& state) { bench_rows(state, 1); }
void BM_BenchParallel(benchmark::State& state) { bench_rows(state, 0); }

}  // namespace

BENCHMARK(BM_TreeOptSerial)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TreeOptParallel)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteDagSerial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteDagParallel)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BenchSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BenchParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
