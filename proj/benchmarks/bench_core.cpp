#include <benchmark/benchmark.h>

#include "clgen/edge_skip.hpp"
#include "clgen/partition.hpp"
#include "clgen/runtime.hpp"
#include "clgen/weights.hpp"

namespace {

using namespace clgen;

void BM_SkipLength(benchmark::State& state) {
  RngStream rng(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(skip_length(1e-3, rng.next_open01()));
  }
}
BENCHMARK(BM_SkipLength);

void BM_SerialGenerate(benchmark::State& state) {
  const auto ws = synth_powerlaw(state.range(0), 2.5, 5.0, 500.0, 7);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    EdgeCounter sink;
    serial_cl(ws, seed++, sink);
    benchmark::DoNotOptimize(sink.count());
  }
  state.SetItemsProcessed(state.iterations() * expected_total_edges(ws));
}
BENCHMARK(BM_SerialGenerate)->Arg(10000)->Arg(100000);

void BM_ParallelGenerate(benchmark::State& state) {
  const auto ws = synth_powerlaw(200000, 2.5, 5.0, 500.0, 7);
  GenConfig cfg;
  cfg.scheme = Scheme::ucp;
  cfg.procs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    cfg.seed++;
    const auto rep = generate(ws, cfg);
    benchmark::DoNotOptimize(rep.total_edges);
  }
}
BENCHMARK(BM_ParallelGenerate)->Arg(1)->Arg(2)->Arg(4);

void BM_PlanUcpOracle(benchmark::State& state) {
  const auto ws = synth_powerlaw(state.range(0), 2.5, 2.0, 500.0, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_ucp_oracle(ws, 64).boundaries.size());
  }
}
BENCHMARK(BM_PlanUcpOracle)->Arg(100000);

void BM_BlockedSum(benchmark::State& state) {
  const auto ws = synth_constant(state.range(0), 3.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(blocked_sum(ws.weights));
  }
}
BENCHMARK(BM_BlockedSum)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
