#include <benchmark/benchmark.h>

#include "matlock/locking.hpp"
#include "matlock/synthetic.hpp"

using namespace matlock;

namespace {

std::vector<ClockedHeader> bench_headers(uint64_t flows, const PipelineConfig& config) {
  SyntheticSpec spec;
  spec.num_packets = 100000;
  spec.size_model = BimodalSize{0.3, 64, 1500};
  spec.flow_model = flows == 1 ? FlowModel{SingleFlow{}} : FlowModel{ZipfFlows{flows, 1.0}};
  spec.seed = 1;
  const auto records = generate_synthetic(spec);
  HeaderBuildConfig hb;
  hb.key_mode = FlowKeyMode::five_tuple;
  hb.queue_count = config.queue_count;
  hb.w_bits = config.w_bits;
  return build_headers(records, hb);
}

}  // namespace

static void BM_locking_batch(benchmark::State& state) {
  PipelineConfig config;
  config.depth = static_cast<uint32_t>(state.range(0));
  config.queue_count = static_cast<uint32_t>(state.range(1));
  config.queue_capacity = 100;
  const auto headers = bench_headers(1024, config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_locking_batch(headers, config));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(headers.size()));
}
BENCHMARK(BM_locking_batch)
    ->Args({1, 1})
    ->Args({4, 1})
    ->Args({4, 4})
    ->Args({16, 8})
    ->Args({30, 16})
    ->Unit(benchmark::kMillisecond);

static void BM_locking_congested_single_flow(benchmark::State& state) {
  PipelineConfig config;
  config.depth = static_cast<uint32_t>(state.range(0));
  config.queue_capacity = 100;
  const auto headers = bench_headers(1, config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_locking_batch(headers, config));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(headers.size()));
}
BENCHMARK(BM_locking_congested_single_flow)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
