#include <benchmark/benchmark.h>

#include "matlock/crc16.hpp"
#include "matlock/hazard.hpp"
#include "matlock/synthetic.hpp"

using namespace matlock;

static void BM_hazard_batch(benchmark::State& state) {
  SyntheticSpec spec;
  spec.num_packets = 100000;
  spec.size_model = BimodalSize{0.3, 64, 1500};
  spec.flow_model = ZipfFlows{static_cast<uint64_t>(state.range(0)), 1.0};
  spec.seed = 2;
  const auto records = generate_synthetic(spec);
  HeaderBuildConfig hb;
  hb.key_mode = FlowKeyMode::five_tuple;
  const auto headers = build_headers(records, hb);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_hazard_batch(headers, 19));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(headers.size()));
}
BENCHMARK(BM_hazard_batch)->Arg(16)->Arg(1024)->Arg(65536)->Unit(benchmark::kMillisecond);

static void BM_crc16(benchmark::State& state) {
  std::string key(static_cast<size_t>(state.range(0)), '\x5a');
  for (auto _ : state) {
    benchmark::DoNotOptimize(crc16(key));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          state.range(0));
}
BENCHMARK(BM_crc16)->Arg(13)->Arg(37);
