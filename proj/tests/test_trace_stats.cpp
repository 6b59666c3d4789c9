#include <doctest.h>

#include "matlock/synthetic.hpp"
#include "matlock/trace_io.hpp"
#include "matlock/trace_stats.hpp"

using namespace matlock;

TEST_SUITE("trace_stats") {

TEST_CASE("size cdf from a two-point distribution") {
  std::vector<PacketRecord> records;
  for (int i = 0; i < 5; ++i) records.push_back(flow_tuple(0, 64));
  for (int i = 0; i < 5; ++i) records.push_back(flow_tuple(0, 1500));
  VectorSource source(std::move(records));
  const TraceStats stats = trace_stats(source, FlowKeyMode::five_tuple, 1000);
  REQUIRE(stats.size_cdf.size() == 2);
  CHECK(stats.size_cdf[0] == std::pair<uint32_t, double>{64, 0.5});
  CHECK(stats.size_cdf[1] == std::pair<uint32_t, double>{1500, 1.0});
  CHECK(stats.cdf_at(64) == 0.5);
  CHECK(stats.cdf_at(100) == 0.5);
  CHECK(stats.cdf_at(1500) == 1.0);
  CHECK(stats.cdf_at(63) == 0.0);
}

TEST_CASE("single flow gives one distinct key per window") {
  SyntheticSpec spec;
  spec.num_packets = 2000000;
  spec.size_model = ConstantSize{64};
  spec.flow_model = SingleFlow{};
  spec.seed = 1;
  SyntheticSource source(spec);
  const TraceStats stats = trace_stats(source, FlowKeyMode::five_tuple, 1000000);
  CHECK(stats.flows_per_window == std::vector<uint64_t>{1, 1});
  CHECK(stats.mean_flows_per_window == 1.0);
  CHECK_FALSE(stats.partial_window);
}

TEST_CASE("distinct count is bounded by the flow population") {
  SyntheticSpec spec;
  spec.num_packets = 100000;
  spec.size_model = ConstantSize{64};
  spec.flow_model = UniformFlows{50000};
  spec.seed = 2;
  SyntheticSource source(spec);
  const TraceStats stats = trace_stats(source, FlowKeyMode::five_tuple, 100000);
  REQUIRE(stats.flows_per_window.size() == 1);
  CHECK(stats.flows_per_window[0] <= 50000);
  CHECK(stats.flows_per_window[0] >= 1);
}

TEST_CASE("incomplete trailing window is excluded") {
  std::vector<PacketRecord> records;
  for (uint64_t i = 0; i < 2500; ++i) records.push_back(flow_tuple(i % 10, 64));
  VectorSource source(std::move(records));
  const TraceStats stats = trace_stats(source, FlowKeyMode::five_tuple, 1000);
  CHECK(stats.flows_per_window == std::vector<uint64_t>{10, 10});
  CHECK_FALSE(stats.partial_window);
}

TEST_CASE("trace shorter than a window falls back to the partial one") {
  std::vector<PacketRecord> records;
  for (uint64_t i = 0; i < 7; ++i) records.push_back(flow_tuple(i, 64));
  VectorSource source(std::move(records));
  const TraceStats stats = trace_stats(source, FlowKeyMode::five_tuple, 1000);
  CHECK(stats.flows_per_window == std::vector<uint64_t>{7});
  CHECK(stats.partial_window);
  CHECK(stats.mean_flows_per_window == 7.0);
}

TEST_CASE("key mode changes what counts as distinct") {
  std::vector<PacketRecord> records;
  // 8 distinct source ports, one destination: 8 five-tuples, 1 ipdst key
  for (uint64_t i = 0; i < 8; ++i) {
    records.push_back(make_ipv4(64, 0x0A000001 + static_cast<uint32_t>(i),
                                0xC0A80001, 6, 1000, 80));
  }
  {
    VectorSource source{std::vector<PacketRecord>(records)};
    const TraceStats s = trace_stats(source, FlowKeyMode::five_tuple, 8);
    CHECK(s.flows_per_window == std::vector<uint64_t>{8});
  }
  {
    VectorSource source{std::move(records)};
    const TraceStats s = trace_stats(source, FlowKeyMode::ipdst, 8);
    CHECK(s.flows_per_window == std::vector<uint64_t>{1});
  }
}

}  // TEST_SUITE
