#include <doctest.h>

#include <cmath>
#include <map>

#include "matlock/synthetic.hpp"

using namespace matlock;

TEST_SUITE("synthetic") {

TEST_CASE("constant size, single flow") {
  SyntheticSpec spec;
  spec.num_packets = 3;
  spec.size_model = ConstantSize{64};
  spec.flow_model = SingleFlow{};
  spec.seed = 1;
  const auto records = generate_synthetic(spec);
  REQUIRE(records.size() == 3);
  for (const auto& r : records) {
    CHECK(r.wire_len == 64);
    CHECK(r == records[0]);
  }
  CHECK(records[0].proto == 6);
  CHECK(records[0].dst_port == 80);
}

TEST_CASE("flow id to 5-tuple mapping is fixed") {
  const PacketRecord r = flow_tuple(0x010203, 100);
  CHECK(r.src_addr[0] == 10);
  CHECK(r.src_addr[1] == 1);
  CHECK(r.src_addr[2] == 2);
  CHECK(r.src_addr[3] == 3);
  CHECK(r.dst_addr[0] == 192);
  CHECK(r.dst_addr[1] == 168);
  CHECK(r.dst_addr[2] == 0);
  CHECK(r.dst_addr[3] == 1);
  // 0x010203 = 66051; 66051 mod 60000 = 6051
  CHECK(r.src_port == 7051);
  CHECK(r.dst_port == 80);
  CHECK(r.proto == 6);
}

TEST_CASE("identical spec and seed give a byte-identical stream") {
  SyntheticSpec spec;
  spec.num_packets = 5000;
  spec.size_model = BimodalSize{0.4, 64, 1500};
  spec.flow_model = UniformFlows{1000};
  spec.seed = 99;
  const auto first = generate_synthetic(spec);
  CHECK(first == generate_synthetic(spec));

  spec.seed = 100;
  const auto reseeded = generate_synthetic(spec);
  CHECK(reseeded == generate_synthetic(spec));
  CHECK(reseeded != first);
}

TEST_CASE("bimodal small-packet fraction converges to p_small") {
  SyntheticSpec spec;
  spec.num_packets = 100000;
  spec.size_model = BimodalSize{0.3, 64, 1500};
  spec.flow_model = SingleFlow{};
  spec.seed = 42;
  const auto records = generate_synthetic(spec);
  uint64_t small = 0;
  for (const auto& r : records) {
    if (r.wire_len == 64) ++small;
  }
  const double frac = static_cast<double>(small) / 100000.0;
  CHECK(std::abs(frac - 0.3) <= 0.01);
}

TEST_CASE("zipf head flow carries about 1/H_n of the traffic") {
  const uint64_t n = 1000;
  SyntheticSpec spec;
  spec.num_packets = 100000;
  spec.size_model = ConstantSize{64};
  spec.flow_model = ZipfFlows{n, 1.0};
  spec.seed = 17;
  const auto records = generate_synthetic(spec);

  std::map<uint16_t, uint64_t> by_sport;  // sport identifies the flow id here
  for (const auto& r : records) ++by_sport[r.src_port];
  uint64_t top = 0;
  for (const auto& [sport, count] : by_sport) top = std::max(top, count);

  double harmonic = 0.0;
  for (uint64_t k = 1; k <= n; ++k) harmonic += 1.0 / static_cast<double>(k);
  const double expected = 1.0 / harmonic;
  const double share = static_cast<double>(top) / 100000.0;
  CHECK(std::abs(share - expected) <= 0.1 * expected);
  // rank 1 is flow id 0 -> sport 1000
  CHECK(by_sport.begin()->first == 1000);
  CHECK(by_sport[1000] == top);
}

TEST_CASE("uniform flows stay inside the configured range") {
  SyntheticSpec spec;
  spec.num_packets = 20000;
  spec.size_model = ConstantSize{64};
  spec.flow_model = UniformFlows{50};
  spec.seed = 5;
  const auto records = generate_synthetic(spec);
  std::map<uint16_t, uint64_t> by_sport;
  for (const auto& r : records) ++by_sport[r.src_port];
  CHECK(by_sport.size() <= 50);
  CHECK(by_sport.size() >= 1);
  for (const auto& [sport, count] : by_sport) {
    CHECK(sport >= 1000);
    CHECK(sport < 1050);
  }
}

TEST_CASE("histogram sampler respects the weights") {
  SyntheticSpec spec;
  spec.num_packets = 50000;
  spec.size_model = HistogramSize{{{64, 1.0}, {600, 1.0}, {1500, 2.0}}};
  spec.flow_model = SingleFlow{};
  spec.seed = 3;
  const auto records = generate_synthetic(spec);
  std::map<uint32_t, uint64_t> by_size;
  for (const auto& r : records) ++by_size[r.wire_len];
  CHECK(by_size.size() == 3);
  CHECK(std::abs(static_cast<double>(by_size[1500]) / 50000.0 - 0.5) < 0.02);
}

TEST_CASE("json spec parsing") {
  const char* text = R"({
    "num_packets": 12,
    "size": {"model": "bimodal", "p_small": 0.3, "small_bytes": 64, "large_bytes": 1500},
    "flows": {"model": "zipf", "num_flows": 7, "alpha": 1.5},
    "seed": 9
  })";
  const SyntheticSpec spec = parse_synthetic_spec(text);
  CHECK(spec.num_packets == 12);
  CHECK(spec.seed == 9);
  const auto* b = std::get_if<BimodalSize>(&spec.size_model);
  REQUIRE(b != nullptr);
  CHECK(b->p_small == 0.3);
  const auto* z = std::get_if<ZipfFlows>(&spec.flow_model);
  REQUIRE(z != nullptr);
  CHECK(z->num_flows == 7);
  CHECK(z->alpha == 1.5);
}

TEST_CASE("spec validation rejects bad fields") {
  SyntheticSpec spec;
  spec.num_packets = 1;

  spec.size_model = BimodalSize{1.5, 64, 1500};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec.size_model = HistogramSize{};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec.size_model = ConstantSize{64};
  spec.flow_model = UniformFlows{0};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

  spec.flow_model = ZipfFlows{10, -1.0};
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

}  // TEST_SUITE
