#include <doctest.h>

#include <random>

#include "matlock/clocking.hpp"
#include "testutil.hpp"

using namespace matlock;

namespace {

std::vector<PacketRecord> sized(std::initializer_list<uint32_t> sizes) {
  std::vector<PacketRecord> out;
  for (uint32_t s : sizes) out.push_back(make_ipv4(s, 0x0A000001, 0x0A000002, 6, 1, 2));
  return out;
}

}  // namespace

TEST_SUITE("clocking") {

TEST_CASE("reception cycles at the 80-byte chunk size") {
  CHECK(reception_cycles(1500, 80) == 19);
  CHECK(reception_cycles(80, 80) == 1);
  CHECK(reception_cycles(64, 80) == 1);
  CHECK(reception_cycles(81, 80) == 2);
  CHECK(reception_cycles(1, 80) == 1);
}

TEST_CASE("ready cycles follow the back-to-back recurrence") {
  const auto records = sized({64, 1500, 64});
  const auto ready = assign_clocks(records, 80, 0);
  CHECK(ready == std::vector<uint64_t>{1, 20, 21});
}

TEST_CASE("inter-packet gap shifts every completion") {
  const auto records = sized({64, 1500, 64});
  const auto ready = assign_clocks(records, 80, 3);
  CHECK(ready == std::vector<uint64_t>{1, 23, 27});
}

TEST_CASE("ready cycles strictly increase, spaced by at least 1 + gap") {
  std::mt19937_64 rng(11);
  for (uint64_t gap : {0ull, 1ull, 5ull}) {
    const auto records = testutil::random_trace(rng, 2000);
    const auto ready = assign_clocks(records, 80, gap);
    for (size_t i = 1; i < ready.size(); ++i) {
      CHECK(ready[i] - ready[i - 1] >= 1 + gap);
    }
  }
}

TEST_CASE("total batch cycles match an independent fold") {
  std::mt19937_64 rng(12);
  const auto records = testutil::random_trace(rng, 3000);
  for (uint64_t gap : {0ull, 2ull}) {
    const auto ready = assign_clocks(records, 80, gap);
    uint64_t total = 0;
    for (const auto& r : records) total += reception_cycles(r.wire_len, 80);
    total += gap * (records.size() - 1);
    CHECK(ready.back() == total);
  }
}

TEST_CASE("empty stream") {
  CHECK(assign_clocks({}, 80, 0).empty());
}

TEST_CASE("build_headers wires clocks, keys and dispatch together") {
  const auto records = sized({64, 1500});
  HeaderBuildConfig hb;
  hb.key_mode = FlowKeyMode::five_tuple;
  hb.queue_count = 4;
  hb.w_bits = 4;
  const auto headers = build_headers(records, hb);
  REQUIRE(headers.size() == 2);
  CHECK(headers[0].record_index == 0);
  CHECK(headers[1].record_index == 1);
  CHECK(headers[0].ready_cycle == 1);
  CHECK(headers[1].ready_cycle == 20);
  CHECK(headers[0].key == extract_key(records[0], FlowKeyMode::five_tuple));
  const DispatchResult d = dispatch(headers[1].key, 4, 4);
  CHECK(headers[1].queue_index == d.queue_index);
  CHECK(headers[1].w == d.w);
}

}  // TEST_SUITE
