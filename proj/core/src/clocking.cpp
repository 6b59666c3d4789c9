#include "matlock/clocking.hpp"

#include <stdexcept>

namespace matlock {

std::vector<uint64_t> assign_clocks(std::span<const PacketRecord> records,
                                    uint64_t chunk_bytes, uint64_t gap_cycles) {
  if (chunk_bytes < 1) throw std::invalid_argument("chunk_bytes must be >= 1");
  std::vector<uint64_t> ready;
  ready.reserve(records.size());
  uint64_t cycle = 0;
  bool first = true;
  for (const PacketRecord& r : records) {
    cycle += (first ? 0 : gap_cycles) + reception_cycles(r.wire_len, chunk_bytes);
    ready.push_back(cycle);
    first = false;
  }
  return ready;
}

std::vector<ClockedHeader> build_headers(std::span<const PacketRecord> records,
                                         const HeaderBuildConfig& config) {
  std::vector<uint64_t> ready =
      assign_clocks(records, config.chunk_bytes, config.gap_cycles);
  std::vector<ClockedHeader> headers;
  headers.reserve(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    ClockedHeader h;
    h.record_index = i;
    h.ready_cycle = ready[i];
    h.key = extract_key(records[i], config.key_mode);
    DispatchResult d =
        dispatch(h.key, config.queue_count, config.w_bits, config.hash);
    h.queue_index = d.queue_index;
    h.w = d.w;
    headers.push_back(std::move(h));
  }
  return headers;
}

}  // namespace matlock
