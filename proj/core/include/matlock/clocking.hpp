#ifndef MATLOCK_CLOCKING_HPP
#define MATLOCK_CLOCKING_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "matlock/flow_key.hpp"
#include "matlock/packet.hpp"

namespace matlock {

// Cycles to read one packet off the wire: ceil(wire_len / chunk_bytes).
// An 80-byte chunk at 1 GHz models a 640 Gb/s data path: minimum-size
// packets take 1 cycle, a 1500-byte packet takes 19.
inline uint64_t reception_cycles(uint64_t wire_len, uint64_t chunk_bytes) {
  return (wire_len + chunk_bytes - 1) / chunk_bytes;
}

// Back-to-back reception clock. Entry i completes reception at
//   ready[i] = ready[i-1] + gap_cycles + reception_cycles(i),
// with ready[0] = reception_cycles(0). Cycles are 1-based; ready cycles
// are strictly increasing (minimum reception time is one cycle).
std::vector<uint64_t> assign_clocks(std::span<const PacketRecord> records,
                                    uint64_t chunk_bytes, uint64_t gap_cycles);

// A packet header annotated with everything the hazard analyzer and the
// locking engine need: when it finished arriving, which state cell it
// touches, and where the dispatcher put it.
struct ClockedHeader {
  uint64_t record_index = 0;
  uint64_t ready_cycle = 0;
  FlowKey key;
  uint32_t queue_index = 0;
  uint16_t w = 0;
};

struct HeaderBuildConfig {
  FlowKeyMode key_mode = FlowKeyMode::five_tuple;
  uint64_t chunk_bytes = 80;
  uint64_t gap_cycles = 0;
  uint32_t queue_count = 1;
  uint32_t w_bits = 4;
  HashParams hash;
};

// Clocks, keys, and dispatches one batch of records. The clock restarts
// at every batch: cycle numbering is batch-local.
std::vector<ClockedHeader> build_headers(std::span<const PacketRecord> records,
                                         const HeaderBuildConfig& config);

}  // namespace matlock

#endif  // MATLOCK_CLOCKING_HPP
