#ifndef MATLOCK_HAZARD_HPP
#define MATLOCK_HAZARD_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "matlock/batching.hpp"
#include "matlock/clocking.hpp"

namespace matlock {

// Data-hazard test for two same-key pipeline entries `gap` cycles apart
// in an N-stage pipeline. A depth-1 pipeline reads and writes state in
// the same cycle, so it never hazards; for deeper pipelines a second
// entry within N cycles still races the earlier write-back. gap must be
// >= 1 (at most one entry per cycle).
inline bool hazard_predicate(uint64_t gap, uint32_t depth) {
  return depth >= 2 && gap <= depth;
}

struct HazardConfig {
  uint32_t depth = 1;  // pipeline depth N, in clock cycles
  FlowKeyMode key_mode = FlowKeyMode::five_tuple;
  uint64_t chunk_bytes = 80;
  uint64_t gap_cycles = 0;
  HashParams hash;
};

struct HazardResult {
  uint64_t hazards = 0;
  uint64_t total_cycles = 0;  // last ready cycle of the batch
  double fdh = 0.0;           // hazards / total_cycles

  bool operator==(const HazardResult&) const = default;
};

// Counts hazards when headers enter the pipeline immediately on
// reception, with no locking. A header entering at cycle t counts one
// hazard iff some earlier same-key header entered at t' with
// hazard_predicate(t - t') true; distinct keys never conflict. At most
// one hazard is counted per entering header.
HazardResult run_hazard_batch(std::span<const ClockedHeader> headers,
                              uint32_t depth);

struct FdhPoint {
  uint32_t depth = 0;
  double fdh_p99 = 0.0;
  uint64_t batches = 0;
  bool partial = false;  // computed from a single partial batch
};

// The Fig-3-style curve: per depth, the 99th percentile (nearest rank)
// of per-batch FDH values over the sampled batches.
std::vector<FdhPoint> fdh_curve(std::span<const Batch> batches,
                                FlowKeyMode key_mode,
                                std::span<const uint32_t> depths,
                                const HazardConfig& base);

}  // namespace matlock

#endif  // MATLOCK_HAZARD_HPP
