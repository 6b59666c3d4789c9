#ifndef MATLOCK_BATCHING_HPP
#define MATLOCK_BATCHING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "matlock/packet.hpp"

namespace matlock {

// Batch sampling: one batch of batch_size consecutive packets every
// batch_stride packets (defaults model evaluating 100k packets out of
// every 10m, a 1:100 sampling rate). Simulator state resets at every
// batch start, so batches are independent work items.
struct BatchingPolicy {
  uint64_t batch_size = 100000;
  uint64_t batch_stride = 10000000;

  void validate() const;
};

struct Batch {
  uint64_t index = 0;        // 0, 1, ... in stride order
  bool partial = false;      // trace ended before batch_size packets
  std::vector<PacketRecord> records;
};

// Pulls sampled batches off a source. A trailing batch shorter than
// batch_size is kept only when it is the sole batch (flagged partial);
// otherwise it is discarded.
class BatchSampler {
 public:
  BatchSampler(PacketSource& source, BatchingPolicy policy);
  std::optional<Batch> next();

 private:
  PacketSource& source_;
  BatchingPolicy policy_;
  uint64_t next_index_ = 0;
  bool done_ = false;
};

std::vector<Batch> collect_batches(PacketSource& source,
                                   const BatchingPolicy& policy);

}  // namespace matlock

#endif  // MATLOCK_BATCHING_HPP
