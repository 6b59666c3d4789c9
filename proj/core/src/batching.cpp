#include "matlock/batching.hpp"

#include <stdexcept>

namespace matlock {

void BatchingPolicy::validate() const {
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (batch_stride < batch_size) {
    throw std::invalid_argument("batch_stride must be >= batch_size");
  }
}

BatchSampler::BatchSampler(PacketSource& source, BatchingPolicy policy)
    : source_(source), policy_(policy) {
  policy_.validate();
}

std::optional<Batch> BatchSampler::next() {
  if (done_) return std::nullopt;

  Batch batch;
  batch.index = next_index_;
  batch.records.reserve(policy_.batch_size);
  while (batch.records.size() < policy_.batch_size) {
    auto r = source_.next();
    if (!r) {
      done_ = true;
      break;
    }
    batch.records.push_back(*r);
  }

  if (batch.records.size() < policy_.batch_size) {
    // Keep a short batch only when it is the first and only one.
    if (batch.index == 0 && !batch.records.empty()) {
      batch.partial = true;
      return batch;
    }
    return std::nullopt;
  }

  // Skip ahead to the next batch start.
  for (uint64_t i = policy_.batch_size; i < policy_.batch_stride && !done_; ++i) {
    if (!source_.next()) done_ = true;
  }
  ++next_index_;
  return batch;
}

std::vector<Batch> collect_batches(PacketSource& source,
                                   const BatchingPolicy& policy) {
  BatchSampler sampler(source, policy);
  std::vector<Batch> batches;
  while (auto b = sampler.next()) batches.push_back(std::move(*b));
  return batches;
}

}  // namespace matlock
