#ifndef MATLOCK_EXPERIMENT_HPP
#define MATLOCK_EXPERIMENT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "matlock/batching.hpp"
#include "matlock/flow_key.hpp"
#include "matlock/locking.hpp"

namespace matlock {

// Nearest-rank percentile: sort ascending, take the element at 1-based
// index ceil(p/100 * n). Exact element of the sample set, no
// interpolation. Throws on an empty sample set.
template <typename T>
T percentile(std::vector<T> samples, double p) {
  if (samples.empty()) throw std::invalid_argument("percentile of empty set");
  if (p <= 0.0 || p > 100.0) throw std::invalid_argument("p must be in (0,100]");
  std::sort(samples.begin(), samples.end());
  // p * n stays exact for integral p and n, unlike p / 100 * n.
  const double scaled = p * static_cast<double>(samples.size()) / 100.0;
  size_t rank = static_cast<size_t>(std::ceil(scaled));
  rank = std::clamp<size_t>(rank, 1, samples.size());
  return samples[rank - 1];
}

struct BatchMetrics {
  uint64_t batch_index = 0;
  double fdh = 0.0;              // no-locking hazard fraction at this depth
  double throughput = 0.0;       // served / received under locking
  uint64_t latency_p99_cycles = 0;
  double latency_p99_ns = 0.0;
  bool partial = false;
};

struct ExperimentResult {
  std::vector<BatchMetrics> batches;
  // Aggregates over batches: the worst batch bounds what the
  // configuration sustains.
  double min_throughput = 1.0;
  double pooled_throughput = 1.0;  // total served / total received
  uint64_t max_latency_p99_cycles = 0;
  double max_latency_p99_ns = 0.0;
};

// Runs the locking engine over every sampled batch (state reset per
// batch), plus the hazard count at the same depth for the FDH column.
ExperimentResult run_experiment(std::span<const Batch> batches,
                                FlowKeyMode key_mode,
                                const PipelineConfig& config,
                                const HashParams& hash = {});

ExperimentResult run_experiment(PacketSource& source, FlowKeyMode key_mode,
                                const PipelineConfig& config,
                                const BatchingPolicy& batching,
                                const HashParams& hash = {});

struct BudgetEntry {
  std::string trace;
  FlowKeyMode key_mode = FlowKeyMode::five_tuple;
  double target = 1.0;            // throughput to sustain, in (0, 1]
  uint32_t queue_capacity = 0;    // Q_len
  uint32_t queue_count = 0;       // Q
  uint32_t budget_depth = 1;      // largest N in [1, max_depth] meeting target
  uint64_t latency_cycles = 0;    // aggregate p99 latency at budget_depth
  double latency_ns = 0.0;
};

// Whether a configuration sustains the target. "min_batch" holds every
// sampled batch to the target (target 1.0 means zero drops everywhere);
// "pooled" compares the overall served fraction instead.
enum class ThroughputAggregate { min_batch, pooled };

// Largest depth in [1, max_depth] whose aggregate throughput still
// meets the target. A plain linear scan over every depth: throughput
// need not be monotone in N once w-collisions and queue drops interact.
// Depth 1 never drops, so every target <= 1.0 is satisfiable.
BudgetEntry budget_search(std::span<const Batch> batches, FlowKeyMode key_mode,
                          const PipelineConfig& base, double target,
                          uint32_t max_depth = 30,
                          ThroughputAggregate aggregate = ThroughputAggregate::min_batch,
                          const HashParams& hash = {});

struct SiliconReport {
  uint64_t queue_memory_bytes = 0;  // header buffering: H_len * Q * Q_len
  uint64_t comparator_count = 0;    // Q * N
  uint64_t comparator_bits = 0;     // Q * N * W
};

SiliconReport silicon_overhead(const PipelineConfig& config,
                               uint32_t header_len_bytes);

}  // namespace matlock

#endif  // MATLOCK_EXPERIMENT_HPP
