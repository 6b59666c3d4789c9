#include "matlock/experiment.hpp"

#include "matlock/hazard.hpp"

namespace matlock {

ExperimentResult run_experiment(std::span<const Batch> batches,
                                FlowKeyMode key_mode,
                                const PipelineConfig& config,
                                const HashParams& hash) {
  config.validate();

  ExperimentResult result;
  uint64_t total_served = 0;
  uint64_t total_received = 0;

  HeaderBuildConfig hb;
  hb.key_mode = key_mode;
  hb.chunk_bytes = config.chunk_bytes;
  hb.gap_cycles = config.gap_cycles;
  hb.queue_count = config.queue_count;
  hb.w_bits = config.w_bits;
  hb.hash = hash;

  for (const Batch& batch : batches) {
    const auto headers = build_headers(batch.records, hb);
    const SimOutcome sim = run_locking_batch(headers, config);

    BatchMetrics m;
    m.batch_index = batch.index;
    m.partial = batch.partial;
    m.fdh = run_hazard_batch(headers, config.depth).fdh;
    m.throughput = sim.throughput();
    if (!sim.latency_samples.empty()) {
      m.latency_p99_cycles = percentile(sim.latency_samples, 99.0);
    }
    m.latency_p99_ns = static_cast<double>(m.latency_p99_cycles) / config.clock_ghz;

    total_served += sim.served;
    total_received += sim.received;
    result.min_throughput = std::min(result.min_throughput, m.throughput);
    result.max_latency_p99_cycles =
        std::max(result.max_latency_p99_cycles, m.latency_p99_cycles);
    result.max_latency_p99_ns =
        std::max(result.max_latency_p99_ns, m.latency_p99_ns);
    result.batches.push_back(m);
  }

  if (total_received > 0) {
    result.pooled_throughput = static_cast<double>(total_served) /
                               static_cast<double>(total_received);
  }
  return result;
}

ExperimentResult run_experiment(PacketSource& source, FlowKeyMode key_mode,
                                const PipelineConfig& config,
                                const BatchingPolicy& batching,
                                const HashParams& hash) {
  const auto batches = collect_batches(source, batching);
  return run_experiment(batches, key_mode, config, hash);
}

BudgetEntry budget_search(std::span<const Batch> batches, FlowKeyMode key_mode,
                          const PipelineConfig& base, double target,
                          uint32_t max_depth, ThroughputAggregate aggregate,
                          const HashParams& hash) {
  if (!(target > 0.0) || target > 1.0) {
    throw std::invalid_argument("target must be in (0, 1]");
  }

  BudgetEntry entry;
  entry.key_mode = key_mode;
  entry.target = target;
  entry.queue_capacity = base.queue_capacity;
  entry.queue_count = base.queue_count;

  // Slack only guards float rounding of the ratio; target 1.0 still
  // requires served == received in every batch.
  constexpr double kSlack = 1e-9;

  for (uint32_t depth = 1; depth <= max_depth; ++depth) {
    PipelineConfig config = base;
    config.depth = depth;
    const ExperimentResult r = run_experiment(batches, key_mode, config, hash);
    const double achieved = aggregate == ThroughputAggregate::min_batch
                                ? r.min_throughput
                                : r.pooled_throughput;
    if (achieved + kSlack >= target) {
      entry.budget_depth = depth;
      entry.latency_cycles = r.max_latency_p99_cycles;
      entry.latency_ns = r.max_latency_p99_ns;
    }
  }
  return entry;
}

SiliconReport silicon_overhead(const PipelineConfig& config,
                               uint32_t header_len_bytes) {
  if (header_len_bytes < 1) {
    throw std::invalid_argument("header_len_bytes must be >= 1");
  }
  config.validate();
  SiliconReport report;
  report.queue_memory_bytes = static_cast<uint64_t>(header_len_bytes) *
                              config.queue_count * config.queue_capacity;
  report.comparator_count =
      static_cast<uint64_t>(config.queue_count) * config.depth;
  report.comparator_bits = report.comparator_count * config.w_bits;
  return report;
}

}  // namespace matlock
