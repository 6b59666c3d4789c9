#include "matlock/commands.hpp"

#include <cinttypes>
#include <cstdio>
#include <iostream>

#include "matlock/experiment.hpp"
#include "matlock/hazard.hpp"
#include "matlock/trace_stats.hpp"

namespace matlock {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

HeaderBuildConfig header_config(const ExperimentConfig& c, FlowKeyMode mode) {
  HeaderBuildConfig hb;
  hb.key_mode = mode;
  hb.chunk_bytes = c.pipeline.chunk_bytes;
  hb.gap_cycles = c.pipeline.gap_cycles;
  hb.queue_count = c.pipeline.queue_count;
  hb.w_bits = c.pipeline.w_bits;
  hb.hash = c.hash;
  return hb;
}

void warn_if_skipped(const PacketSource& source) {
  if (source.skipped_inputs() > 0) {
    std::cerr << "warning: " << source.skipped_inputs()
              << " damaged input record(s) skipped\n";
  }
}

class EventCsv : public EventSink {
 public:
  void on_event(const Event& e) override {
    out_ += std::to_string(e.cycle);
    out_ += ',';
    out_ += to_string(e.kind);
    out_ += ',';
    out_ += std::to_string(e.queue);
    out_ += ',';
    out_ += std::to_string(e.w);
    out_ += '\n';
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_ = "cycle,event,queue,w\n";
};

}  // namespace

void cmd_stats(const ExperimentConfig& config) {
  std::string size_csv = "size,cum_fraction\n";
  std::string flows_csv = "key_mode,window,distinct_keys,mean\n";
  bool first_pass = true;

  for (FlowKeyMode mode : config.key_modes) {
    auto source = config.make_source();
    const TraceStats stats = trace_stats(*source, mode, config.stats_window);
    if (first_pass) {
      warn_if_skipped(*source);
      for (const auto& [size, cum] : stats.size_cdf) {
        size_csv += std::to_string(size);
        size_csv += ',';
        size_csv += fmt_double(cum);
        size_csv += '\n';
      }
      first_pass = false;
    }
    if (stats.partial_window) {
      std::cerr << "warning: trace shorter than one window; "
                   "flow counts use a partial window\n";
    }
    for (size_t i = 0; i < stats.flows_per_window.size(); ++i) {
      flows_csv += to_string(mode);
      flows_csv += ',';
      flows_csv += std::to_string(i);
      flows_csv += ',';
      flows_csv += std::to_string(stats.flows_per_window[i]);
      flows_csv += ',';
      flows_csv += fmt_double(stats.mean_flows_per_window);
      flows_csv += '\n';
    }
  }

  write_file_atomic(config.out_dir, "size_cdf.csv", size_csv);
  write_file_atomic(config.out_dir, "flows.csv", flows_csv);
}

void cmd_fdh(const ExperimentConfig& config) {
  std::vector<uint32_t> depths(config.max_depth);
  for (uint32_t i = 0; i < config.max_depth; ++i) depths[i] = i + 1;

  std::string csv = "trace,key_mode,N,fdh_p99,batches\n";
  for (FlowKeyMode mode : config.key_modes) {
    auto source = config.make_source();
    const auto batches = collect_batches(*source, config.batching);
    if (mode == config.key_modes.front()) warn_if_skipped(*source);
    HazardConfig base;
    base.key_mode = mode;
    base.chunk_bytes = config.pipeline.chunk_bytes;
    base.gap_cycles = config.pipeline.gap_cycles;
    base.hash = config.hash;
    const auto curve = fdh_curve(batches, mode, depths, base);
    for (const FdhPoint& point : curve) {
      if (point.partial) {
        std::cerr << "warning: single partial batch behind fdh sample (trace "
                  << config.trace_label << ", N=" << point.depth << ")\n";
      }
      csv += config.trace_label;
      csv += ',';
      csv += to_string(mode);
      csv += ',';
      csv += std::to_string(point.depth);
      csv += ',';
      csv += fmt_double(point.fdh_p99);
      csv += ',';
      csv += std::to_string(point.batches);
      csv += '\n';
    }
  }
  write_file_atomic(config.out_dir, "fdh.csv", csv);
}

void cmd_run(const ExperimentConfig& config) {
  std::string batches_csv =
      "trace,key_mode,batch_index,fdh,throughput,latency_p99_cycles,"
      "latency_p99_ns,partial\n";
  std::string agg_csv =
      "trace,key_mode,N,min_throughput,pooled_throughput,"
      "max_latency_p99_cycles,max_latency_p99_ns,batches\n";
  std::string events_csv;

  for (FlowKeyMode mode : config.key_modes) {
    auto source = config.make_source();
    const auto batches = collect_batches(*source, config.batching);
    if (mode == config.key_modes.front()) warn_if_skipped(*source);
    const ExperimentResult result =
        run_experiment(batches, mode, config.pipeline, config.hash);

    for (const BatchMetrics& m : result.batches) {
      batches_csv += config.trace_label;
      batches_csv += ',';
      batches_csv += to_string(mode);
      batches_csv += ',';
      batches_csv += std::to_string(m.batch_index);
      batches_csv += ',';
      batches_csv += fmt_double(m.fdh);
      batches_csv += ',';
      batches_csv += fmt_double(m.throughput);
      batches_csv += ',';
      batches_csv += std::to_string(m.latency_p99_cycles);
      batches_csv += ',';
      batches_csv += fmt_double(m.latency_p99_ns);
      batches_csv += ',';
      batches_csv += m.partial ? "1" : "0";
      batches_csv += '\n';
    }

    agg_csv += config.trace_label;
    agg_csv += ',';
    agg_csv += to_string(mode);
    agg_csv += ',';
    agg_csv += std::to_string(config.pipeline.depth);
    agg_csv += ',';
    agg_csv += fmt_double(result.min_throughput);
    agg_csv += ',';
    agg_csv += fmt_double(result.pooled_throughput);
    agg_csv += ',';
    agg_csv += std::to_string(result.max_latency_p99_cycles);
    agg_csv += ',';
    agg_csv += fmt_double(result.max_latency_p99_ns);
    agg_csv += ',';
    agg_csv += std::to_string(result.batches.size());
    agg_csv += '\n';

    if (config.debug_events && mode == config.key_modes.front()) {
      EventCsv sink;
      HeaderBuildConfig hb = header_config(config, mode);
      for (const Batch& batch : batches) {
        const auto headers = build_headers(batch.records, hb);
        run_locking_batch(headers, config.pipeline, &sink);
      }
      events_csv = sink.take();
    }
  }

  write_file_atomic(config.out_dir, "batches.csv", batches_csv);
  write_file_atomic(config.out_dir, "aggregate.csv", agg_csv);
  if (config.debug_events) {
    write_file_atomic(config.out_dir, "events.csv", events_csv);
  }
}

void cmd_budget(const ExperimentConfig& config) {
  std::string csv = "trace,key_mode,target,Q_len,Q,budget_N,latency_ns\n";
  const ThroughputAggregate aggregate = config.pooled_throughput
                                            ? ThroughputAggregate::pooled
                                            : ThroughputAggregate::min_batch;

  for (FlowKeyMode mode : config.key_modes) {
    auto source = config.make_source();
    const auto batches = collect_batches(*source, config.batching);
    if (mode == config.key_modes.front()) warn_if_skipped(*source);
    for (double target : config.targets) {
      for (uint32_t q_len : config.budget_queue_capacities) {
        for (uint32_t q : config.budget_queue_counts) {
          PipelineConfig base = config.pipeline;
          base.queue_capacity = q_len;
          base.queue_count = q;
          BudgetEntry entry =
              budget_search(batches, mode, base, target, config.max_depth,
                            aggregate, config.hash);
          entry.trace = config.trace_label;
          csv += entry.trace;
          csv += ',';
          csv += to_string(mode);
          csv += ',';
          csv += fmt_double(entry.target);
          csv += ',';
          csv += std::to_string(entry.queue_capacity);
          csv += ',';
          csv += std::to_string(entry.queue_count);
          csv += ',';
          csv += std::to_string(entry.budget_depth);
          csv += ',';
          // Matching the table convention: a budget of 1 means no
          // locking, so no latency figure is printed.
          if (entry.budget_depth > 1) csv += fmt_double(entry.latency_ns);
          csv += '\n';
        }
      }
    }
  }
  write_file_atomic(config.out_dir, "budget.csv", csv);
}

void cmd_generate(const ExperimentConfig& config) {
  if (!config.synthetic) {
    throw ConfigError("generate needs a synthetic trace source");
  }
  const auto records = generate_synthetic(*config.synthetic);
  std::string csv = "wire_len,src_ip,dst_ip,proto,sport,dport\n";
  for (const PacketRecord& r : records) {
    csv += format_csv_row(r);
    csv += '\n';
  }
  write_file_atomic(config.out_dir, "trace.csv", csv);
}

}  // namespace matlock
