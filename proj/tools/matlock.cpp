// matlock: trace-driven simulator for stateful match-action pipelines
// with memory locking. Subcommands cover trace statistics, data-hazard
// curves, locking-pipeline runs, clock-cycle budget tables and synthetic
// trace generation. All outputs are plot-ready CSV.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "matlock/commands.hpp"

namespace {

using matlock::ExperimentConfig;

struct CliOverrides {
  std::string config_path;
  std::string trace;
  std::string format;
  std::vector<std::string> keys;
  uint32_t n = 0;
  uint32_t q = 0;
  uint32_t qlen = 0;
  uint32_t w_bits = 0;
  uint64_t chunk_bytes = 0;
  int64_t gap_cycles = -1;
  double clock_ghz = 0.0;
  uint64_t batch_size = 0;
  uint64_t batch_stride = 0;
  std::vector<double> targets;
  int64_t seed = -1;
  std::string out;
  bool debug_events = false;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--config", o.config_path, "JSON config file; flags override it");
  cmd->add_option("--trace", o.trace, "trace file (pcap, csv, or synthetic spec json)");
  cmd->add_option("--format", o.format, "trace format: pcap, csv, synthetic")
      ->check(CLI::IsMember({"pcap", "csv", "synthetic"}));
  cmd->add_option("--key", o.keys, "flow key mode(s): 5tuple, ipdst, ipdst16, global")
      ->delimiter(',');
  cmd->add_option("--n", o.n, "pipeline depth N (run) or max depth (fdh, budget)");
  cmd->add_option("--q", o.q, "queue count Q");
  cmd->add_option("--qlen", o.qlen, "per-queue capacity Q_len (headers)");
  cmd->add_option("--w-bits", o.w_bits, "compressed key width W in bits");
  cmd->add_option("--chunk-bytes", o.chunk_bytes, "reception chunk size (default 80)");
  cmd->add_option("--gap-cycles", o.gap_cycles, "inter-packet gap in cycles (default 0)");
  cmd->add_option("--clock-ghz", o.clock_ghz, "clock frequency for ns conversion");
  cmd->add_option("--batch-size", o.batch_size, "packets per sampled batch");
  cmd->add_option("--batch-stride", o.batch_stride, "packets between batch starts");
  cmd->add_option("--targets", o.targets, "throughput targets for budget")->delimiter(',');
  cmd->add_option("--seed", o.seed, "override the synthetic spec seed");
  cmd->add_option("--out", o.out, "output directory (default .)");
  cmd->add_flag("--debug-events", o.debug_events, "write per-cycle events.csv (run)");
}

ExperimentConfig build_config(const CliOverrides& o, bool n_is_max) {
  ExperimentConfig c;
  if (!o.config_path.empty()) c = matlock::load_config(o.config_path);

  if (!o.trace.empty()) c.trace_path = o.trace;
  if (!o.format.empty()) c.format = matlock::parse_trace_format(o.format);
  if (!o.keys.empty()) {
    c.key_modes.clear();
    for (const std::string& k : o.keys) c.key_modes.push_back(matlock::parse_key_mode(k));
  }
  if (o.n != 0) {
    if (n_is_max) c.max_depth = o.n;
    else c.pipeline.depth = o.n;
  }
  if (o.q != 0) {
    c.pipeline.queue_count = o.q;
    c.budget_queue_counts = {o.q};
  }
  if (o.qlen != 0) {
    c.pipeline.queue_capacity = o.qlen;
    c.budget_queue_capacities = {o.qlen};
  }
  if (o.w_bits != 0) c.pipeline.w_bits = o.w_bits;
  if (o.chunk_bytes != 0) c.pipeline.chunk_bytes = o.chunk_bytes;
  if (o.gap_cycles >= 0) c.pipeline.gap_cycles = static_cast<uint64_t>(o.gap_cycles);
  if (o.clock_ghz > 0.0) c.pipeline.clock_ghz = o.clock_ghz;
  if (o.batch_size != 0) c.batching.batch_size = o.batch_size;
  if (o.batch_stride != 0) c.batching.batch_stride = o.batch_stride;
  if (!o.targets.empty()) c.targets = o.targets;
  if (o.seed >= 0) c.seed = static_cast<uint64_t>(o.seed);
  if (!o.out.empty()) c.out_dir = o.out;
  if (o.debug_events) c.debug_events = true;

  c.finalize();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trace-driven stateful match-action pipeline simulator"};
  app.require_subcommand(1);

  CliOverrides o;
  CLI::App* stats = app.add_subcommand("stats", "packet-size CDF and flow counts");
  CLI::App* fdh = app.add_subcommand("fdh", "data-hazard fraction vs pipeline depth");
  CLI::App* run = app.add_subcommand("run", "locking pipeline throughput and latency");
  CLI::App* budget = app.add_subcommand("budget", "clock-cycle budget table");
  CLI::App* generate = app.add_subcommand("generate", "materialize a synthetic trace");
  for (CLI::App* cmd : {stats, fdh, run, budget, generate}) {
    add_common_options(cmd, o);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (stats->parsed()) {
      matlock::cmd_stats(build_config(o, false));
    } else if (fdh->parsed()) {
      matlock::cmd_fdh(build_config(o, true));
    } else if (run->parsed()) {
      matlock::cmd_run(build_config(o, false));
    } else if (budget->parsed()) {
      matlock::cmd_budget(build_config(o, true));
    } else if (generate->parsed()) {
      matlock::cmd_generate(build_config(o, false));
    }
  } catch (const std::exception& e) {
    // Machine-readable failure channel for scripted callers.
    std::string msg = e.what();
    for (char& ch : msg) {
      if (ch == '"') ch = '\'';
    }
    std::fprintf(stderr, "{\"error\": \"%s\"}\n", msg.c_str());
    return 1;
  }
  return 0;
}
