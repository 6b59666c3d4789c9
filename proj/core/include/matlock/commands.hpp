#ifndef MATLOCK_COMMANDS_HPP
#define MATLOCK_COMMANDS_HPP

#include "matlock/config.hpp"

namespace matlock {

// Command back-ends. Each writes its CSV outputs under config.out_dir
// (atomically, in a fixed order) and throws on failure. Re-running with
// an identical config produces byte-identical files.

// size_cdf.csv (size,cum_fraction) + flows.csv
// (key_mode,window,distinct_keys,mean)
void cmd_stats(const ExperimentConfig& config);

// fdh.csv (trace,key_mode,N,fdh_p99,batches) over N = 1..n_max
void cmd_fdh(const ExperimentConfig& config);

// batches.csv + aggregate.csv for one pipeline configuration;
// events.csv too when debug_events is on.
void cmd_run(const ExperimentConfig& config);

// budget.csv (trace,key_mode,target,Q_len,Q,budget_N,latency_ns) over
// the full {targets x Q_len x Q x key_modes} sweep.
void cmd_budget(const ExperimentConfig& config);

// Materializes the synthetic spec as trace.csv.
void cmd_generate(const ExperimentConfig& config);

}  // namespace matlock

#endif  // MATLOCK_COMMANDS_HPP
