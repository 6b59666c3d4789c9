#ifndef MATLOCK_ORACLE_HPP
#define MATLOCK_ORACLE_HPP

#include "matlock/locking.hpp"

namespace matlock {

// Independent, deliberately naive implementation of the locking
// contract for differential testing: plain vectors for queues, no
// in-flight bookkeeping — admissibility is recomputed each cycle by
// scanning the full admission history. Must match run_locking_batch
// field for field, including the latency multiset. Intended for small
// batches (<= 10k headers).
SimOutcome reference_oracle(std::span<const ClockedHeader> headers,
                            const PipelineConfig& config);

}  // namespace matlock

#endif  // MATLOCK_ORACLE_HPP
