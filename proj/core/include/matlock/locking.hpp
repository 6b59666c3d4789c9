#ifndef MATLOCK_LOCKING_HPP
#define MATLOCK_LOCKING_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "matlock/clocking.hpp"

namespace matlock {

// The whole parameter space of the locking architecture: an N-cycle
// stateful function pipeline preceded by Q bounded queues and a
// work-conserving cyclic-priority scheduler.
struct PipelineConfig {
  uint32_t depth = 1;           // N: cycles between state read and write-back
  uint32_t queue_count = 1;     // Q
  uint32_t queue_capacity = 10; // Q_len, in headers
  uint32_t w_bits = 4;          // compressed-key width W
  uint64_t chunk_bytes = 80;
  uint64_t gap_cycles = 0;
  double clock_ghz = 1.0;       // for cycle -> ns conversion

  void validate() const;
};

// Compressed keys admitted within the last N cycles. An entry admitted
// at cycle a occupies the N pipeline stages during cycles a .. a+N-1 and
// blocks same-w admissions in that span; at cycle a+N it has left and a
// same-w header may be admitted, giving the per-flow service period of
// N cycles. Holds at most N entries (one admission per cycle).
class InFlightSet {
 public:
  InFlightSet(uint32_t depth, uint32_t w_bits);

  // Drops entries that left the pipeline before cycle `now`, invoking
  // on_expire(w, queue) for each (queue = where it was admitted from).
  template <typename F>
  void expire(uint64_t now, F&& on_expire) {
    while (size_ > 0) {
      const Entry& e = ring_[head_];
      if (now - e.admit_cycle < depth_) break;
      --blocked_[e.w];
      on_expire(e.w, e.queue);
      head_ = (head_ + 1) % ring_.size();
      --size_;
    }
  }
  void expire(uint64_t now) {
    expire(now, [](uint16_t, uint32_t) {});
  }

  bool blocked(uint16_t w) const { return blocked_[w] != 0; }
  void insert(uint16_t w, uint64_t admit_cycle, uint32_t queue);
  size_t size() const { return size_; }

 private:
  struct Entry {
    uint16_t w = 0;
    uint32_t queue = 0;
    uint64_t admit_cycle = 0;
  };
  uint32_t depth_;
  std::vector<Entry> ring_;      // FIFO by admit cycle
  size_t head_ = 0;
  size_t size_ = 0;
  std::vector<uint16_t> blocked_;  // per-w membership count
};

struct SimOutcome {
  uint64_t received = 0;
  uint64_t served = 0;
  uint64_t dropped = 0;
  // One entry per served header, in admission order: cycles from
  // reception complete to pipeline admission. All zero when depth == 1.
  std::vector<uint64_t> latency_samples;
  uint64_t cycles_elapsed = 0;
  // Smallest observed distance between two admissions of equal w
  // (diagnostic for the safety checks); max() when no same-w pair exists.
  uint64_t min_same_w_gap = std::numeric_limits<uint64_t>::max();

  bool operator==(const SimOutcome&) const = default;
  double throughput() const {
    return received == 0 ? 1.0
                         : static_cast<double>(served) / static_cast<double>(received);
  }
};

enum class EventKind : uint8_t { arrive, drop, admit, expire };

struct Event {
  uint64_t cycle = 0;
  EventKind kind = EventKind::arrive;
  uint32_t queue = 0;
  uint16_t w = 0;
  uint64_t record_index = 0;  // not meaningful for expire events
};

const char* to_string(EventKind kind);

class EventSink {
 public:
  virtual ~EventSink() = default;
  virtual void on_event(const Event& event) = 0;
};

// Cycle-accurate simulation of the locking architecture over one batch
// of clocked, dispatched headers. Per cycle t = 1, 2, ...:
//   1. expiry: entries that have left the pipeline stop blocking
//      (skipped at depth 1, where admission is never blocked);
//   2. arrival: a header with ready_cycle == t joins its queue, or is
//      dropped if the queue already holds queue_capacity headers;
//   3. schedule: queues are scanned in cyclic order from the priority
//      pointer; the first head-of-line header whose w is not in flight
//      is admitted, and the pointer moves past the served queue. The
//      pointer stays put when nothing is admissible.
// After the last arrival the simulation drains until all queues are
// empty. Deterministic: identical inputs give identical outcomes.
SimOutcome run_locking_batch(std::span<const ClockedHeader> headers,
                             const PipelineConfig& config,
                             EventSink* events = nullptr);

}  // namespace matlock

#endif  // MATLOCK_LOCKING_HPP
