#include "matlock/locking.hpp"

#include <deque>
#include <stdexcept>

namespace matlock {

void PipelineConfig::validate() const {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (queue_count < 1) throw std::invalid_argument("queue_count must be >= 1");
  if (queue_capacity < 1) throw std::invalid_argument("queue_capacity must be >= 1");
  if (w_bits < 1 || w_bits > 16) throw std::invalid_argument("w_bits must be in [1,16]");
  if (chunk_bytes < 1) throw std::invalid_argument("chunk_bytes must be >= 1");
  if (!(clock_ghz > 0.0)) throw std::invalid_argument("clock_ghz must be > 0");
}

InFlightSet::InFlightSet(uint32_t depth, uint32_t w_bits)
    : depth_(depth), ring_(depth + 1), blocked_(1u << w_bits, 0) {}

void InFlightSet::insert(uint16_t w, uint64_t admit_cycle, uint32_t queue) {
  if (size_ >= static_cast<size_t>(depth_)) {
    // One admission per cycle keeps occupancy at N entries at most.
    throw std::logic_error("in-flight set overflow");
  }
  Entry& e = ring_[(head_ + size_) % ring_.size()];
  e.w = w;
  e.queue = queue;
  e.admit_cycle = admit_cycle;
  ++size_;
  ++blocked_[w];
}

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::arrive: return "arrive";
    case EventKind::drop: return "drop";
    case EventKind::admit: return "admit";
    case EventKind::expire: return "expire";
  }
  return "?";
}

namespace {

struct QueuedHeader {
  uint64_t ready_cycle = 0;
  uint64_t record_index = 0;
  uint16_t w = 0;
};

}  // namespace

SimOutcome run_locking_batch(std::span<const ClockedHeader> headers,
                             const PipelineConfig& config, EventSink* events) {
  config.validate();

  SimOutcome out;
  out.received = headers.size();
  if (headers.empty()) return out;

  const uint32_t depth = config.depth;
  const bool locking = depth >= 2;  // depth 1: read and write share a cycle

  std::vector<std::deque<QueuedHeader>> queues(config.queue_count);
  InFlightSet in_flight(depth, config.w_bits);
  std::vector<uint64_t> last_admit(1u << config.w_bits, 0);
  uint32_t priority = 0;
  size_t next_arrival = 0;
  uint64_t queued = 0;
  uint64_t t = 0;

  out.latency_samples.reserve(headers.size());

  while (next_arrival < headers.size() || queued > 0) {
    ++t;

    if (locking) {
      if (events) {
        in_flight.expire(t, [&](uint16_t w, uint32_t queue) {
          events->on_event({t, EventKind::expire, queue, w, 0});
        });
      } else {
        in_flight.expire(t);
      }
    }

    // ready cycles are strictly increasing: at most one arrival per cycle
    if (next_arrival < headers.size() &&
        headers[next_arrival].ready_cycle == t) {
      const ClockedHeader& h = headers[next_arrival];
      ++next_arrival;
      auto& q = queues[h.queue_index];
      if (q.size() >= config.queue_capacity) {
        ++out.dropped;
        if (events) events->on_event({t, EventKind::drop, h.queue_index, h.w, h.record_index});
      } else {
        q.push_back({h.ready_cycle, h.record_index, h.w});
        ++queued;
        if (events) events->on_event({t, EventKind::arrive, h.queue_index, h.w, h.record_index});
      }
    }

    if (queued > 0) {
      for (uint32_t i = 0; i < config.queue_count; ++i) {
        const uint32_t qi = (priority + i) % config.queue_count;
        auto& q = queues[qi];
        if (q.empty()) continue;
        const QueuedHeader& head = q.front();
        if (locking && in_flight.blocked(head.w)) continue;

        out.latency_samples.push_back(t - head.ready_cycle);
        ++out.served;
        if (locking) {
          in_flight.insert(head.w, t, qi);
          // Engine safety contract: same-w admissions are at least one
          // pipeline occupancy (N cycles) apart.
          if (last_admit[head.w] != 0) {
            const uint64_t gap = t - last_admit[head.w];
            if (gap < depth) throw std::logic_error("same-w admission gap < depth");
            if (gap < out.min_same_w_gap) out.min_same_w_gap = gap;
          }
          last_admit[head.w] = t;
        }
        if (events) events->on_event({t, EventKind::admit, qi, head.w, head.record_index});
        q.pop_front();
        --queued;
        priority = (qi + 1) % config.queue_count;
        break;
      }
    }
  }

  out.cycles_elapsed = t;
  return out;
}

}  // namespace matlock
