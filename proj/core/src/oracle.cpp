#include "matlock/oracle.hpp"

namespace matlock {

namespace {

struct Admission {
  uint16_t w = 0;
  uint64_t cycle = 0;
};

struct PendingHeader {
  uint64_t ready_cycle = 0;
  uint16_t w = 0;
};

// A header admitted at cycle a is still traveling through the N-stage
// pipeline at cycle t iff t - a < N.
bool w_in_pipeline(const std::vector<Admission>& history, uint16_t w,
                   uint64_t t, uint32_t depth) {
  for (const Admission& a : history) {
    if (a.w == w && t - a.cycle < depth) return true;
  }
  return false;
}

}  // namespace

SimOutcome reference_oracle(std::span<const ClockedHeader> headers,
                            const PipelineConfig& config) {
  config.validate();

  SimOutcome out;
  out.received = headers.size();
  if (headers.empty()) return out;

  std::vector<std::vector<PendingHeader>> queues(config.queue_count);
  std::vector<Admission> history;
  size_t next_arrival = 0;
  uint32_t priority = 0;
  uint64_t t = 0;

  auto some_queue_nonempty = [&] {
    for (const auto& q : queues) {
      if (!q.empty()) return true;
    }
    return false;
  };

  while (next_arrival < headers.size() || some_queue_nonempty()) {
    ++t;

    if (next_arrival < headers.size() &&
        headers[next_arrival].ready_cycle == t) {
      const ClockedHeader& h = headers[next_arrival];
      ++next_arrival;
      auto& q = queues[h.queue_index];
      if (q.size() >= config.queue_capacity) {
        ++out.dropped;
      } else {
        q.push_back({h.ready_cycle, h.w});
      }
    }

    for (uint32_t i = 0; i < config.queue_count; ++i) {
      const uint32_t qi = (priority + i) % config.queue_count;
      auto& q = queues[qi];
      if (q.empty()) continue;
      const PendingHeader head = q.front();
      if (config.depth >= 2 && w_in_pipeline(history, head.w, t, config.depth)) {
        continue;
      }
      out.latency_samples.push_back(t - head.ready_cycle);
      ++out.served;
      if (config.depth >= 2) {
        for (const Admission& a : history) {
          if (a.w == head.w && t - a.cycle < out.min_same_w_gap) {
            out.min_same_w_gap = t - a.cycle;
          }
        }
      }
      history.push_back({head.w, t});
      q.erase(q.begin());
      priority = (qi + 1) % config.queue_count;
      break;
    }
  }

  out.cycles_elapsed = t;
  return out;
}

}  // namespace matlock
