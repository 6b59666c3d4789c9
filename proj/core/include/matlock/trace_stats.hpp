#ifndef MATLOCK_TRACE_STATS_HPP
#define MATLOCK_TRACE_STATS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "matlock/flow_key.hpp"
#include "matlock/packet.hpp"

namespace matlock {

struct TraceStats {
  uint64_t total_packets = 0;
  // Packet-size CDF sampled at every distinct size, ascending.
  std::vector<std::pair<uint32_t, double>> size_cdf;
  // Distinct flow keys per consecutive window of `window` packets.
  // Complete windows only, unless the trace is shorter than one window:
  // then the single partial window is used and flagged.
  std::vector<uint64_t> flows_per_window;
  double mean_flows_per_window = 0.0;
  bool partial_window = false;

  double cdf_at(uint32_t size) const;
};

TraceStats trace_stats(PacketSource& source, FlowKeyMode key_mode,
                       uint64_t window);

}  // namespace matlock

#endif  // MATLOCK_TRACE_STATS_HPP
