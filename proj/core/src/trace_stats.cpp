#include "matlock/trace_stats.hpp"

#include <map>
#include <stdexcept>
#include <unordered_set>

namespace matlock {

double TraceStats::cdf_at(uint32_t size) const {
  double value = 0.0;
  for (const auto& [s, cum] : size_cdf) {
    if (s > size) break;
    value = cum;
  }
  return value;
}

TraceStats trace_stats(PacketSource& source, FlowKeyMode key_mode,
                       uint64_t window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");

  std::map<uint32_t, uint64_t> size_counts;
  std::unordered_set<std::string> window_keys;
  TraceStats stats;
  uint64_t in_window = 0;

  while (auto record = source.next()) {
    ++stats.total_packets;
    ++size_counts[record->wire_len];
    window_keys.insert(extract_key(*record, key_mode).bytes);
    if (++in_window == window) {
      stats.flows_per_window.push_back(window_keys.size());
      window_keys.clear();
      in_window = 0;
    }
  }

  if (stats.flows_per_window.empty() && in_window > 0) {
    // Shorter than one window: fall back to the partial one.
    stats.flows_per_window.push_back(window_keys.size());
    stats.partial_window = true;
  }

  if (!stats.flows_per_window.empty()) {
    uint64_t sum = 0;
    for (uint64_t n : stats.flows_per_window) sum += n;
    stats.mean_flows_per_window =
        static_cast<double>(sum) / static_cast<double>(stats.flows_per_window.size());
  }

  stats.size_cdf.reserve(size_counts.size());
  uint64_t cum = 0;
  for (const auto& [size, count] : size_counts) {
    cum += count;
    stats.size_cdf.emplace_back(
        size, static_cast<double>(cum) / static_cast<double>(stats.total_packets));
  }
  return stats;
}

}  // namespace matlock
