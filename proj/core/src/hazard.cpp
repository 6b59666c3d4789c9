#include "matlock/hazard.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "matlock/experiment.hpp"

namespace matlock {

HazardResult run_hazard_batch(std::span<const ClockedHeader> headers,
                              uint32_t depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  HazardResult result;
  if (headers.empty()) return result;

  // Only the most recent same-key entry matters: it has the smallest
  // gap, and the predicate is monotone in the gap. The O(batch^2)
  // pairwise oracle in the tests guards this shortcut.
  std::unordered_map<std::string_view, uint64_t> last_entry;
  last_entry.reserve(headers.size());
  for (const ClockedHeader& h : headers) {
    auto [it, inserted] = last_entry.try_emplace(h.key.bytes, h.ready_cycle);
    if (!inserted) {
      if (hazard_predicate(h.ready_cycle - it->second, depth)) ++result.hazards;
      it->second = h.ready_cycle;
    }
  }
  result.total_cycles = headers.back().ready_cycle;
  result.fdh = static_cast<double>(result.hazards) /
               static_cast<double>(result.total_cycles);
  return result;
}

std::vector<FdhPoint> fdh_curve(std::span<const Batch> batches,
                                FlowKeyMode key_mode,
                                std::span<const uint32_t> depths,
                                const HazardConfig& base) {
  if (depths.empty()) throw std::invalid_argument("empty depth range");

  std::vector<std::vector<double>> samples(depths.size());
  bool partial = false;
  for (const Batch& batch : batches) {
    partial = partial || batch.partial;
    HeaderBuildConfig hb;
    hb.key_mode = key_mode;
    hb.chunk_bytes = base.chunk_bytes;
    hb.gap_cycles = base.gap_cycles;
    hb.hash = base.hash;
    const auto headers = build_headers(batch.records, hb);
    for (size_t i = 0; i < depths.size(); ++i) {
      samples[i].push_back(run_hazard_batch(headers, depths[i]).fdh);
    }
  }

  std::vector<FdhPoint> out;
  out.reserve(depths.size());
  for (size_t i = 0; i < depths.size(); ++i) {
    FdhPoint point;
    point.depth = depths[i];
    point.batches = samples[i].size();
    point.partial = partial;
    if (!samples[i].empty()) {
      point.fdh_p99 = percentile(samples[i], 99.0);
    }
    out.push_back(point);
  }
  return out;
}

}  // namespace matlock
