#ifndef MATLOCK_SYNTHETIC_HPP
#define MATLOCK_SYNTHETIC_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "matlock/packet.hpp"

namespace matlock {

// Deterministic synthetic traffic: a stand-in for traces that cannot be
// redistributed. Identical spec + seed produces a byte-identical record
// stream.
//
// Packet sizes are drawn i.i.d. from the size model; flow ids from the
// flow model. Per packet the size is drawn first, then the flow id
// (models that need no randomness consume no draws). Flow id f maps to
// the fixed 5-tuple
//   src 10.(f>>16 & 255).(f>>8 & 255).(f & 255), dst 192.168.0.1,
//   proto 6, sport 1000 + (f mod 60000), dport 80
// so streams are reproducible across implementations.

struct ConstantSize {
  uint32_t bytes = 64;
};
struct BimodalSize {
  double p_small = 0.5;
  uint32_t small_bytes = 64;
  uint32_t large_bytes = 1500;
};
struct HistogramSize {
  std::vector<std::pair<uint32_t, double>> bins;  // (bytes, weight)
};
using SizeModel = std::variant<ConstantSize, BimodalSize, HistogramSize>;

struct SingleFlow {};
struct UniformFlows {
  uint64_t num_flows = 1;
};
struct ZipfFlows {
  uint64_t num_flows = 1;
  double alpha = 1.0;
};
using FlowModel = std::variant<SingleFlow, UniformFlows, ZipfFlows>;

struct SyntheticSpec {
  uint64_t num_packets = 0;
  SizeModel size_model = ConstantSize{};
  FlowModel flow_model = SingleFlow{};
  uint64_t seed = 1;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

// JSON form, e.g.
//   {"num_packets": 1000,
//    "size": {"model": "bimodal", "p_small": 0.3, "small_bytes": 64,
//             "large_bytes": 1500},
//    "flows": {"model": "zipf", "num_flows": 1000, "alpha": 1.0},
//    "seed": 7}
SyntheticSpec parse_synthetic_spec(const std::string& json_text);
SyntheticSpec load_synthetic_spec(const std::string& path);

PacketRecord flow_tuple(uint64_t flow_id, uint32_t wire_len);

// Lazy generator; regenerating with the same spec replays the stream.
class SyntheticSource : public PacketSource {
 public:
  explicit SyntheticSource(SyntheticSpec spec);
  ~SyntheticSource() override;
  std::optional<PacketRecord> next() override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<PacketRecord> generate_synthetic(const SyntheticSpec& spec);

}  // namespace matlock

#endif  // MATLOCK_SYNTHETIC_HPP
