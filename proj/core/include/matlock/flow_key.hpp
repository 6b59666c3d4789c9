#ifndef MATLOCK_FLOW_KEY_HPP
#define MATLOCK_FLOW_KEY_HPP

#include <cstdint>
#include <string>

#include "matlock/crc16.hpp"
#include "matlock/packet.hpp"

namespace matlock {

// Flow aggregation level: which header fields identify one state cell.
enum class FlowKeyMode : uint8_t { five_tuple, ipdst, ipdst16, global };

const char* to_string(FlowKeyMode mode);
// Accepts "5tuple", "ipdst", "ipdst16", "global". Throws on anything else.
FlowKeyMode parse_key_mode(const std::string& text);

// Canonical byte string identifying the state cell a packet touches.
// Two records share a state cell under a mode iff their keys are
// byte-identical.
struct FlowKey {
  FlowKeyMode mode = FlowKeyMode::global;
  std::string bytes;

  bool operator==(const FlowKey&) const = default;
};

// Serializations, all fields in network byte order:
//   five_tuple: src_addr || dst_addr || proto || src_port || dst_port
//               (13 bytes for IPv4, 37 for IPv6)
//   ipdst:      dst_addr (4 or 16 bytes)
//   ipdst16:    first 2 bytes of dst_addr
//   global:     the single byte 0x00
// non_ip records yield the all-zero key of the mode's IPv4 width.
FlowKey extract_key(const PacketRecord& record, FlowKeyMode mode);

struct DispatchResult {
  uint32_t queue_index = 0;  // in [0, queue_count)
  uint16_t w = 0;            // compressed key, in [0, 2^w_bits)

  bool operator==(const DispatchResult&) const = default;
};

// queue_index = crc16(key) mod queue_count, w = crc16(key) mod 2^w_bits.
// One hash evaluation feeds both.
DispatchResult dispatch(const FlowKey& key, uint32_t queue_count,
                        uint32_t w_bits, const HashParams& params = {});

}  // namespace matlock

#endif  // MATLOCK_FLOW_KEY_HPP
