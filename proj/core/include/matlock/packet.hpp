#ifndef MATLOCK_PACKET_HPP
#define MATLOCK_PACKET_HPP

#include <array>
#include <cstdint>
#include <optional>

namespace matlock {

enum class IpVersion : uint8_t { v4, v6, non_ip };

// One trace packet: on-wire length plus the flow-identifying header fields.
// Addresses are stored in network byte order. IPv4 addresses occupy bytes
// 0..3 of the 16-byte field, remaining bytes zero.
//
// Invariants (maintained by every producer):
//   - wire_len >= 1
//   - non_ip records have all address/port/proto fields zero
//   - proto not in {6, 17} (TCP/UDP) implies src_port == dst_port == 0
struct PacketRecord {
  uint32_t wire_len = 0;
  IpVersion ip_version = IpVersion::non_ip;
  std::array<uint8_t, 16> src_addr{};
  std::array<uint8_t, 16> dst_addr{};
  uint8_t proto = 0;
  uint16_t src_port = 0;
  uint16_t dst_port = 0;

  bool operator==(const PacketRecord&) const = default;

  // Number of significant address bytes for this record's IP version.
  // non_ip records use the IPv4 width so their keys stay well-defined.
  size_t addr_len() const { return ip_version == IpVersion::v6 ? 16 : 4; }
};

// Zeroes the port fields of non-TCP/UDP records. Producers call this once
// after filling in the parsed fields.
inline void normalize_ports(PacketRecord& r) {
  if (r.proto != 6 && r.proto != 17) {
    r.src_port = 0;
    r.dst_port = 0;
  }
}

inline PacketRecord make_non_ip(uint32_t wire_len) {
  PacketRecord r;
  r.wire_len = wire_len;
  return r;
}

inline PacketRecord make_ipv4(uint32_t wire_len, uint32_t src, uint32_t dst,
                              uint8_t proto, uint16_t sport, uint16_t dport) {
  PacketRecord r;
  r.wire_len = wire_len;
  r.ip_version = IpVersion::v4;
  for (int i = 0; i < 4; ++i) {
    r.src_addr[i] = static_cast<uint8_t>(src >> (24 - 8 * i));
    r.dst_addr[i] = static_cast<uint8_t>(dst >> (24 - 8 * i));
  }
  r.proto = proto;
  r.src_port = sport;
  r.dst_port = dport;
  normalize_ports(r);
  return r;
}

// Pull-based packet stream. Readers and generators implement this; the
// batch sampler and the stats pass consume it. Single-consumer, sequential.
class PacketSource {
 public:
  virtual ~PacketSource() = default;
  virtual std::optional<PacketRecord> next() = 0;

  // Inputs the reader had to drop (truncated pcap records, damaged csv
  // rows in lenient mode). Meaningful once the stream is exhausted.
  virtual uint64_t skipped_inputs() const { return 0; }
};

}  // namespace matlock

#endif  // MATLOCK_PACKET_HPP
