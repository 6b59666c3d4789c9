#include <cstring>

#include "matlock/trace_io.hpp"

namespace matlock {

namespace {

constexpr uint32_t kMagicUsec = 0xa1b2c3d4;
constexpr uint32_t kMagicUsecSwapped = 0xd4c3b2a1;
constexpr uint32_t kMagicNsec = 0xa1b23c4d;
constexpr uint32_t kMagicNsecSwapped = 0x4d3cb2a1;

constexpr uint32_t kLinkEthernet = 1;
constexpr uint32_t kLinkRawIp = 101;
constexpr uint32_t kLinkLinuxSll = 113;

constexpr uint32_t kMaxSnapLen = 0x40000;  // tcpdump's MAXIMUM_SNAPLEN

constexpr uint16_t kEtherIpv4 = 0x0800;
constexpr uint16_t kEtherIpv6 = 0x86DD;
constexpr uint16_t kEtherVlan = 0x8100;
constexpr uint16_t kEtherQinQ = 0x88A8;
constexpr uint16_t kEtherQinQLegacy = 0x9100;

uint16_t be16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] << 8 | p[1]);
}

// Extracts src/dst ports if the transport header made it into the
// snapshot; otherwise leaves them zero.
void parse_l4(std::span<const uint8_t> ip_payload, PacketRecord& r) {
  if ((r.proto == 6 || r.proto == 17) && ip_payload.size() >= 4) {
    r.src_port = be16(ip_payload.data());
    r.dst_port = be16(ip_payload.data() + 2);
  }
  normalize_ports(r);
}

bool parse_ipv4(std::span<const uint8_t> data, PacketRecord& r) {
  if (data.size() < 20) return false;
  const uint8_t version = data[0] >> 4;
  const size_t ihl = static_cast<size_t>(data[0] & 0x0F) * 4;
  if (version != 4 || ihl < 20 || data.size() < ihl) return false;
  r.ip_version = IpVersion::v4;
  std::memcpy(r.src_addr.data(), data.data() + 12, 4);
  std::memcpy(r.dst_addr.data(), data.data() + 16, 4);
  r.proto = data[9];
  const uint16_t frag = be16(data.data() + 6);
  if ((frag & 0x1FFF) == 0) {
    parse_l4(data.subspan(ihl), r);
  } else {
    normalize_ports(r);  // non-first fragment: no L4 header present
  }
  return true;
}

bool parse_ipv6(std::span<const uint8_t> data, PacketRecord& r) {
  if (data.size() < 40) return false;
  if (data[0] >> 4 != 6) return false;
  r.ip_version = IpVersion::v6;
  std::memcpy(r.src_addr.data(), data.data() + 8, 16);
  std::memcpy(r.dst_addr.data(), data.data() + 24, 16);
  uint8_t next = data[6];
  size_t off = 40;
  bool fragmented_tail = false;
  // Fixed next-header chain only: hop-by-hop, routing, fragment.
  while (true) {
    if (next == 0 || next == 43) {
      if (data.size() < off + 8) return true;  // chain cut off; keep IP fields
      const size_t ext_len = (static_cast<size_t>(data[off + 1]) + 1) * 8;
      next = data[off];
      off += ext_len;
    } else if (next == 44) {
      if (data.size() < off + 8) return true;
      const uint16_t frag_off = static_cast<uint16_t>(be16(data.data() + off + 2) >> 3);
      if (frag_off != 0) fragmented_tail = true;
      next = data[off];
      off += 8;
    } else {
      break;
    }
    if (off > data.size()) return true;
  }
  r.proto = next;
  if (!fragmented_tail && off <= data.size()) {
    parse_l4(data.subspan(off), r);
  } else {
    normalize_ports(r);
  }
  return true;
}

}  // namespace

PacketRecord decode_frame(std::span<const uint8_t> data, uint32_t link_type,
                          uint32_t wire_len) {
  PacketRecord r = make_non_ip(wire_len == 0 ? 1 : wire_len);

  size_t off = 0;
  uint16_t ether_type = 0;
  switch (link_type) {
    case kLinkEthernet:
      if (data.size() < 14) return r;
      ether_type = be16(data.data() + 12);
      off = 14;
      break;
    case kLinkLinuxSll:
      if (data.size() < 16) return r;
      ether_type = be16(data.data() + 14);
      off = 16;
      break;
    case kLinkRawIp: {
      if (data.empty()) return r;
      const uint8_t version = data[0] >> 4;
      if (version == 4) parse_ipv4(data, r);
      else if (version == 6) parse_ipv6(data, r);
      return r;
    }
    default:
      return r;
  }

  while (ether_type == kEtherVlan || ether_type == kEtherQinQ ||
         ether_type == kEtherQinQLegacy) {
    if (data.size() < off + 4) return r;
    ether_type = be16(data.data() + off + 2);
    off += 4;
  }

  if (ether_type == kEtherIpv4) {
    parse_ipv4(data.subspan(off), r);
  } else if (ether_type == kEtherIpv6) {
    parse_ipv6(data.subspan(off), r);
  }
  return r;
}

PcapReader::PcapReader(const std::string& path) : in_(path, std::ios::binary), path_(path) {
  if (!in_) throw TraceFormatError("cannot open pcap file: " + path);
  uint8_t header[24];
  if (!in_.read(reinterpret_cast<char*>(header), sizeof header)) {
    throw TraceFormatError("pcap global header truncated: " + path);
  }
  uint32_t magic;
  std::memcpy(&magic, header, 4);
  switch (magic) {
    case kMagicUsec:
    case kMagicNsec:
      swapped_ = false;
      break;
    case kMagicUsecSwapped:
    case kMagicNsecSwapped:
      swapped_ = true;
      break;
    default:
      throw TraceFormatError("not a classic pcap file (bad magic): " + path);
  }
  link_type_ = u32(header + 20);
  if (link_type_ != kLinkEthernet && link_type_ != kLinkRawIp &&
      link_type_ != kLinkLinuxSll) {
    throw TraceFormatError("unsupported pcap link type " +
                           std::to_string(link_type_) + ": " + path);
  }
}

uint32_t PcapReader::u32(const uint8_t* p) const {
  uint32_t v;
  std::memcpy(&v, p, 4);
  if (swapped_) v = __builtin_bswap32(v);
  return v;
}

std::optional<PacketRecord> PcapReader::next() {
  uint8_t rec[16];
  if (!in_.read(reinterpret_cast<char*>(rec), sizeof rec)) {
    if (in_.gcount() != 0) ++truncated_;  // partial record header at EOF
    return std::nullopt;
  }
  const uint32_t incl_len = u32(rec + 8);
  const uint32_t orig_len = u32(rec + 12);
  if (incl_len > kMaxSnapLen) {  // corrupt length field; stop like a truncation
    ++truncated_;
    return std::nullopt;
  }
  buf_.resize(incl_len);
  if (incl_len > 0 &&
      !in_.read(reinterpret_cast<char*>(buf_.data()), incl_len)) {
    ++truncated_;
    return std::nullopt;
  }
  return decode_frame(buf_, link_type_, orig_len);
}

}  // namespace matlock
