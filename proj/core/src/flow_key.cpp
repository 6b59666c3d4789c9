#include "matlock/flow_key.hpp"

#include <stdexcept>

namespace matlock {

const char* to_string(FlowKeyMode mode) {
  switch (mode) {
    case FlowKeyMode::five_tuple: return "5tuple";
    case FlowKeyMode::ipdst: return "ipdst";
    case FlowKeyMode::ipdst16: return "ipdst16";
    case FlowKeyMode::global: return "global";
  }
  return "?";
}

FlowKeyMode parse_key_mode(const std::string& text) {
  if (text == "5tuple") return FlowKeyMode::five_tuple;
  if (text == "ipdst") return FlowKeyMode::ipdst;
  if (text == "ipdst16") return FlowKeyMode::ipdst16;
  if (text == "global") return FlowKeyMode::global;
  throw std::invalid_argument("unknown key mode: " + text);
}

FlowKey extract_key(const PacketRecord& record, FlowKeyMode mode) {
  FlowKey key;
  key.mode = mode;
  if (mode == FlowKeyMode::global) {
    key.bytes.assign(1, '\0');
    return key;
  }

  const size_t alen = record.addr_len();
  if (record.ip_version == IpVersion::non_ip) {
    // All-zero key of the mode's IPv4 width; non-IP traffic maps to one
    // reserved state cell instead of being dropped.
    size_t width = mode == FlowKeyMode::five_tuple ? 13
                 : mode == FlowKeyMode::ipdst      ? 4
                                                   : 2;
    key.bytes.assign(width, '\0');
    return key;
  }

  switch (mode) {
    case FlowKeyMode::five_tuple:
      key.bytes.reserve(2 * alen + 5);
      key.bytes.append(reinterpret_cast<const char*>(record.src_addr.data()), alen);
      key.bytes.append(reinterpret_cast<const char*>(record.dst_addr.data()), alen);
      key.bytes.push_back(static_cast<char>(record.proto));
      key.bytes.push_back(static_cast<char>(record.src_port >> 8));
      key.bytes.push_back(static_cast<char>(record.src_port & 0xFF));
      key.bytes.push_back(static_cast<char>(record.dst_port >> 8));
      key.bytes.push_back(static_cast<char>(record.dst_port & 0xFF));
      break;
    case FlowKeyMode::ipdst:
      key.bytes.append(reinterpret_cast<const char*>(record.dst_addr.data()), alen);
      break;
    case FlowKeyMode::ipdst16:
      key.bytes.append(reinterpret_cast<const char*>(record.dst_addr.data()), 2);
      break;
    case FlowKeyMode::global:
      break;  // handled above
  }
  return key;
}

DispatchResult dispatch(const FlowKey& key, uint32_t queue_count,
                        uint32_t w_bits, const HashParams& params) {
  if (queue_count < 1) throw std::invalid_argument("queue_count must be >= 1");
  if (w_bits < 1 || w_bits > 16) throw std::invalid_argument("w_bits must be in [1,16]");
  const uint16_t h = crc16(key.bytes, params);
  DispatchResult out;
  out.queue_index = h % queue_count;
  // "mod W" with W in bits reads as modulo 2^W: with w_bits = 4 the
  // scheduler distinguishes 16 flows.
  const uint32_t mask = (w_bits == 16) ? 0xFFFFu : ((1u << w_bits) - 1);
  out.w = static_cast<uint16_t>(h & mask);
  return out;
}

}  // namespace matlock
