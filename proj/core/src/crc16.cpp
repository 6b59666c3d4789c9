#include "matlock/crc16.hpp"

namespace matlock {

namespace {

uint8_t reflect8(uint8_t b) {
  b = static_cast<uint8_t>((b & 0xF0) >> 4 | (b & 0x0F) << 4);
  b = static_cast<uint8_t>((b & 0xCC) >> 2 | (b & 0x33) << 2);
  b = static_cast<uint8_t>((b & 0xAA) >> 1 | (b & 0x55) << 1);
  return b;
}

uint16_t reflect16(uint16_t v) {
  uint16_t out = 0;
  for (int i = 0; i < 16; ++i) {
    out = static_cast<uint16_t>(out << 1 | (v >> i & 1));
  }
  return out;
}

}  // namespace

uint16_t crc16(std::span<const uint8_t> data, const HashParams& params) {
  uint16_t crc = params.init;
  for (uint8_t byte : data) {
    if (params.reflect_in) byte = reflect8(byte);
    crc = static_cast<uint16_t>(crc ^ static_cast<uint16_t>(byte) << 8);
    for (int bit = 0; bit < 8; ++bit) {
      if (crc & 0x8000) {
        crc = static_cast<uint16_t>(crc << 1 ^ params.polynomial);
      } else {
        crc = static_cast<uint16_t>(crc << 1);
      }
    }
  }
  if (params.reflect_out) crc = reflect16(crc);
  return static_cast<uint16_t>(crc ^ params.final_xor);
}

}  // namespace matlock
