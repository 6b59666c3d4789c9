#ifndef MATLOCK_CRC16_HPP
#define MATLOCK_CRC16_HPP

#include <cstdint>
#include <span>
#include <string_view>

namespace matlock {

// Parameterized CRC-16. Defaults are CRC-16/CCITT-FALSE
// (poly 0x1021, init 0xFFFF, no reflection, final xor 0x0000),
// check("123456789") = 0x29B1.
struct HashParams {
  uint16_t polynomial = 0x1021;
  uint16_t init = 0xFFFF;
  bool reflect_in = false;
  bool reflect_out = false;
  uint16_t final_xor = 0x0000;

  bool operator==(const HashParams&) const = default;
};

uint16_t crc16(std::span<const uint8_t> data, const HashParams& params = {});

inline uint16_t crc16(std::string_view bytes, const HashParams& params = {}) {
  return crc16(std::span<const uint8_t>(
                   reinterpret_cast<const uint8_t*>(bytes.data()), bytes.size()),
               params);
}

}  // namespace matlock

#endif  // MATLOCK_CRC16_HPP
