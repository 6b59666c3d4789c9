#include <doctest.h>

#include <random>

#include "matlock/crc16.hpp"
#include "testutil.hpp"

using matlock::HashParams;
using matlock::crc16;

TEST_SUITE("crc16") {

TEST_CASE("published check values") {
  const std::string check = "123456789";

  SUBCASE("ccitt-false (default)") {
    CHECK(crc16(check) == 0x29B1);
  }
  SUBCASE("xmodem") {
    HashParams p{0x1021, 0x0000, false, false, 0x0000};
    CHECK(crc16(check, p) == 0x31C3);
  }
  SUBCASE("arc") {
    HashParams p{0x8005, 0x0000, true, true, 0x0000};
    CHECK(crc16(check, p) == 0xBB3D);
  }
  SUBCASE("x-25") {
    HashParams p{0x1021, 0xFFFF, true, true, 0xFFFF};
    CHECK(crc16(check, p) == 0x906E);
  }
  SUBCASE("modbus") {
    HashParams p{0x8005, 0xFFFF, true, true, 0x0000};
    CHECK(crc16(check, p) == 0x4B37);
  }
}

TEST_CASE("empty input returns the untouched init value") {
  CHECK(crc16(std::string_view{}) == 0xFFFF);
  HashParams zero_init{0x1021, 0x0000, false, false, 0x0000};
  CHECK(crc16(std::string_view{}, zero_init) == 0x0000);
}

TEST_CASE("pure function") {
  const std::string data = "\x00\x01\xfe\xffpayload";
  CHECK(crc16(data) == crc16(data));
}

TEST_CASE("bitwise and table-driven formulations agree") {
  std::mt19937_64 rng(0xC0FFEE);
  for (int iter = 0; iter < 500; ++iter) {
    std::string data(rng() % 64, '\0');
    for (char& c : data) c = static_cast<char>(rng());
    HashParams p;
    p.polynomial = static_cast<uint16_t>(rng() | 1);  // poly must be odd-ended
    p.init = static_cast<uint16_t>(rng());
    p.reflect_in = rng() % 2 == 0;
    p.reflect_out = rng() % 2 == 0;
    p.final_xor = static_cast<uint16_t>(rng());
    CAPTURE(iter);
    CHECK(crc16(data, p) == testutil::crc16_reference(data, p));
  }
}

}  // TEST_SUITE
