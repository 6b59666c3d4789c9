#include <arpa/inet.h>

#include <array>
#include <charconv>
#include <cstring>
#include <sstream>

#include "matlock/trace_io.hpp"

namespace matlock {

namespace {

constexpr const char* kHeader = "wire_len,src_ip,dst_ip,proto,sport,dport";

uint64_t parse_uint(std::string_view field, const char* name, uint64_t max) {
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::invalid_argument(std::string("non-numeric ") + name);
  }
  if (value > max) {
    throw std::invalid_argument(std::string(name) + " out of range");
  }
  return value;
}

// Splits into exactly 6 fields; a trailing '\r' (CRLF input) is dropped.
std::array<std::string, 6> split_row(const std::string& line) {
  std::array<std::string, 6> fields;
  size_t start = 0;
  size_t field = 0;
  std::string body = line;
  if (!body.empty() && body.back() == '\r') body.pop_back();
  for (size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == ',') {
      if (field >= 6) throw std::invalid_argument("too many fields");
      fields[field++] = body.substr(start, i - start);
      start = i + 1;
    }
  }
  if (field != 6) throw std::invalid_argument("expected 6 fields");
  return fields;
}

}  // namespace

PacketRecord parse_csv_row(const std::string& line) {
  const auto f = split_row(line);
  PacketRecord r;
  r.wire_len = static_cast<uint32_t>(parse_uint(f[0], "wire_len", 0xFFFFFFFFu));
  if (r.wire_len < 1) throw std::invalid_argument("wire_len must be >= 1");

  const bool src_empty = f[1].empty();
  const bool dst_empty = f[2].empty();
  if (src_empty != dst_empty) {
    throw std::invalid_argument("one IP field empty, the other not");
  }
  if (src_empty) {
    return r;  // non_ip row; remaining fields ignored per record invariants
  }

  std::array<uint8_t, 16> src{};
  std::array<uint8_t, 16> dst{};
  auto parse_addr = [](const std::string& text, uint8_t* out, const char* name) {
    if (inet_pton(AF_INET, text.c_str(), out) == 1) return IpVersion::v4;
    if (inet_pton(AF_INET6, text.c_str(), out) == 1) return IpVersion::v6;
    throw std::invalid_argument(std::string("unparsable ") + name + " '" + text + "'");
  };
  const IpVersion src_ver = parse_addr(f[1], src.data(), "src_ip");
  const IpVersion dst_ver = parse_addr(f[2], dst.data(), "dst_ip");
  if (src_ver != dst_ver) {
    throw std::invalid_argument("mixed IPv4/IPv6 addresses");
  }
  r.ip_version = src_ver;
  r.src_addr = src;
  r.dst_addr = dst;
  r.proto = static_cast<uint8_t>(parse_uint(f[3], "proto", 255));
  r.src_port = static_cast<uint16_t>(parse_uint(f[4], "sport", 65535));
  r.dst_port = static_cast<uint16_t>(parse_uint(f[5], "dport", 65535));
  normalize_ports(r);
  return r;
}

std::string format_csv_row(const PacketRecord& r) {
  std::string out = std::to_string(r.wire_len);
  out.push_back(',');
  if (r.ip_version != IpVersion::non_ip) {
    char text[INET6_ADDRSTRLEN];
    const int af = r.ip_version == IpVersion::v4 ? AF_INET : AF_INET6;
    inet_ntop(af, r.src_addr.data(), text, sizeof text);
    out += text;
    out.push_back(',');
    inet_ntop(af, r.dst_addr.data(), text, sizeof text);
    out += text;
  } else {
    out.push_back(',');
  }
  out.push_back(',');
  out += std::to_string(r.proto);
  out.push_back(',');
  out += std::to_string(r.src_port);
  out.push_back(',');
  out += std::to_string(r.dst_port);
  return out;
}

CsvTraceReader::CsvTraceReader(const std::string& path, bool strict)
    : in_(path), path_(path), strict_(strict) {
  if (!in_) throw TraceFormatError("cannot open csv trace: " + path);
  std::string header;
  if (!std::getline(in_, header)) {
    throw TraceFormatError("empty csv trace: " + path);
  }
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header != kHeader) {
    throw TraceFormatError("bad csv header in " + path + " (expected '" +
                           kHeader + "')");
  }
}

std::optional<PacketRecord> CsvTraceReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (line.empty() || line == "\r") continue;
    try {
      return parse_csv_row(line);
    } catch (const std::invalid_argument& e) {
      if (strict_) {
        throw TraceFormatError(path_ + ":" + std::to_string(line_no_) + ": " +
                               e.what());
      }
      ++skipped_;
    }
  }
  return std::nullopt;
}

void write_csv_trace(std::span<const PacketRecord> records, std::ostream& out) {
  out << kHeader << '\n';
  for (const PacketRecord& r : records) {
    out << format_csv_row(r) << '\n';
  }
}

void write_csv_trace(std::span<const PacketRecord> records,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write csv trace: " + path);
  write_csv_trace(records, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace matlock
