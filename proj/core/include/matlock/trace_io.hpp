#ifndef MATLOCK_TRACE_IO_HPP
#define MATLOCK_TRACE_IO_HPP

#include <cstdint>
#include <fstream>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "matlock/packet.hpp"

namespace matlock {

// Unrecoverable problems with an input file (bad magic, bad header line).
// Row- and record-level damage is handled per the reader's mode instead.
class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Classic libpcap capture files (magic 0xa1b2c3d4, either endianness;
// the nanosecond-timestamp variant is accepted too since timestamps are
// discarded). Decodes Ethernet, raw-IP and Linux-SLL link types; VLAN
// tags are skipped. wire_len comes from the record's original (on-wire)
// length so truncated captures still model reception time correctly.
// Frames whose IP header is cut off by the snapshot come out as non_ip.
class PcapReader : public PacketSource {
 public:
  explicit PcapReader(const std::string& path);
  std::optional<PacketRecord> next() override;

  // Records dropped because the file ended mid-record.
  uint64_t truncated_records() const { return truncated_; }
  uint64_t skipped_inputs() const override { return truncated_; }

 private:
  std::ifstream in_;
  std::string path_;
  bool swapped_ = false;
  uint32_t link_type_ = 0;
  uint64_t truncated_ = 0;
  std::vector<uint8_t> buf_;

  uint32_t u32(const uint8_t* p) const;
};

// Decodes one captured frame (already stripped of the pcap record
// header) into a PacketRecord. Exposed for fuzz-style unit tests.
PacketRecord decode_frame(std::span<const uint8_t> data, uint32_t link_type,
                          uint32_t wire_len);

// Text traces: header line `wire_len,src_ip,dst_ip,proto,sport,dport`,
// one row per packet, addresses in dotted-quad or RFC 5952 form, empty
// for non-IP. In strict mode a bad row throws with its line number; in
// lenient mode bad rows are skipped and counted.
class CsvTraceReader : public PacketSource {
 public:
  explicit CsvTraceReader(const std::string& path, bool strict = true);
  std::optional<PacketRecord> next() override;

  uint64_t skipped_rows() const { return skipped_; }
  uint64_t skipped_inputs() const override { return skipped_; }

 private:
  std::ifstream in_;
  std::string path_;
  bool strict_;
  uint64_t line_no_ = 1;  // header consumed in ctor
  uint64_t skipped_ = 0;
};

// Parses one CSV row (no trailing newline). Throws std::invalid_argument
// with a field-level message on damage.
PacketRecord parse_csv_row(const std::string& line);

std::string format_csv_row(const PacketRecord& record);

// Writes the stream in the exact format CsvTraceReader accepts;
// read_csv(write_csv(stream)) is the identity.
void write_csv_trace(std::span<const PacketRecord> records, std::ostream& out);
void write_csv_trace(std::span<const PacketRecord> records,
                     const std::string& path);

// In-memory source for tests and replays.
class VectorSource : public PacketSource {
 public:
  explicit VectorSource(std::vector<PacketRecord> records)
      : records_(std::move(records)) {}
  std::optional<PacketRecord> next() override {
    if (pos_ >= records_.size()) return std::nullopt;
    return records_[pos_++];
  }

 private:
  std::vector<PacketRecord> records_;
  size_t pos_ = 0;
};

}  // namespace matlock

#endif  // MATLOCK_TRACE_IO_HPP
