#ifndef MATLOCK_CONFIG_HPP
#define MATLOCK_CONFIG_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "matlock/batching.hpp"
#include "matlock/flow_key.hpp"
#include "matlock/locking.hpp"
#include "matlock/synthetic.hpp"
#include "matlock/trace_io.hpp"

namespace matlock {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TraceFormat { pcap, csv, synthetic };

const char* to_string(TraceFormat format);
TraceFormat parse_trace_format(const std::string& text);
// Guesses from the extension: .pcap/.cap -> pcap, .csv -> csv,
// .json -> synthetic.
std::optional<TraceFormat> trace_format_from_path(const std::string& path);

// Everything one experiment run needs. Loaded from a JSON document,
// then overridden by command-line flags. Defaults are the reference
// settings: 80-byte chunks, 1 GHz clock, W = 4, batches of 100k packets
// every 10m.
struct ExperimentConfig {
  std::string trace_path;                   // file, or spec path for synthetic
  std::optional<TraceFormat> format;        // deduced from path when unset
  std::optional<SyntheticSpec> synthetic;   // inline spec (format synthetic)
  std::string trace_label;                  // defaults to file stem

  std::vector<FlowKeyMode> key_modes = {
      FlowKeyMode::five_tuple, FlowKeyMode::ipdst, FlowKeyMode::ipdst16,
      FlowKeyMode::global};
  PipelineConfig pipeline;
  HashParams hash;
  BatchingPolicy batching;

  std::vector<double> targets = {1.0, 0.999, 0.99};
  std::vector<uint32_t> budget_queue_counts = {1, 4, 8, 16};
  std::vector<uint32_t> budget_queue_capacities = {10, 100};
  uint32_t max_depth = 30;       // N range for fdh and budget sweeps
  uint64_t stats_window = 1000000;

  std::optional<uint64_t> seed;  // overrides the synthetic spec's seed
  bool csv_strict = true;
  bool pooled_throughput = false;
  bool debug_events = false;
  std::string out_dir = ".";

  // Resolves format/label, checks referenced files exist, loads an
  // on-disk synthetic spec. Throws ConfigError.
  void finalize();

  // Fresh stream over the configured trace; call once per pass.
  std::unique_ptr<PacketSource> make_source() const;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Writes content to <dir>/<name> via a temp file + rename so partial
// output never lands under the final name.
void write_file_atomic(const std::string& dir, const std::string& name,
                       const std::string& content);

}  // namespace matlock

#endif  // MATLOCK_CONFIG_HPP
