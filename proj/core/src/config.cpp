#include "matlock/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace matlock {

namespace {

using nlohmann::json;

// Accepts 4353, "0x1101" or "4353".
uint16_t parse_u16_field(const json& j) {
  if (j.is_number_unsigned()) return j.get<uint16_t>();
  if (j.is_string()) {
    return static_cast<uint16_t>(std::stoul(j.get<std::string>(), nullptr, 0));
  }
  throw ConfigError("expected integer or string for 16-bit field");
}

std::string path_stem(const std::string& path) {
  return fs::path(path).stem().string();
}

}  // namespace

const char* to_string(TraceFormat format) {
  switch (format) {
    case TraceFormat::pcap: return "pcap";
    case TraceFormat::csv: return "csv";
    case TraceFormat::synthetic: return "synthetic";
  }
  return "?";
}

TraceFormat parse_trace_format(const std::string& text) {
  if (text == "pcap") return TraceFormat::pcap;
  if (text == "csv") return TraceFormat::csv;
  if (text == "synthetic") return TraceFormat::synthetic;
  throw ConfigError("unknown trace format: " + text);
}

std::optional<TraceFormat> trace_format_from_path(const std::string& path) {
  const std::string ext = fs::path(path).extension().string();
  if (ext == ".pcap" || ext == ".cap") return TraceFormat::pcap;
  if (ext == ".csv") return TraceFormat::csv;
  if (ext == ".json") return TraceFormat::synthetic;
  return std::nullopt;
}

void ExperimentConfig::finalize() {
  if (synthetic) {
    if (!trace_path.empty()) {
      throw ConfigError("config names both a trace file and an inline synthetic spec");
    }
    format = TraceFormat::synthetic;
  } else {
    if (trace_path.empty()) {
      throw ConfigError("no trace source configured");
    }
    if (!format) format = trace_format_from_path(trace_path);
    if (!format) {
      throw ConfigError("cannot deduce trace format from path: " + trace_path +
                        " (pass --format)");
    }
    if (!fs::exists(trace_path)) {
      throw ConfigError("trace file does not exist: " + trace_path);
    }
    if (*format == TraceFormat::synthetic) {
      synthetic = load_synthetic_spec(trace_path);
    }
  }
  if (synthetic && seed) synthetic->seed = *seed;
  if (synthetic) synthetic->validate();
  if (trace_label.empty()) {
    trace_label = trace_path.empty() ? "synthetic" : path_stem(trace_path);
  }
  if (key_modes.empty()) {
    throw ConfigError("at least one key mode required");
  }
  if (max_depth < 1) throw ConfigError("n_max must be >= 1");
  pipeline.validate();
  batching.validate();
  for (double t : targets) {
    if (!(t > 0.0) || t > 1.0) throw ConfigError("targets must be in (0, 1]");
  }
}

std::unique_ptr<PacketSource> ExperimentConfig::make_source() const {
  switch (format.value()) {
    case TraceFormat::pcap:
      return std::make_unique<PcapReader>(trace_path);
    case TraceFormat::csv:
      return std::make_unique<CsvTraceReader>(trace_path, csv_strict);
    case TraceFormat::synthetic:
      return std::make_unique<SyntheticSource>(synthetic.value());
  }
  throw ConfigError("unresolved trace format");
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  ExperimentConfig c;
  try {
    if (j.contains("trace")) {
      const json& t = j.at("trace");
      if (t.contains("path")) c.trace_path = t.at("path").get<std::string>();
      if (t.contains("format")) c.format = parse_trace_format(t.at("format").get<std::string>());
      if (t.contains("label")) c.trace_label = t.at("label").get<std::string>();
      if (t.contains("spec")) c.synthetic = parse_synthetic_spec(t.at("spec").dump());
    }
    if (j.contains("key_modes")) {
      c.key_modes.clear();
      for (const auto& m : j.at("key_modes")) {
        c.key_modes.push_back(parse_key_mode(m.get<std::string>()));
      }
    }
    if (j.contains("pipeline")) {
      const json& p = j.at("pipeline");
      if (p.contains("depth")) c.pipeline.depth = p.at("depth").get<uint32_t>();
      if (p.contains("queues")) c.pipeline.queue_count = p.at("queues").get<uint32_t>();
      if (p.contains("queue_capacity")) c.pipeline.queue_capacity = p.at("queue_capacity").get<uint32_t>();
      if (p.contains("w_bits")) c.pipeline.w_bits = p.at("w_bits").get<uint32_t>();
      if (p.contains("chunk_bytes")) c.pipeline.chunk_bytes = p.at("chunk_bytes").get<uint64_t>();
      if (p.contains("gap_cycles")) c.pipeline.gap_cycles = p.at("gap_cycles").get<uint64_t>();
      if (p.contains("clock_ghz")) c.pipeline.clock_ghz = p.at("clock_ghz").get<double>();
    }
    if (j.contains("hash")) {
      const json& h = j.at("hash");
      if (h.contains("polynomial")) c.hash.polynomial = parse_u16_field(h.at("polynomial"));
      if (h.contains("init")) c.hash.init = parse_u16_field(h.at("init"));
      if (h.contains("reflect_in")) c.hash.reflect_in = h.at("reflect_in").get<bool>();
      if (h.contains("reflect_out")) c.hash.reflect_out = h.at("reflect_out").get<bool>();
      if (h.contains("final_xor")) c.hash.final_xor = parse_u16_field(h.at("final_xor"));
    }
    if (j.contains("batching")) {
      const json& b = j.at("batching");
      if (b.contains("batch_size")) c.batching.batch_size = b.at("batch_size").get<uint64_t>();
      if (b.contains("batch_stride")) c.batching.batch_stride = b.at("batch_stride").get<uint64_t>();
    }
    if (j.contains("targets")) {
      c.targets = j.at("targets").get<std::vector<double>>();
    }
    if (j.contains("budget")) {
      const json& b = j.at("budget");
      if (b.contains("queue_counts")) c.budget_queue_counts = b.at("queue_counts").get<std::vector<uint32_t>>();
      if (b.contains("queue_capacities")) c.budget_queue_capacities = b.at("queue_capacities").get<std::vector<uint32_t>>();
    }
    if (j.contains("n_max")) c.max_depth = j.at("n_max").get<uint32_t>();
    if (j.contains("stats_window")) c.stats_window = j.at("stats_window").get<uint64_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
    if (j.contains("csv_strict")) c.csv_strict = j.at("csv_strict").get<bool>();
    if (j.contains("pooled_throughput")) c.pooled_throughput = j.at("pooled_throughput").get<bool>();
    if (j.contains("debug_events")) c.debug_events = j.at("debug_events").get<bool>();
    if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void write_file_atomic(const std::string& dir, const std::string& name,
                       const std::string& content) {
  fs::create_directories(dir);
  const fs::path final_path = fs::path(dir) / name;
  const fs::path tmp_path = fs::path(dir) / ("." + name + ".tmp");
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp_path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp_path.string());
  }
  fs::rename(tmp_path, final_path);
}

}  // namespace matlock
