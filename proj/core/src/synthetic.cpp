#include "matlock/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace matlock {

namespace {

constexpr uint64_t kMaxFlows = 1ull << 24;  // src octet mapping is injective below this

// Uniform draw in [0, n) via 128-bit multiply; avoids the
// implementation-defined std::uniform_int_distribution so streams are
// reproducible across compilers.
uint64_t draw_below(std::mt19937_64& rng, uint64_t n) {
  return static_cast<uint64_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (const auto* c = std::get_if<ConstantSize>(&size_model)) {
    if (c->bytes < 1) throw std::invalid_argument("constant size must be >= 1");
  } else if (const auto* b = std::get_if<BimodalSize>(&size_model)) {
    if (b->p_small < 0.0 || b->p_small > 1.0)
      throw std::invalid_argument("p_small must be in [0,1]");
    if (b->small_bytes < 1 || b->large_bytes < 1)
      throw std::invalid_argument("bimodal sizes must be >= 1");
  } else if (const auto* h = std::get_if<HistogramSize>(&size_model)) {
    if (h->bins.empty()) throw std::invalid_argument("histogram needs bins");
    double total = 0.0;
    for (const auto& [bytes, weight] : h->bins) {
      if (bytes < 1) throw std::invalid_argument("histogram size must be >= 1");
      if (weight < 0.0 || !std::isfinite(weight))
        throw std::invalid_argument("histogram weight must be >= 0");
      total += weight;
    }
    if (total <= 0.0) throw std::invalid_argument("histogram weights sum to 0");
  }
  if (const auto* u = std::get_if<UniformFlows>(&flow_model)) {
    if (u->num_flows < 1 || u->num_flows > kMaxFlows)
      throw std::invalid_argument("num_flows out of range");
  } else if (const auto* z = std::get_if<ZipfFlows>(&flow_model)) {
    if (z->num_flows < 1 || z->num_flows > kMaxFlows)
      throw std::invalid_argument("num_flows out of range");
    if (z->alpha < 0.0 || !std::isfinite(z->alpha))
      throw std::invalid_argument("zipf alpha must be >= 0");
  }
}

PacketRecord flow_tuple(uint64_t flow_id, uint32_t wire_len) {
  const uint32_t src = 0x0A000000u |
                       (static_cast<uint32_t>(flow_id >> 16 & 0xFF) << 16) |
                       (static_cast<uint32_t>(flow_id >> 8 & 0xFF) << 8) |
                       static_cast<uint32_t>(flow_id & 0xFF);
  const uint32_t dst = 0xC0A80001u;  // 192.168.0.1
  const uint16_t sport = static_cast<uint16_t>(1000 + flow_id % 60000);
  return make_ipv4(wire_len, src, dst, 6, sport, 80);
}

struct SyntheticSource::Impl {
  SyntheticSpec spec;
  std::mt19937_64 rng;
  uint64_t emitted = 0;
  std::vector<double> zipf_cdf;   // empty unless the flow model is zipf
  std::vector<double> size_cdf;   // empty unless the size model is a histogram

  explicit Impl(SyntheticSpec s) : spec(std::move(s)), rng(spec.seed) {
    spec.validate();
    if (const auto* z = std::get_if<ZipfFlows>(&spec.flow_model)) {
      zipf_cdf.resize(z->num_flows);
      double acc = 0.0;
      for (uint64_t f = 0; f < z->num_flows; ++f) {
        acc += std::pow(static_cast<double>(f + 1), -z->alpha);
        zipf_cdf[f] = acc;
      }
      for (double& v : zipf_cdf) v /= acc;
      zipf_cdf.back() = 1.0;
    }
    if (const auto* h = std::get_if<HistogramSize>(&spec.size_model)) {
      size_cdf.reserve(h->bins.size());
      double acc = 0.0;
      for (const auto& [bytes, weight] : h->bins) {
        acc += weight;
        size_cdf.push_back(acc);
      }
      for (double& v : size_cdf) v /= acc;
      size_cdf.back() = 1.0;
    }
  }

  uint32_t draw_size() {
    if (const auto* c = std::get_if<ConstantSize>(&spec.size_model)) {
      return c->bytes;
    }
    if (const auto* b = std::get_if<BimodalSize>(&spec.size_model)) {
      return draw_unit(rng) < b->p_small ? b->small_bytes : b->large_bytes;
    }
    const auto& bins = std::get<HistogramSize>(spec.size_model).bins;
    const double u = draw_unit(rng);
    auto it = std::lower_bound(size_cdf.begin(), size_cdf.end(), u);
    if (it == size_cdf.end()) --it;
    return bins[static_cast<size_t>(it - size_cdf.begin())].first;
  }

  uint64_t draw_flow() {
    if (std::holds_alternative<SingleFlow>(spec.flow_model)) return 0;
    if (const auto* u = std::get_if<UniformFlows>(&spec.flow_model)) {
      return draw_below(rng, u->num_flows);
    }
    const double u = draw_unit(rng);
    auto it = std::lower_bound(zipf_cdf.begin(), zipf_cdf.end(), u);
    if (it == zipf_cdf.end()) --it;
    return static_cast<uint64_t>(it - zipf_cdf.begin());
  }
};

SyntheticSource::SyntheticSource(SyntheticSpec spec)
    : impl_(std::make_unique<Impl>(std::move(spec))) {}

SyntheticSource::~SyntheticSource() = default;

std::optional<PacketRecord> SyntheticSource::next() {
  if (impl_->emitted >= impl_->spec.num_packets) return std::nullopt;
  ++impl_->emitted;
  const uint32_t size = impl_->draw_size();
  const uint64_t flow = impl_->draw_flow();
  return flow_tuple(flow, size);
}

std::vector<PacketRecord> generate_synthetic(const SyntheticSpec& spec) {
  SyntheticSource src(spec);
  std::vector<PacketRecord> out;
  out.reserve(spec.num_packets);
  while (auto r = src.next()) out.push_back(*r);
  return out;
}

namespace {

using nlohmann::json;

SizeModel parse_size_model(const json& j) {
  const std::string model = j.at("model").get<std::string>();
  if (model == "constant") {
    ConstantSize c;
    c.bytes = j.at("bytes").get<uint32_t>();
    return c;
  }
  if (model == "bimodal") {
    BimodalSize b;
    b.p_small = j.at("p_small").get<double>();
    b.small_bytes = j.at("small_bytes").get<uint32_t>();
    b.large_bytes = j.at("large_bytes").get<uint32_t>();
    return b;
  }
  if (model == "histogram") {
    HistogramSize h;
    for (const auto& bin : j.at("bins")) {
      h.bins.emplace_back(bin.at(0).get<uint32_t>(), bin.at(1).get<double>());
    }
    return h;
  }
  throw std::invalid_argument("unknown size model: " + model);
}

FlowModel parse_flow_model(const json& j) {
  const std::string model = j.at("model").get<std::string>();
  if (model == "single_flow") return SingleFlow{};
  if (model == "uniform") {
    UniformFlows u;
    u.num_flows = j.at("num_flows").get<uint64_t>();
    return u;
  }
  if (model == "zipf") {
    ZipfFlows z;
    z.num_flows = j.at("num_flows").get<uint64_t>();
    z.alpha = j.at("alpha").get<double>();
    return z;
  }
  throw std::invalid_argument("unknown flow model: " + model);
}

}  // namespace

SyntheticSpec parse_synthetic_spec(const std::string& json_text) {
  json j = json::parse(json_text);
  SyntheticSpec spec;
  spec.num_packets = j.at("num_packets").get<uint64_t>();
  if (j.contains("size")) spec.size_model = parse_size_model(j.at("size"));
  if (j.contains("flows")) spec.flow_model = parse_flow_model(j.at("flows"));
  if (j.contains("seed")) spec.seed = j.at("seed").get<uint64_t>();
  spec.validate();
  return spec;
}

SyntheticSpec load_synthetic_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open synthetic spec: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_synthetic_spec(buf.str());
}

}  // namespace matlock
