#include <cereal/archives/portable_binary.hpp>
#include <cereal/types/map.hpp>
#include <cereal/types/string.hpp>
#include <cereal/types/vector.hpp>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "attentionflow/hash.hpp"
#include "attentionflow/store.hpp"

namespace attnflow {

namespace {

constexpr std::string_view kMagic = "AFSNAP01";
constexpr std::uint32_t kFormatVersion = 1;

void save_series(cereal::PortableBinaryOutputArchive& ar, const AttentionSeries& s) {
  const bool constant = s.is_constant();
  ar(s.start().days(), s.length(), constant);
  if (constant) {
    ar(s.constant_value());
  } else {
    ar(s.to_dense());
  }
}

AttentionSeries load_series(cereal::PortableBinaryInputArchive& ar) {
  std::int32_t start = 0;
  std::int32_t length = 0;
  bool constant = false;
  ar(start, length, constant);
  if (constant) {
    double v = 0.0;
    ar(v);
    return AttentionSeries::constant(DateIndex(start), length, v);
  }
  std::vector<double> values;
  ar(values);
  return AttentionSeries(DateIndex(start), std::move(values));
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string save_snapshot(const DatasetStore& store, const std::filesystem::path& path) {
  std::ostringstream payload(std::ios::binary);
  {
    cereal::PortableBinaryOutputArchive ar(payload);
    ar(kFormatVersion);
    ar(static_cast<std::uint64_t>(store.node_count()));
    for (const auto& n : store.nodes()) {
      ar(n.id, n.name, n.categories, n.meta);
      save_series(ar, n.series);
    }
    ar(static_cast<std::uint64_t>(store.edge_count()));
    for (const auto& e : store.edges()) {
      ar(e.source, e.target);
      save_series(ar, e.weights);
    }
    ar(static_cast<std::uint64_t>(store.events().size()));
    for (const auto& ev : store.events()) {
      ar(ev.node_id, ev.date.days(), ev.label, ev.url.has_value(), ev.url.value_or(""));
    }
  }
  const std::string bytes = std::move(payload).str();
  const std::string id = hex64(fnv1a64(bytes));

  std::ofstream out(path, std::ios::binary);
  out.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
  out.write(id.data(), static_cast<std::streamsize>(id.size()));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("failed writing snapshot " + path.string());
  return id;
}

DatasetStore load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot " + path.string());
  std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (raw.size() < kMagic.size() + 16 || std::string_view(raw).substr(0, kMagic.size()) != kMagic) {
    throw std::runtime_error(path.string() + " is not a snapshot file");
  }
  const std::string id = raw.substr(kMagic.size(), 16);
  const std::string_view body = std::string_view(raw).substr(kMagic.size() + 16);
  if (hex64(fnv1a64(body)) != id) throw std::runtime_error("snapshot checksum mismatch in " + path.string());

  std::istringstream payload(std::string(body), std::ios::binary);
  raw.clear();
  raw.shrink_to_fit();
  cereal::PortableBinaryInputArchive ar(payload);

  std::uint32_t version = 0;
  ar(version);
  if (version != kFormatVersion) throw std::runtime_error("unsupported snapshot version");

  DatasetStore store;
  std::uint64_t count = 0;
  ar(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    NodeRecord n;
    ar(n.id, n.name, n.categories, n.meta);
    n.series = load_series(ar);
    store.add_node(std::move(n));
  }
  ar(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    DynamicEdge e;
    ar(e.source, e.target);
    e.weights = load_series(ar);
    store.add_edge(std::move(e));
  }
  ar(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    EventRecord ev;
    std::int32_t days = 0;
    bool has_url = false;
    std::string url;
    ar(ev.node_id, days, ev.label, has_url, url);
    ev.date = DateIndex(days);
    if (has_url) ev.url = std::move(url);
    store.add_event(std::move(ev));
  }
  store.seal();
  store.set_snapshot_id(id);
  return store;
}

}  // namespace attnflow
