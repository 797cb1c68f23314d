#include <algorithm>
#include <fstream>
#include <cmath>
#include <json.hpp>

#include "attentionflow/store.hpp"

namespace attnflow {

using nlohmann::json;

namespace {

class RecordReader {
 public:
  explicit RecordReader(const std::filesystem::path& path) : path_(path), in_(path) {
    if (!in_) throw std::runtime_error("cannot open " + path.string());
  }

  // Next non-blank line parsed as a JSON object.
  bool next(json& record) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        record = json::parse(line);
      } catch (const json::parse_error& e) {
        fail("", std::string("malformed JSON: ") + e.what());
      }
      if (!record.is_object()) fail("", "record must be a JSON object");
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    throw ParseError(path_.filename().string(), line_no_, field, message);
  }

  [[nodiscard]] std::size_t line() const { return line_no_; }

  std::string string_field(const json& r, const char* key, bool required = true,
                           bool allow_empty = true) const {
    const auto it = r.find(key);
    if (it == r.end()) {
      if (required) fail(key, "missing");
      return {};
    }
    if (!it->is_string()) fail(key, "expected a string");
    auto s = it->get<std::string>();
    if (!allow_empty && s.empty()) fail(key, "must be non-empty");
    return s;
  }

  DateIndex date_field(const json& r, const char* key) const {
    const auto s = string_field(r, key);
    try {
      return DateIndex::parse(s);
    } catch (const std::invalid_argument& e) {
      fail(key, e.what());
    }
  }

  std::vector<double> values_field(const json& r, const char* key) const {
    const auto it = r.find(key);
    if (it == r.end()) fail(key, "missing");
    if (!it->is_array() || it->empty()) fail(key, "expected a non-empty array of numbers");
    std::vector<double> values;
    values.reserve(it->size());
    for (const auto& v : *it) {
      if (!v.is_number()) fail(key, "expected a non-empty array of numbers");
      const double x = v.get<double>();
      if (!(x >= 0.0) || !std::isfinite(x)) fail(key, "values must be finite and non-negative");
      values.push_back(x);
    }
    return values;
  }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

NodeRecord parse_node(const json& r, const RecordReader& rd) {
  NodeRecord n;
  n.id = rd.string_field(r, "id", true, false);
  n.name = rd.string_field(r, "name");
  const DateIndex created = rd.date_field(r, "created");
  n.series = AttentionSeries(created, rd.values_field(r, "values"));
  if (const auto it = r.find("categories"); it != r.end() && !it->is_null()) {
    if (!it->is_array()) rd.fail("categories", "expected an array of strings");
    for (const auto& c : *it) {
      if (!c.is_string()) rd.fail("categories", "expected an array of strings");
      n.categories.push_back(c.get<std::string>());
    }
  }
  if (const auto it = r.find("meta"); it != r.end() && !it->is_null()) {
    if (!it->is_object()) rd.fail("meta", "expected an object of strings");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) rd.fail("meta", "value of '" + k + "' must be a string");
      n.meta.emplace(k, v.get<std::string>());
    }
  }
  return n;
}

DynamicEdge parse_edge(const json& r, const RecordReader& rd, const DatasetStore& store) {
  DynamicEdge e;
  e.source = rd.string_field(r, "source", true, false);
  e.target = rd.string_field(r, "target", true, false);
  const bool has_values = r.contains("values");
  const bool has_weight = r.contains("weight");
  if (has_values == has_weight) rd.fail("values", "exactly one of 'values' or 'weight' is required");

  if (has_values) {
    e.weights = AttentionSeries(rd.date_field(r, "start"), rd.values_field(r, "values"));
    return e;
  }

  const auto& w = r["weight"];
  if (!w.is_number() || !(w.get<double>() >= 0.0) || !std::isfinite(w.get<double>())) {
    rd.fail("weight", "expected a finite non-negative number");
  }
  const NodeRecord* s = store.find_node(e.source);
  if (s == nullptr) throw IntegrityError(e.source, rd.line(), "edge references unknown node");
  const NodeRecord* t = store.find_node(e.target);
  if (t == nullptr) throw IntegrityError(e.target, rd.line(), "edge references unknown node");
  const DateIndex lo = std::max(s->series.start(), t->series.start());
  const DateIndex hi = std::min(s->series.last(), t->series.last());
  if (hi < lo) rd.fail("weight", "endpoint lifetimes do not overlap");
  e.weights = AttentionSeries::constant(lo, hi - lo + 1, w.get<double>());
  return e;
}

EventRecord parse_event(const json& r, const RecordReader& rd) {
  EventRecord ev;
  ev.node_id = rd.string_field(r, "node_id", false);
  ev.date = rd.date_field(r, "date");
  ev.label = rd.string_field(r, "label", true, false);
  if (const auto it = r.find("url"); it != r.end() && !it->is_null()) {
    ev.url = rd.string_field(r, "url");
  }
  return ev;
}

}  // namespace

DatasetStore ingest(const std::filesystem::path& nodes_path,
                    const std::filesystem::path& edges_path,
                    const std::optional<std::filesystem::path>& events_path) {
  DatasetStore store;
  json record;
  {
    RecordReader rd(nodes_path);
    while (rd.next(record)) {
      auto node = parse_node(record, rd);
      store.add_node(std::move(node), rd.line());
    }
  }
  {
    RecordReader rd(edges_path);
    while (rd.next(record)) store.add_edge(parse_edge(record, rd, store), rd.line());
  }
  if (events_path) {
    RecordReader rd(*events_path);
    while (rd.next(record)) store.add_event(parse_event(record, rd), rd.line());
  }
  store.seal();
  return store;
}

namespace {

json node_to_json(const NodeRecord& n) {
  json meta = json::object();
  for (const auto& [k, v] : n.meta) meta[k] = v;
  return {{"id", n.id},
          {"name", n.name},
          {"created", n.created().iso()},
          {"categories", n.categories},
          {"values", n.series.to_dense()},
          {"meta", meta}};
}

json edge_to_json(const DynamicEdge& e, const DatasetStore& store) {
  if (e.weights.is_constant()) {
    const auto& s = store.find_node(e.source)->series;
    const auto& t = store.find_node(e.target)->series;
    const DateIndex lo = std::max(s.start(), t.start());
    const DateIndex hi = std::min(s.last(), t.last());
    if (e.weights.start() == lo && e.weights.last() == hi) {
      return {{"source", e.source}, {"target", e.target}, {"weight", e.weights.constant_value()}};
    }
  }
  return {{"source", e.source},
          {"target", e.target},
          {"start", e.weights.start().iso()},
          {"values", e.weights.to_dense()}};
}

json event_to_json(const EventRecord& ev) {
  json j = {{"node_id", ev.node_id}, {"date", ev.date.iso()}, {"label", ev.label}};
  if (ev.url) j["url"] = *ev.url;
  return j;
}

}  // namespace

void export_dataset(const DatasetStore& store, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream nodes(dir / "nodes.jsonl");
  for (const auto& n : store.nodes()) nodes << node_to_json(n).dump() << '\n';
  std::ofstream edges(dir / "edges.jsonl");
  for (const auto& e : store.edges()) edges << edge_to_json(e, store).dump() << '\n';
  std::ofstream events(dir / "events.jsonl");
  for (const auto& ev : store.events()) events << event_to_json(ev).dump() << '\n';
  if (!nodes || !edges || !events) throw std::runtime_error("failed writing dataset to " + dir.string());
}

}  // namespace attnflow
