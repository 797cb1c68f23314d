#include "attentionflow/store.hpp"

#include <algorithm>
#include <unicode/unistr.h>

namespace attnflow {

ParseError::ParseError(std::string file, std::size_t line, std::string field,
                       const std::string& message)
    : std::runtime_error(file + ":" + std::to_string(line) +
                         (field.empty() ? std::string{} : " field '" + field + "'") + ": " +
                         message),
      file_(std::move(file)),
      line_(line),
      field_(std::move(field)) {}

IntegrityError::IntegrityError(std::string missing_id, std::size_t line,
                               const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message + " '" + missing_id +
                         "'"),
      missing_id_(std::move(missing_id)),
      line_(line) {}

DuplicateIdError::DuplicateIdError(std::string id, std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message + " '" + id + "'"),
      id_(std::move(id)),
      line_(line) {}

std::string fold_case(std::string_view utf8) {
  auto s = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  s.foldCase();
  std::string out;
  s.toUTF8String(out);
  return out;
}

void DatasetStore::require_unsealed() const {
  if (sealed_) throw std::logic_error("dataset store is sealed");
}

std::optional<std::uint32_t> DatasetStore::index_of(std::string_view id) const {
  // Heterogeneous lookup on unordered_map needs C++20 transparent hashing,
  // which libstdc++ 11 lacks.
  const auto it = node_index_.find(std::string(id));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

void DatasetStore::add_node(NodeRecord node, std::size_t line) {
  require_unsealed();
  if (node.id.empty()) throw std::invalid_argument("node id must be non-empty");
  const auto idx = static_cast<std::uint32_t>(nodes_.size());
  if (!node_index_.emplace(node.id, idx).second) {
    throw DuplicateIdError(node.id, line, "duplicate node id");
  }
  nodes_.push_back(std::move(node));
}

void DatasetStore::add_edge(DynamicEdge edge, std::size_t line) {
  require_unsealed();
  const auto src = index_of(edge.source);
  if (!src) throw IntegrityError(edge.source, line, "edge references unknown node");
  const auto dst = index_of(edge.target);
  if (!dst) throw IntegrityError(edge.target, line, "edge references unknown node");
  const std::uint64_t pair = (static_cast<std::uint64_t>(*src) << 32) | *dst;
  const auto idx = static_cast<std::uint32_t>(edges_.size());
  if (!edge_pairs_.emplace(pair, idx).second) {
    throw DuplicateIdError(edge.source + "->" + edge.target, line, "duplicate edge");
  }
  edges_.push_back(std::move(edge));
  edge_source_.push_back(*src);
  edge_target_.push_back(*dst);
}

void DatasetStore::add_event(EventRecord event, std::size_t line) {
  require_unsealed();
  if (event.label.empty()) throw std::invalid_argument("event label must be non-empty");
  if (!event.node_id.empty() && !index_of(event.node_id)) {
    throw IntegrityError(event.node_id, line, "event references unknown node");
  }
  events_.push_back(std::move(event));
}

namespace {

void build_csr(std::size_t n_nodes, const std::vector<std::uint32_t>& keys,
               std::vector<std::uint32_t>& offsets, std::vector<std::uint32_t>& list) {
  offsets.assign(n_nodes + 1, 0);
  for (auto k : keys) ++offsets[k + 1];
  for (std::size_t i = 0; i < n_nodes; ++i) offsets[i + 1] += offsets[i];
  list.assign(keys.size(), 0);
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (std::uint32_t e = 0; e < keys.size(); ++e) list[cursor[keys[e]]++] = e;
}

}  // namespace

void DatasetStore::seal() {
  if (sealed_) return;
  edge_pairs_.clear();
  build_csr(nodes_.size(), edge_source_, out_offsets_, out_list_);
  build_csr(nodes_.size(), edge_target_, in_offsets_, in_list_);

  std::stable_sort(events_.begin(), events_.end(), [](const EventRecord& a, const EventRecord& b) {
    if (a.date != b.date) return a.date < b.date;
    return a.label < b.label;
  });
  node_events_.assign(nodes_.size(), {});
  global_events_.clear();
  for (std::uint32_t i = 0; i < events_.size(); ++i) {
    if (events_[i].node_id.empty()) {
      global_events_.push_back(i);
    } else {
      node_events_[*index_of(events_[i].node_id)].push_back(i);
    }
  }

  totals_.resize(nodes_.size());
  folded_names_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    totals_[i] = window_sum(nodes_[i].series, nodes_[i].series.support());
    folded_names_[i] = fold_case(nodes_[i].name);
  }
  sealed_ = true;
}

const NodeRecord* DatasetStore::find_node(std::string_view id) const {
  const auto idx = index_of(id);
  return idx ? &nodes_[*idx] : nullptr;
}

std::vector<const DynamicEdge*> DatasetStore::out_edges(std::string_view id) const {
  std::vector<const DynamicEdge*> out;
  const auto idx = index_of(id);
  if (!idx || !sealed_) return out;
  for (auto k = out_offsets_[*idx]; k < out_offsets_[*idx + 1]; ++k) out.push_back(&edges_[out_list_[k]]);
  return out;
}

std::vector<const DynamicEdge*> DatasetStore::in_edges(std::string_view id) const {
  std::vector<const DynamicEdge*> out;
  const auto idx = index_of(id);
  if (!idx || !sealed_) return out;
  for (auto k = in_offsets_[*idx]; k < in_offsets_[*idx + 1]; ++k) out.push_back(&edges_[in_list_[k]]);
  return out;
}

std::vector<const EventRecord*> DatasetStore::events_for(std::string_view id) const {
  std::vector<const EventRecord*> out;
  const auto idx = index_of(id);
  if (idx && sealed_) {
    for (auto e : node_events_[*idx]) out.push_back(&events_[e]);
  }
  for (auto e : global_events_) out.push_back(&events_[e]);
  std::stable_sort(out.begin(), out.end(), [](const EventRecord* a, const EventRecord* b) {
    if (a->date != b->date) return a->date < b->date;
    return a->label < b->label;
  });
  return out;
}

double DatasetStore::total_attention(std::string_view id) const {
  const auto idx = index_of(id);
  if (!idx) return 0.0;
  if (sealed_) return totals_[*idx];
  const auto& s = nodes_[*idx].series;
  return window_sum(s, s.support());
}

std::vector<SearchHit> DatasetStore::search(std::string_view query, std::size_t limit) const {
  if (limit < 1) throw std::invalid_argument("search limit must be >= 1");
  if (!sealed_) throw std::logic_error("search requires a sealed store");
  const std::string needle = fold_case(query);
  std::vector<std::uint32_t> matches;
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
    if (needle.empty() || folded_names_[i].find(needle) != std::string::npos) matches.push_back(i);
  }
  auto better = [&](std::uint32_t a, std::uint32_t b) {
    if (totals_[a] != totals_[b]) return totals_[a] > totals_[b];
    return nodes_[a].id < nodes_[b].id;
  };
  const std::size_t keep = std::min(limit, matches.size());
  std::partial_sort(matches.begin(), matches.begin() + static_cast<std::ptrdiff_t>(keep),
                    matches.end(), better);
  std::vector<SearchHit> hits;
  hits.reserve(keep);
  for (std::size_t k = 0; k < keep; ++k) {
    const auto i = matches[k];
    hits.push_back({nodes_[i].id, nodes_[i].name, totals_[i], totals_[i]});
  }
  return hits;
}

bool DatasetStore::operator==(const DatasetStore& other) const {
  if (nodes_ != other.nodes_ || edges_ != other.edges_) return false;
  // Event order is canonical only after sealing.
  auto sorted = [](std::vector<EventRecord> ev) {
    std::sort(ev.begin(), ev.end(), [](const EventRecord& a, const EventRecord& b) {
      return std::tie(a.date, a.node_id, a.label, a.url) < std::tie(b.date, b.node_id, b.label, b.url);
    });
    return ev;
  };
  return sorted(events_) == sorted(other.events_);
}

}  // namespace attnflow
