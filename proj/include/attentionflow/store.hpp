#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "attentionflow/model.hpp"

namespace attnflow {

/// Malformed record in a dataset file. `line` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, std::size_t line, std::string field, const std::string& message);

  [[nodiscard]] const std::string& file() const { return file_; }
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  std::string file_;
  std::size_t line_;
  std::string field_;
};

/// An edge or event refers to a node that does not exist.
class IntegrityError : public std::runtime_error {
 public:
  IntegrityError(std::string missing_id, std::size_t line, const std::string& message);

  [[nodiscard]] const std::string& missing_id() const { return missing_id_; }
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::string missing_id_;
  std::size_t line_;
};

/// A node id, or a (source, target) edge pair, appears twice.
class DuplicateIdError : public std::runtime_error {
 public:
  DuplicateIdError(std::string id, std::size_t line, const std::string& message);

  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::string id_;
  std::size_t line_;
};

struct SearchHit {
  std::string id;
  std::string name;
  double total_attention = 0.0;
  double rank_score = 0.0;
};

/// Indexed in-memory dataset. Built by a single writer through add_* calls,
/// then seal()ed; after sealing it is immutable and safe for concurrent reads.
class DatasetStore final : public GraphView {
 public:
  DatasetStore() = default;

  void add_node(NodeRecord node, std::size_t line = 0);
  void add_edge(DynamicEdge edge, std::size_t line = 0);
  void add_event(EventRecord event, std::size_t line = 0);

  /// Builds adjacency, event order, totals and the name index.
  void seal();
  [[nodiscard]] bool sealed() const { return sealed_; }

  [[nodiscard]] const NodeRecord* find_node(std::string_view id) const override;
  [[nodiscard]] std::vector<const DynamicEdge*> out_edges(std::string_view id) const override;
  [[nodiscard]] std::vector<const DynamicEdge*> in_edges(std::string_view id) const override;

  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] std::span<const NodeRecord> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const DynamicEdge> edges() const { return edges_; }
  [[nodiscard]] std::span<const EventRecord> events() const { return events_; }

  /// Events attached to `id` plus global events, sorted by date then label.
  [[nodiscard]] std::vector<const EventRecord*> events_for(std::string_view id) const;

  /// Lifetime attention of a node; 0 for an unknown id.
  [[nodiscard]] double total_attention(std::string_view id) const;

  /// Case-folded substring match on names, ranked by lifetime attention
  /// (descending) then id. An empty query matches everything.
  [[nodiscard]] std::vector<SearchHit> search(std::string_view query, std::size_t limit = 20) const;

  /// Identifier for the loaded snapshot; empty until one is assigned.
  [[nodiscard]] const std::string& snapshot_id() const { return snapshot_id_; }
  void set_snapshot_id(std::string id) { snapshot_id_ = std::move(id); }

  /// Compares records, not indices or snapshot ids.
  bool operator==(const DatasetStore& other) const;

 private:
  std::optional<std::uint32_t> index_of(std::string_view id) const;
  void require_unsealed() const;

  std::vector<NodeRecord> nodes_;
  std::vector<DynamicEdge> edges_;
  std::vector<EventRecord> events_;
  std::unordered_map<std::string, std::uint32_t> node_index_;
  std::vector<std::uint32_t> edge_source_;
  std::vector<std::uint32_t> edge_target_;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_pairs_;

  // Sealed indices, CSR adjacency over edge indices.
  std::vector<std::uint32_t> out_offsets_, out_list_;
  std::vector<std::uint32_t> in_offsets_, in_list_;
  std::vector<std::vector<std::uint32_t>> node_events_;
  std::vector<std::uint32_t> global_events_;
  std::vector<double> totals_;
  std::vector<std::string> folded_names_;
  std::string snapshot_id_;
  bool sealed_ = false;
};

/// Unicode case folding used for name search.
std::string fold_case(std::string_view utf8);

/// Reads line-delimited JSON dataset files into a sealed store.
DatasetStore ingest(const std::filesystem::path& nodes_path,
                    const std::filesystem::path& edges_path,
                    const std::optional<std::filesystem::path>& events_path = std::nullopt);

/// Writes nodes.jsonl, edges.jsonl and events.jsonl into `dir`.
void export_dataset(const DatasetStore& store, const std::filesystem::path& dir);

/// Binary snapshot of the store's records. Returns the snapshot id.
std::string save_snapshot(const DatasetStore& store, const std::filesystem::path& path);
DatasetStore load_snapshot(const std::filesystem::path& path);

}  // namespace attnflow
