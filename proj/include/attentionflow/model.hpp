#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "attentionflow/date.hpp"
#include "attentionflow/series.hpp"

namespace attnflow {

struct NodeRecord {
  std::string id;
  std::string name;
  std::vector<std::string> categories;
  AttentionSeries series;
  std::map<std::string, std::string> meta;

  [[nodiscard]] DateIndex created() const { return series.start(); }

  bool operator==(const NodeRecord&) const = default;
};

/// Directed edge carrying the estimated daily attention flux source -> target.
struct DynamicEdge {
  std::string source;
  std::string target;
  AttentionSeries weights;

  [[nodiscard]] bool is_self_loop() const { return source == target; }

  bool operator==(const DynamicEdge&) const = default;
};

/// A dated real-world event. An empty node_id marks a global event.
struct EventRecord {
  std::string node_id;
  DateIndex date;
  std::string label;
  std::optional<std::string> url;

  bool operator==(const EventRecord&) const = default;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Read-only adjacency access used by the influence engine. DatasetStore is
/// the in-memory implementation; anything that can answer these three queries
/// can stand in for it.
class GraphView {
 public:
  virtual ~GraphView() = default;

  [[nodiscard]] virtual const NodeRecord* find_node(std::string_view id) const = 0;
  [[nodiscard]] virtual std::vector<const DynamicEdge*> out_edges(std::string_view id) const = 0;
  [[nodiscard]] virtual std::vector<const DynamicEdge*> in_edges(std::string_view id) const = 0;
};

}  // namespace attnflow
