#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "attentionflow/model.hpp"
#include "attentionflow/series.hpp"

namespace attnflow {

struct EdgeInfluence {
  const DynamicEdge* edge = nullptr;
  double flux = 0.0;        // window-summed weight
  double normalized = 0.0;  // flux / ego windowed attention, clamped to 1
};

struct AlterEntry {
  const NodeRecord* node = nullptr;
  std::optional<EdgeInfluence> incoming;  // alter -> ego
  std::optional<EdgeInfluence> outgoing;  // ego -> alter
  DateIndex influencing_time;
};

/// Radius-1 neighbourhood of an ego, filtered by window and threshold.
/// Alters are ordered by id.
struct EgoNetwork {
  const NodeRecord* ego = nullptr;
  ObservationWindow window;
  double threshold = 0.0;
  double ego_attention = 0.0;
  std::vector<AlterEntry> alters;
  std::optional<EdgeInfluence> self_loop;
};

using EdgeKey = std::pair<std::string, std::string>;

double edge_flux(const DynamicEdge& edge, const ObservationWindow& window);

/// min(1, flux / windowed ego attention); 0 when the ego has no attention in
/// the window.
double normalized_influence(const DynamicEdge& edge, const NodeRecord& ego,
                            const ObservationWindow& window);

/// Earliest day at which the cumulative flux of any incident edge, measured
/// from window.start and divided by the ego's windowed attention, reaches
/// `threshold`; then pushed right to the alter's creation date if later.
///
/// Only edges whose support intersects the window take part. With threshold 0
/// every such edge crosses on window.start. Returns nullopt when nothing
/// crosses inside the window.
std::optional<DateIndex> influencing_time(std::span<const DynamicEdge* const> alter_edges,
                                          const NodeRecord& ego, const NodeRecord& alter,
                                          const ObservationWindow& window, double threshold);

bool visible(std::span<const DynamicEdge* const> alter_edges, const NodeRecord& ego,
             const NodeRecord& alter, const ObservationWindow& window, double threshold);

/// Throws NotFoundError for an unknown ego and std::invalid_argument for a
/// threshold outside [0, 1].
EgoNetwork extract_ego_network(const GraphView& graph, std::string_view ego_id,
                               const ObservationWindow& window, double threshold);

/// Edge flux divided by the largest flux in the ego network (self-loop
/// included). All zero when every flux is zero.
std::map<EdgeKey, double> relative_edge_widths(const EgoNetwork& ego_net);

/// Keeps the `max_alters` alters with the largest incoming + outgoing flux
/// (ties by id), preserving id order. Returns the number removed.
std::size_t cap_alters(EgoNetwork& ego_net, std::size_t max_alters);

}  // namespace attnflow
