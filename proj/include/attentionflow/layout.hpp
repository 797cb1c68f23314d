#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "attentionflow/influence.hpp"
#include "attentionflow/model.hpp"
#include "attentionflow/series.hpp"

namespace attnflow {

/// One calendar year of a node's lifetime. Ring area is proportional to the
/// attention of that year; outer_radius is a fraction of the node radius.
struct RingSpec {
  int year = 0;
  double outer_radius = 0.0;
  int color_index = 0;
};

struct TreeRings {
  std::vector<RingSpec> rings;
  // Set when some ring has zero thickness, or the node has no attention at all.
  bool degenerate = false;
};

struct RadiusBounds {
  double min = 0.015;
  double max = 0.09;
};

enum class SortCriterion { force, total, in, out, category };

std::string_view to_string(SortCriterion c);
/// Accepts "force", "total", "in", "out", "category".
std::optional<SortCriterion> parse_sort_criterion(std::string_view s);

struct NodeGeometry {
  std::string node_id;
  double x = 0.0;
  double y = 0.0;
  double radius = 0.0;
  TreeRings rings;
};

struct EdgeGeometry {
  std::string source_id;
  std::string target_id;
  double width = 0.0;
  bool is_self_loop = false;
};

struct ResolvedLayout {
  ObservationWindow window;
  double threshold = 0.0;
  SortCriterion criterion = SortCriterion::force;
  RadiusBounds bounds;
  std::vector<NodeGeometry> nodes;  // ego first, then alters in ego-network order
  std::vector<EdgeGeometry> edges;
};

struct ForceParams {
  std::uint64_t seed = 0;
  int iterations = 300;
};

TreeRings tree_rings(const NodeRecord& node);

/// r_min + (r_max - r_min) * sqrt(attention / max_attention) over ego and
/// alters, attention being windowed.
std::map<std::string, double> node_radius(const EgoNetwork& ego_net, const RadiusBounds& bounds);

/// Linear map of the window onto [0, 1]; a one-day window maps to 1.
/// Throws std::out_of_range for a day outside the window.
double x_position(DateIndex t, const ObservationWindow& window);

/// y in [0, 1] per node, smaller is higher on screen. Value criteria sort in
/// descending order with ties broken by id. Under `total` the ego is ranked
/// with the alters; under `in`, `out` and `category` (metrics defined relative
/// to the ego) and under `force` the ego sits at 0.5.
std::map<std::string, double> vertical_order(const EgoNetwork& ego_net, SortCriterion criterion,
                                             const RadiusBounds& bounds = {},
                                             const ForceParams& force = {});

/// Deterministic seeded initial y for a node id, in [0, 1].
double seeded_position(std::string_view id, std::uint64_t seed);

/// 1-D relaxation of the alters' y with x held fixed. Ego pinned at 0.5.
std::map<std::string, double> force_layout_1d(const EgoNetwork& ego_net,
                                              const std::map<std::string, double>& x_positions,
                                              const std::map<std::string, double>& radii,
                                              std::uint64_t seed, int iterations);

/// Same relaxation from caller-supplied initial positions.
std::map<std::string, double> force_layout_1d_from(
    const EgoNetwork& ego_net, const std::map<std::string, double>& x_positions,
    const std::map<std::string, double>& radii, std::map<std::string, double> initial,
    int iterations);

ResolvedLayout resolve_layout(const EgoNetwork& ego_net, SortCriterion criterion,
                              const RadiusBounds& bounds = {}, const ForceParams& force = {});

}  // namespace attnflow
