#include "attentionflow/influence.hpp"

#include <algorithm>
#include <stdexcept>

namespace attnflow {

double edge_flux(const DynamicEdge& edge, const ObservationWindow& window) {
  return window_sum(edge.weights, window);
}

namespace {

double normalize(double flux, double ego_attention) {
  if (ego_attention <= 0.0 || flux <= 0.0) return 0.0;
  return std::min(1.0, flux / ego_attention);
}

EdgeInfluence make_influence(const DynamicEdge& edge, const ObservationWindow& window,
                             double ego_attention) {
  const double flux = edge_flux(edge, window);
  return {&edge, flux, normalize(flux, ego_attention)};
}

// First day in the window at which the edge's cumulative flux over
// [window.start, day] reaches threshold * ego_attention. threshold > 0 and
// ego_attention > 0. Days before the support add nothing, and after the
// support the total stops growing, so only the overlap is scanned.
std::optional<DateIndex> first_crossing(const AttentionSeries& weights,
                                        const ObservationWindow& window, double ego_attention,
                                        double threshold) {
  const DateIndex lo = std::max(weights.start(), window.start);
  const DateIndex hi = std::min(weights.last(), window.end);
  double cumulative = 0.0;
  for (DateIndex d = lo; d <= hi; ++d) {
    cumulative += weights.at_offset(d - weights.start());
    if (cumulative / ego_attention >= threshold) return d;
  }
  return std::nullopt;
}

void check_threshold(double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("threshold must lie in [0, 1]");
  }
}

}  // namespace

double normalized_influence(const DynamicEdge& edge, const NodeRecord& ego,
                            const ObservationWindow& window) {
  return normalize(edge_flux(edge, window), window_sum(ego.series, window));
}

namespace {

std::optional<DateIndex> influencing_time_with(std::span<const DynamicEdge* const> alter_edges,
                                               double ego_attention, const NodeRecord& alter,
                                               const ObservationWindow& window,
                                               double threshold) {
  std::optional<DateIndex> earliest;
  for (const DynamicEdge* e : alter_edges) {
    if (!e->weights.overlaps(window)) continue;
    std::optional<DateIndex> t;
    if (threshold == 0.0) {
      t = window.start;
    } else if (ego_attention > 0.0) {
      t = first_crossing(e->weights, window, ego_attention, threshold);
    }
    if (t && (!earliest || *t < *earliest)) earliest = t;
  }
  if (!earliest) return std::nullopt;
  return std::max({*earliest, alter.created(), window.start});
}

}  // namespace

std::optional<DateIndex> influencing_time(std::span<const DynamicEdge* const> alter_edges,
                                          const NodeRecord& ego, const NodeRecord& alter,
                                          const ObservationWindow& window, double threshold) {
  check_threshold(threshold);
  return influencing_time_with(alter_edges, window_sum(ego.series, window), alter, window,
                               threshold);
}

bool visible(std::span<const DynamicEdge* const> alter_edges, const NodeRecord& ego,
             const NodeRecord& alter, const ObservationWindow& window, double threshold) {
  return influencing_time(alter_edges, ego, alter, window, threshold).has_value() &&
         alter.created() <= window.end;
}

EgoNetwork extract_ego_network(const GraphView& graph, std::string_view ego_id,
                               const ObservationWindow& window, double threshold) {
  check_threshold(threshold);
  const NodeRecord* ego = graph.find_node(ego_id);
  if (ego == nullptr) throw NotFoundError("unknown node id '" + std::string(ego_id) + "'");

  EgoNetwork net;
  net.ego = ego;
  net.window = window;
  net.threshold = threshold;
  net.ego_attention = window_sum(ego->series, window);

  struct Incident {
    const DynamicEdge* incoming = nullptr;
    const DynamicEdge* outgoing = nullptr;
  };
  std::map<std::string_view, Incident> neighbours;

  for (const DynamicEdge* e : graph.out_edges(ego_id)) {
    if (e->is_self_loop()) {
      if (e->weights.overlaps(window)) net.self_loop = make_influence(*e, window, net.ego_attention);
      continue;
    }
    neighbours[e->target].outgoing = e;
  }
  for (const DynamicEdge* e : graph.in_edges(ego_id)) {
    if (e->is_self_loop()) continue;
    neighbours[e->source].incoming = e;
  }

  for (const auto& [alter_id, incident] : neighbours) {
    const NodeRecord* alter = graph.find_node(alter_id);
    if (alter == nullptr || alter->created() > window.end) continue;

    std::vector<const DynamicEdge*> edges;
    if (incident.incoming) edges.push_back(incident.incoming);
    if (incident.outgoing) edges.push_back(incident.outgoing);
    const auto t = influencing_time_with(edges, net.ego_attention, *alter, window, threshold);
    if (!t) continue;

    AlterEntry entry;
    entry.node = alter;
    entry.influencing_time = *t;
    if (incident.incoming && incident.incoming->weights.overlaps(window)) {
      entry.incoming = make_influence(*incident.incoming, window, net.ego_attention);
    }
    if (incident.outgoing && incident.outgoing->weights.overlaps(window)) {
      entry.outgoing = make_influence(*incident.outgoing, window, net.ego_attention);
    }
    net.alters.push_back(std::move(entry));
  }
  return net;
}

std::map<EdgeKey, double> relative_edge_widths(const EgoNetwork& ego_net) {
  std::vector<const EdgeInfluence*> all;
  for (const auto& a : ego_net.alters) {
    if (a.incoming) all.push_back(&*a.incoming);
    if (a.outgoing) all.push_back(&*a.outgoing);
  }
  if (ego_net.self_loop) all.push_back(&*ego_net.self_loop);

  double max_flux = 0.0;
  for (const auto* inf : all) max_flux = std::max(max_flux, inf->flux);

  std::map<EdgeKey, double> widths;
  for (const auto* inf : all) {
    widths[{inf->edge->source, inf->edge->target}] = max_flux > 0.0 ? inf->flux / max_flux : 0.0;
  }
  return widths;
}

std::size_t cap_alters(EgoNetwork& ego_net, std::size_t max_alters) {
  if (ego_net.alters.size() <= max_alters) return 0;
  auto total_flux = [](const AlterEntry& a) {
    return (a.incoming ? a.incoming->flux : 0.0) + (a.outgoing ? a.outgoing->flux : 0.0);
  };
  std::vector<AlterEntry> ranked = ego_net.alters;
  std::stable_sort(ranked.begin(), ranked.end(), [&](const AlterEntry& a, const AlterEntry& b) {
    const double fa = total_flux(a);
    const double fb = total_flux(b);
    if (fa != fb) return fa > fb;
    return a.node->id < b.node->id;
  });
  const std::size_t removed = ranked.size() - max_alters;
  ranked.resize(max_alters);
  std::sort(ranked.begin(), ranked.end(),
            [](const AlterEntry& a, const AlterEntry& b) { return a.node->id < b.node->id; });
  ego_net.alters = std::move(ranked);
  return removed;
}

}  // namespace attnflow
