#include "attentionflow/serialize.hpp"

namespace attnflow {

using nlohmann::json;

namespace {

json influence_json(const std::optional<EdgeInfluence>& inf) {
  if (!inf) return nullptr;
  return {{"flux", inf->flux}, {"normalized", inf->normalized}};
}

json series_json(const AttentionSeries& s) {
  return {{"start", s.start().iso()}, {"values", s.to_dense()}};
}

json aligned_json(const AttentionSeries& s, const ObservationWindow& w) {
  return {{"start", w.start.iso()}, {"values", align_daily(s, w)}};
}

json meta_json(const NodeRecord& n) {
  json meta = json::object();
  for (const auto& [k, v] : n.meta) meta[k] = v;
  return meta;
}

}  // namespace

json to_json(const ObservationWindow& w) { return {{"start", w.start.iso()}, {"end", w.end.iso()}}; }

json to_json(const ResolvedLayout& layout) {
  json nodes = json::array();
  for (const auto& n : layout.nodes) {
    json rings = json::array();
    for (const auto& r : n.rings.rings) {
      rings.push_back({{"year", r.year}, {"outer_radius", r.outer_radius}, {"color_index", r.color_index}});
    }
    nodes.push_back({{"id", n.node_id},
                     {"x", n.x},
                     {"y", n.y},
                     {"radius", n.radius},
                     {"rings", rings},
                     {"rings_degenerate", n.rings.degenerate}});
  }
  json edges = json::array();
  for (const auto& e : layout.edges) {
    edges.push_back({{"source", e.source_id}, {"target", e.target_id}, {"width", e.width}, {"self_loop", e.is_self_loop}});
  }
  return {{"window", to_json(layout.window)},
          {"threshold", layout.threshold},
          {"sort", std::string(to_string(layout.criterion))},
          {"bounds", {{"r_min", layout.bounds.min}, {"r_max", layout.bounds.max}}},
          {"nodes", nodes},
          {"edges", edges}};
}

json to_json(const EgoNetwork& ego_net) {
  json alters = json::array();
  for (const auto& a : ego_net.alters) {
    alters.push_back({{"id", a.node->id},
                      {"influencing_time", a.influencing_time.iso()},
                      {"incoming", influence_json(a.incoming)},
                      {"outgoing", influence_json(a.outgoing)}});
  }
  return {{"ego", ego_net.ego->id},
          {"window", to_json(ego_net.window)},
          {"threshold", ego_net.threshold},
          {"ego_attention", ego_net.ego_attention},
          {"alters", alters},
          {"self_loop", influence_json(ego_net.self_loop)}};
}

json to_json(const SearchHit& hit) {
  return {{"id", hit.id}, {"name", hit.name}, {"total_attention", hit.total_attention}, {"rank_score", hit.rank_score}};
}

json to_json(const EventRecord& ev) {
  json j = {{"node_id", ev.node_id}, {"date", ev.date.iso()}, {"label", ev.label}};
  j["url"] = ev.url ? json(*ev.url) : json(nullptr);
  return j;
}

json node_detail(const DatasetStore& store, const NodeRecord& node) {
  json events = json::array();
  for (const auto* ev : store.events_for(node.id)) events.push_back(to_json(*ev));
  return {{"id", node.id},
          {"name", node.name},
          {"created", node.created().iso()},
          {"categories", node.categories},
          {"meta", meta_json(node)},
          {"total_attention", store.total_attention(node.id)},
          {"series", series_json(node.series)},
          {"events", events}};
}

json ego_response(const DatasetStore& store, const EgoNetwork& ego_net, const ResolvedLayout& layout,
                  const EgoResponseExtras& extras) {
  const auto& w = ego_net.window;
  const NodeRecord& ego = *ego_net.ego;

  json alters = json::array();
  for (const auto& a : ego_net.alters) {
    const NodeRecord& n = *a.node;
    alters.push_back({{"id", n.id},
                      {"name", n.name},
                      {"created", n.created().iso()},
                      {"categories", n.categories},
                      {"meta", meta_json(n)},
                      {"influencing_time", a.influencing_time.iso()},
                      {"window_attention", window_sum(n.series, w)},
                      {"incoming", influence_json(a.incoming)},
                      {"outgoing", influence_json(a.outgoing)},
                      {"grey_period", {{"start", n.created().iso()}, {"end", a.influencing_time.iso()}}},
                      {"attention", aligned_json(n.series, w)}});
  }

  json events = json::array();
  for (const auto* ev : store.events_for(ego.id)) {
    if (w.contains(ev->date)) events.push_back(to_json(*ev));
  }

  return {{"ego",
           {{"id", ego.id},
            {"name", ego.name},
            {"created", ego.created().iso()},
            {"categories", ego.categories},
            {"meta", meta_json(ego)},
            {"window_attention", ego_net.ego_attention},
            {"attention", aligned_json(ego.series, w)}}},
          {"window", to_json(w)},
          {"threshold", ego_net.threshold},
          {"sort", std::string(to_string(layout.criterion))},
          {"alters", alters},
          {"self_loop", influence_json(ego_net.self_loop)},
          {"layout", to_json(layout)},
          {"events", events},
          {"alters_total", extras.alters_total},
          {"truncated", extras.truncated}};
}

std::string canonical_dump(const json& j) { return j.dump(); }

}  // namespace attnflow
