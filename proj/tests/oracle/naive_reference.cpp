#include "naive_reference.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace attnflow::oracle {

using nlohmann::json;

double dense_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

namespace {

bool exists_in_window(const AttentionSeries& s, const ObservationWindow& w) {
  for (DateIndex d = w.start; d <= w.end; ++d) {
    if (d >= s.start() && d <= s.last()) return true;
  }
  return false;
}

double ratio(double flux, double basis) {
  if (basis <= 0.0 || flux <= 0.0) return 0.0;
  return std::min(1.0, flux / basis);
}

json influence(const std::optional<NaiveInfluence>& i) {
  if (!i) return nullptr;
  return {{"flux", i->flux}, {"normalized", i->normalized}};
}

}  // namespace

NaiveEgo naive_ego(const DatasetStore& store, const std::string& ego_id, const ObservationWindow& w,
                   double threshold, Basis basis) {
  NaiveEgo out;
  out.ego = store.find_node(ego_id);
  out.window = w;
  out.threshold = threshold;
  out.ego_attention = dense_sum(align_daily(out.ego->series, w));

  // Every edge touching the ego, found by a full scan.
  struct Touch {
    const DynamicEdge* in = nullptr;
    const DynamicEdge* out = nullptr;
  };
  std::map<std::string, Touch> touching;
  const DynamicEdge* self = nullptr;
  double max_flux = 0.0;
  for (const auto& e : store.edges()) {
    if (e.source != ego_id && e.target != ego_id) continue;
    if (exists_in_window(e.weights, w)) max_flux = std::max(max_flux, dense_sum(align_daily(e.weights, w)));
    if (e.source == e.target) {
      self = &e;
    } else if (e.target == ego_id) {
      touching[e.source].in = &e;
    } else {
      touching[e.target].out = &e;
    }
  }
  const double denom = basis == Basis::ego_attention ? out.ego_attention : max_flux;

  auto make = [&](const DynamicEdge& e) {
    const double flux = dense_sum(align_daily(e.weights, w));
    return NaiveInfluence{e.source, e.target, flux, ratio(flux, out.ego_attention)};
  };
  if (self != nullptr && exists_in_window(self->weights, w)) out.self_loop = make(*self);

  for (const auto& [id, t] : touching) {
    const NodeRecord* alter = store.find_node(id);
    std::optional<std::int32_t> first;
    for (const DynamicEdge* e : {t.in, t.out}) {
      if (e == nullptr || !exists_in_window(e->weights, w)) continue;
      const auto v = align_daily(e->weights, w);
      double cum = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        cum += v[i];
        const bool crossed = threshold == 0.0 || (denom > 0.0 && cum / denom >= threshold);
        if (crossed) {
          if (!first || static_cast<std::int32_t>(i) < *first) first = static_cast<std::int32_t>(i);
          break;
        }
      }
    }
    if (!first || alter->created() > w.end) continue;

    NaiveAlter a;
    a.node = alter;
    a.influencing_time = std::max({w.start + *first, alter->created(), w.start});
    if (t.in != nullptr && exists_in_window(t.in->weights, w)) a.incoming = make(*t.in);
    if (t.out != nullptr && exists_in_window(t.out->weights, w)) a.outgoing = make(*t.out);
    out.alters.push_back(a);
  }
  return out;
}

json naive_ego_json(const NaiveEgo& e) {
  json alters = json::array();
  for (const auto& a : e.alters) {
    alters.push_back({{"id", a.node->id},
                      {"influencing_time", a.influencing_time.iso()},
                      {"incoming", influence(a.incoming)},
                      {"outgoing", influence(a.outgoing)}});
  }
  return {{"ego", e.ego->id},
          {"window", {{"start", e.window.start.iso()}, {"end", e.window.end.iso()}}},
          {"threshold", e.threshold},
          {"ego_attention", e.ego_attention},
          {"alters", alters},
          {"self_loop", influence(e.self_loop)}};
}

namespace {

json naive_rings(const NodeRecord& n) {
  const int y0 = n.series.start().year();
  const int y1 = n.series.last().year();
  std::vector<double> yearly;
  for (int y = y0; y <= y1; ++y) {
    yearly.push_back(dense_sum(align_daily(n.series, {first_day_of_year(y), last_day_of_year(y)})));
  }
  std::vector<double> cum;
  double c = 0.0;
  for (double v : yearly) cum.push_back(c += v);
  json rings = json::array();
  bool degenerate = false;
  if (c <= 0.0) {
    rings.push_back({{"year", y0}, {"outer_radius", 1.0}, {"color_index", 0}});
    degenerate = true;
  } else {
    for (std::size_t k = 0; k < yearly.size(); ++k) {
      if (yearly[k] == 0.0) degenerate = true;
      rings.push_back({{"year", y0 + static_cast<int>(k)},
                       {"outer_radius", std::sqrt(cum[k] / c)},
                       {"color_index", static_cast<int>(k)}});
    }
  }
  return {{"rings", rings}, {"degenerate", degenerate}};
}

// Slot positions by brute enumeration: with the ego anchored, slots are laid
// out top to bottom and the middle one is the ego's.
std::vector<double> slot_positions(std::size_t n_alters, bool anchored, std::size_t& ego_slot) {
  std::size_t total = n_alters + 1;
  if (anchored && n_alters % 2 == 1) ++total;
  std::vector<double> pos;
  for (std::size_t k = 0; k < total; ++k) pos.push_back(static_cast<double>(k + 1) / static_cast<double>(total + 1));
  ego_slot = total / 2;
  return pos;
}

}  // namespace

json naive_layout_json(const NaiveEgo& e, SortCriterion criterion, const RadiusBounds& bounds,
                       const std::map<std::string, double>* force_y) {
  const auto& w = e.window;
  std::map<std::string, double> attention;
  attention[e.ego->id] = e.ego_attention;
  for (const auto& a : e.alters) attention[a.node->id] = dense_sum(align_daily(a.node->series, w));
  double max_att = 0.0;
  for (const auto& [id, v] : attention) max_att = std::max(max_att, v);

  std::map<std::string, double> y;
  if (criterion == SortCriterion::force) {
    y = *force_y;
  } else if (criterion == SortCriterion::total) {
    std::vector<std::string> ids;
    for (const auto& [id, v] : attention) ids.push_back(id);
    std::size_t unused = 0;
    const auto pos = slot_positions(e.alters.size(), false, unused);
    // Rank = number of nodes strictly ahead.
    for (const auto& u : ids) {
      std::size_t ahead = 0;
      for (const auto& v : ids) {
        if (v == u) continue;
        if (attention[v] > attention[u] || (attention[v] == attention[u] && v < u)) ++ahead;
      }
      y[u] = pos[ahead];
    }
  } else {
    auto ahead_of = [&](const NaiveAlter& v, const NaiveAlter& u) {
      if (criterion == SortCriterion::category) {
        const bool vn = v.node->categories.empty();
        const bool un = u.node->categories.empty();
        if (vn != un) return un;
        if (!vn && v.node->categories.front() != u.node->categories.front()) {
          return v.node->categories.front() < u.node->categories.front();
        }
        const double av = attention[v.node->id];
        const double au = attention[u.node->id];
        if (av != au) return av > au;
        return v.node->id < u.node->id;
      }
      const bool in = criterion == SortCriterion::in;
      const auto& iv = in ? v.incoming : v.outgoing;
      const auto& iu = in ? u.incoming : u.outgoing;
      const double fv = iv ? iv->flux : 0.0;
      const double fu = iu ? iu->flux : 0.0;
      if (fv != fu) return fv > fu;
      return v.node->id < u.node->id;
    };
    std::size_t ego_slot = 0;
    const auto pos = slot_positions(e.alters.size(), true, ego_slot);
    y[e.ego->id] = pos[ego_slot];
    for (const auto& u : e.alters) {
      std::size_t ahead = 0;
      for (const auto& v : e.alters) {
        if (&v != &u && ahead_of(v, u)) ++ahead;
      }
      y[u.node->id] = pos[ahead < ego_slot ? ahead : ahead + 1];
    }
  }

  auto node_json = [&](const NodeRecord& n, double x) {
    const double r = max_att > 0.0 ? bounds.min + (bounds.max - bounds.min) * std::sqrt(attention[n.id] / max_att)
                                   : bounds.min;
    const auto rings = naive_rings(n);
    return json{{"id", n.id},
                {"x", x},
                {"y", y.at(n.id)},
                {"radius", r},
                {"rings", rings["rings"]},
                {"rings_degenerate", rings["degenerate"]}};
  };
  json nodes = json::array();
  nodes.push_back(node_json(*e.ego, 1.0));
  for (const auto& a : e.alters) {
    const double x = w.start == w.end ? 1.0
                                      : static_cast<double>(a.influencing_time - w.start) /
                                            static_cast<double>(w.end - w.start);
    nodes.push_back(node_json(*a.node, x));
  }

  double max_flux = 0.0;
  std::vector<const NaiveInfluence*> all;
  for (const auto& a : e.alters) {
    if (a.incoming) all.push_back(&*a.incoming);
    if (a.outgoing) all.push_back(&*a.outgoing);
  }
  if (e.self_loop) all.push_back(&*e.self_loop);
  for (const auto* i : all) max_flux = std::max(max_flux, i->flux);
  json edges = json::array();
  for (const auto* i : all) {
    edges.push_back({{"source", i->source},
                     {"target", i->target},
                     {"width", max_flux > 0.0 ? i->flux / max_flux : 0.0},
                     {"self_loop", i->source == i->target}});
  }

  return {{"window", {{"start", w.start.iso()}, {"end", w.end.iso()}}},
          {"threshold", e.threshold},
          {"sort", std::string(to_string(criterion))},
          {"bounds", {{"r_min", bounds.min}, {"r_max", bounds.max}}},
          {"nodes", nodes},
          {"edges", edges}};
}

}  // namespace attnflow::oracle
