#include "attentionflow/layout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "attentionflow/hash.hpp"

namespace attnflow {

std::string_view to_string(SortCriterion c) {
  switch (c) {
    case SortCriterion::force: return "force";
    case SortCriterion::total: return "total";
    case SortCriterion::in: return "in";
    case SortCriterion::out: return "out";
    case SortCriterion::category: return "category";
  }
  return "force";
}

std::optional<SortCriterion> parse_sort_criterion(std::string_view s) {
  for (auto c : {SortCriterion::force, SortCriterion::total, SortCriterion::in,
                 SortCriterion::out, SortCriterion::category}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

TreeRings tree_rings(const NodeRecord& node) {
  const auto years = year_partition(node.series);
  TreeRings out;

  std::vector<double> cumulative;
  cumulative.reserve(years.size());
  double running = 0.0;
  for (const auto& y : years) {
    running += y.sum;
    cumulative.push_back(running);
  }
  const double total = running;
  if (total <= 0.0) {
    out.rings.push_back({years.front().year, 1.0, 0});
    out.degenerate = true;
    return out;
  }

  const int first_year = years.front().year;
  for (std::size_t k = 0; k < years.size(); ++k) {
    if (years[k].sum == 0.0) out.degenerate = true;
    out.rings.push_back({years[k].year, std::sqrt(cumulative[k] / total), years[k].year - first_year});
  }
  return out;
}

std::map<std::string, double> node_radius(const EgoNetwork& ego_net, const RadiusBounds& bounds) {
  if (!(bounds.min < bounds.max)) throw std::invalid_argument("r_min must be below r_max");
  std::map<std::string, double> attention;
  attention[ego_net.ego->id] = ego_net.ego_attention;
  for (const auto& a : ego_net.alters) attention[a.node->id] = window_sum(a.node->series, ego_net.window);

  double max_attention = 0.0;
  for (const auto& [id, v] : attention) max_attention = std::max(max_attention, v);

  std::map<std::string, double> radii;
  for (const auto& [id, v] : attention) {
    radii[id] = max_attention > 0.0
                    ? bounds.min + (bounds.max - bounds.min) * std::sqrt(v / max_attention)
                    : bounds.min;
  }
  return radii;
}

double x_position(DateIndex t, const ObservationWindow& window) {
  if (!window.contains(t)) {
    throw std::out_of_range("day " + t.iso() + " lies outside the observation window");
  }
  if (window.start == window.end) return 1.0;
  return static_cast<double>(t - window.start) / static_cast<double>(window.end - window.start);
}

namespace {

// Evenly spaced slots top to bottom. When the ego is anchored, the centre
// slot is reserved for it and an empty slot is added for odd alter counts so
// that the centre stays at 0.5.
std::map<std::string, double> assign_slots(const std::vector<std::string>& ranked,
                                           const std::string& ego_id, bool anchor_ego) {
  std::map<std::string, double> y;
  if (!anchor_ego) {
    const double slots = static_cast<double>(ranked.size());
    for (std::size_t k = 0; k < ranked.size(); ++k) {
      y[ranked[k]] = static_cast<double>(k + 1) / (slots + 1.0);
    }
    return y;
  }
  const std::size_t n = ranked.size();
  const std::size_t slots = n % 2 == 1 ? n + 2 : n + 1;
  const std::size_t centre = slots / 2;
  y[ego_id] = static_cast<double>(centre + 1) / static_cast<double>(slots + 1);
  std::size_t slot = 0;
  for (const auto& id : ranked) {
    if (slot == centre) ++slot;
    y[id] = static_cast<double>(slot + 1) / static_cast<double>(slots + 1);
    ++slot;
  }
  return y;
}

std::vector<std::string> rank_descending(std::vector<std::pair<std::string, double>> metric) {
  std::sort(metric.begin(), metric.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> ids;
  ids.reserve(metric.size());
  for (auto& m : metric) ids.push_back(std::move(m.first));
  return ids;
}

constexpr double kAttraction = 1.0;
constexpr double kRepulsion = 0.002;
constexpr double kSoftening = 1e-4;
constexpr double kStepScale = 0.1;
constexpr double kMaxStep = 0.05;
constexpr double kMinGap = 1e-9;

// Keeps alter y values pairwise distinct and distinct from the ego's.
void separate(std::map<std::string, double>& y, const std::string& ego_id) {
  std::vector<std::pair<double, std::string>> order;
  for (const auto& [id, v] : y) {
    if (id != ego_id) order.emplace_back(v, id);
  }
  if (order.empty()) return;
  std::sort(order.begin(), order.end());
  for (std::size_t k = 1; k < order.size(); ++k) {
    order[k].first = std::max(order[k].first, order[k - 1].first + kMinGap);
  }
  order.back().first = std::min(order.back().first, 1.0);
  for (std::size_t k = order.size() - 1; k-- > 0;) {
    order[k].first = std::min(order[k].first, order[k + 1].first - kMinGap);
  }
  const double ego_y = y.at(ego_id);
  for (auto& [v, id] : order) {
    if (v == ego_y) v += kMinGap / 2;
    y[id] = v;
  }
}

}  // namespace

double seeded_position(std::string_view id, std::uint64_t seed) {
  const std::uint64_t h = splitmix64(fnv1a64(id) ^ splitmix64(seed));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::map<std::string, double> force_layout_1d_from(
    const EgoNetwork& ego_net, const std::map<std::string, double>& x_positions,
    const std::map<std::string, double>& radii, std::map<std::string, double> initial,
    int iterations) {
  if (iterations < 1) throw std::invalid_argument("force layout needs at least one iteration");
  const std::string& ego_id = ego_net.ego->id;

  struct Body {
    const std::string* id;
    double x;
    double r;
    double y;
    bool pinned;
  };
  std::vector<Body> bodies;
  bodies.push_back({&ego_id, x_positions.at(ego_id), radii.at(ego_id), 0.5, true});
  for (const auto& a : ego_net.alters) {
    const std::string& id = a.node->id;
    bodies.push_back({&id, x_positions.at(id), radii.at(id), initial.at(id), false});
  }

  std::vector<double> next(bodies.size());
  for (int it = 0; it < iterations; ++it) {
    const double limit = kMaxStep * (1.0 - static_cast<double>(it) / iterations);
    for (std::size_t i = 0; i < bodies.size(); ++i) {
      const Body& b = bodies[i];
      if (b.pinned) {
        next[i] = b.y;
        continue;
      }
      double force = -kAttraction * (b.y - 0.5);
      for (std::size_t j = 0; j < bodies.size(); ++j) {
        if (j == i) continue;
        const Body& o = bodies[j];
        const double dx = b.x - o.x;
        const double dy = b.y - o.y;
        const double dist2 = dx * dx + dy * dy + kSoftening;
        double dir = dy > 0.0 ? 1.0 : (dy < 0.0 ? -1.0 : 0.0);
        if (dir == 0.0) dir = *b.id < *o.id ? -1.0 : 1.0;
        force += kRepulsion * (b.r + o.r) * dir / dist2;
      }
      const double step = std::clamp(force * kStepScale, -limit, limit);
      next[i] = std::clamp(b.y + step, 0.0, 1.0);
    }
    for (std::size_t i = 0; i < bodies.size(); ++i) bodies[i].y = next[i];
  }

  std::map<std::string, double> y;
  for (const auto& b : bodies) y[*b.id] = b.y;
  separate(y, ego_id);
  return y;
}

std::map<std::string, double> force_layout_1d(const EgoNetwork& ego_net,
                                              const std::map<std::string, double>& x_positions,
                                              const std::map<std::string, double>& radii,
                                              std::uint64_t seed, int iterations) {
  std::map<std::string, double> initial;
  for (const auto& a : ego_net.alters) initial[a.node->id] = seeded_position(a.node->id, seed);
  return force_layout_1d_from(ego_net, x_positions, radii, std::move(initial), iterations);
}

namespace {

std::map<std::string, double> alter_x_positions(const EgoNetwork& ego_net) {
  std::map<std::string, double> xs;
  xs[ego_net.ego->id] = 1.0;
  for (const auto& a : ego_net.alters) xs[a.node->id] = x_position(a.influencing_time, ego_net.window);
  return xs;
}

}  // namespace

std::map<std::string, double> vertical_order(const EgoNetwork& ego_net, SortCriterion criterion,
                                             const RadiusBounds& bounds,
                                             const ForceParams& force) {
  const std::string& ego_id = ego_net.ego->id;
  switch (criterion) {
    case SortCriterion::force:
      return force_layout_1d(ego_net, alter_x_positions(ego_net), node_radius(ego_net, bounds),
                             force.seed, force.iterations);

    case SortCriterion::total: {
      std::vector<std::pair<std::string, double>> metric;
      metric.emplace_back(ego_id, ego_net.ego_attention);
      for (const auto& a : ego_net.alters) {
        metric.emplace_back(a.node->id, window_sum(a.node->series, ego_net.window));
      }
      return assign_slots(rank_descending(std::move(metric)), ego_id, false);
    }

    case SortCriterion::in:
    case SortCriterion::out: {
      const bool incoming = criterion == SortCriterion::in;
      std::vector<std::pair<std::string, double>> metric;
      for (const auto& a : ego_net.alters) {
        const auto& inf = incoming ? a.incoming : a.outgoing;
        metric.emplace_back(a.node->id, inf ? inf->flux : 0.0);
      }
      return assign_slots(rank_descending(std::move(metric)), ego_id, true);
    }

    case SortCriterion::category: {
      using Key = std::tuple<bool, std::string, double, std::string>;
      std::vector<Key> keys;
      for (const auto& a : ego_net.alters) {
        const auto& cats = a.node->categories;
        keys.emplace_back(cats.empty(), cats.empty() ? std::string{} : cats.front(),
                          -window_sum(a.node->series, ego_net.window), a.node->id);
      }
      std::sort(keys.begin(), keys.end());
      std::vector<std::string> ranked;
      for (auto& k : keys) ranked.push_back(std::move(std::get<3>(k)));
      return assign_slots(ranked, ego_id, true);
    }
  }
  throw std::invalid_argument("unknown sort criterion");
}

ResolvedLayout resolve_layout(const EgoNetwork& ego_net, SortCriterion criterion,
                              const RadiusBounds& bounds, const ForceParams& force) {
  ResolvedLayout layout;
  layout.window = ego_net.window;
  layout.threshold = ego_net.threshold;
  layout.criterion = criterion;
  layout.bounds = bounds;

  const auto radii = node_radius(ego_net, bounds);
  const auto xs = alter_x_positions(ego_net);
  const auto ys = vertical_order(ego_net, criterion, bounds, force);

  auto geometry = [&](const NodeRecord& n) {
    return NodeGeometry{n.id, xs.at(n.id), ys.at(n.id), radii.at(n.id), tree_rings(n)};
  };
  layout.nodes.push_back(geometry(*ego_net.ego));
  for (const auto& a : ego_net.alters) layout.nodes.push_back(geometry(*a.node));

  const auto widths = relative_edge_widths(ego_net);
  auto add_edge = [&](const EdgeInfluence& inf) {
    const auto& e = *inf.edge;
    layout.edges.push_back({e.source, e.target, widths.at({e.source, e.target}), e.is_self_loop()});
  };
  for (const auto& a : ego_net.alters) {
    if (a.incoming) add_edge(*a.incoming);
    if (a.outgoing) add_edge(*a.outgoing);
  }
  if (ego_net.self_loop) add_edge(*ego_net.self_loop);
  return layout;
}

}  // namespace attnflow
