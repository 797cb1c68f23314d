#include "attentionflow/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace attnflow {

using nlohmann::json;

void SyntheticParams::validate() const {
  if (n_nodes < 4) throw std::invalid_argument("need at least 4 nodes for the motif pairs");
  if (n_edges + 1 < n_nodes) throw std::invalid_argument("n_edges must be >= n_nodes - 1");
  if (n_edges > n_nodes * (n_nodes - 1)) throw std::invalid_argument("n_edges exceeds n_nodes*(n_nodes-1)");
  if (n_days < 30) throw std::invalid_argument("n_days must be >= 30");
  if (!(spike_rate >= 0.0 && spike_rate <= 1.0)) throw std::invalid_argument("spike_rate must lie in [0, 1]");
  if (!(dense_edge_fraction >= 0.0 && dense_edge_fraction <= 1.0)) {
    throw std::invalid_argument("dense_edge_fraction must lie in [0, 1]");
  }
}

namespace {

constexpr const char* kAdjectives[] = {"Golden", "Silent", "Electric", "Broken", "Midnight",
                                       "Crystal", "Wild",   "Lonely",   "Neon",   "Velvet",
                                       "Burning", "Frozen", "Hidden",   "Sweet",  "Distant"};
constexpr const char* kNouns[] = {"Heart", "River", "Summer", "Dream", "Fire",  "Road",
                                  "Light", "Echo",  "Storm",  "Ocean", "City",  "Shadow",
                                  "Rain",  "Star",  "Garden", "Mirror"};
constexpr const char* kGenres[] = {"pop", "rock", "hip hop", "electronic", "country", "r&b", "jazz", "latin"};

double round_to(double x, double scale) { return std::round(x * scale) / scale; }

struct Spike {
  std::int32_t day;
  double amplitude;
  double decay;
};

class Generator {
 public:
  explicit Generator(const SyntheticParams& p) : p_(p), rng_(p.seed) {}

  SyntheticDataset run() {
    const std::size_t n = p_.n_nodes;
    release_day_ = static_cast<std::int32_t>(0.7 * p_.n_days);
    resurrect_offset_ = std::uniform_int_distribution<std::int32_t>(1, 5)(rng_);
    award_day_ = static_cast<std::int32_t>(0.3 * p_.n_days);

    created_.resize(n);
    for (std::size_t i = 0; i < n; ++i) created_[i] = creation_day(i);

    data_.motifs = {node_id(0), node_id(1), node_id(2), node_id(3)};
    for (std::size_t i = 0; i < n; ++i) data_.nodes.push_back(make_node(i));
    make_twin(data_.nodes[3], data_.nodes[2]);
    make_edges();
    make_events();
    return std::move(data_);
  }

 private:
  std::string node_id(std::size_t i) const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "n%06zu", i);
    return buf;
  }

  std::int32_t creation_day(std::size_t i) {
    switch (i) {
      case 0: return 0;
      case 1: return release_day_;
      case 2:
      case 3: return p_.n_days / 10;
      default: break;
    }
    if (std::bernoulli_distribution(0.4)(rng_)) return 0;
    return std::uniform_int_distribution<std::int32_t>(0, static_cast<std::int32_t>(0.9 * p_.n_days))(rng_);
  }

  std::vector<double> make_series(std::int32_t created, std::vector<Spike> spikes, double base,
                                  double release_amp, double release_decay) {
    const std::int32_t len = p_.n_days - created;
    std::poisson_distribution<int> n_spikes(p_.spike_rate * len);
    std::uniform_int_distribution<std::int32_t> when(0, len - 1);
    std::uniform_real_distribution<double> amp(2.0, 10.0);
    std::uniform_real_distribution<double> decay(2.0, 10.0);
    for (int k = n_spikes(rng_); k > 0; --k) {
      const std::int32_t at = when(rng_);
      const double a = amp(rng_);
      spikes.push_back({created + at, a, decay(rng_)});
    }
    std::lognormal_distribution<double> noise(0.0, 0.15);
    std::vector<double> values(static_cast<std::size_t>(len));
    for (std::int32_t age = 0; age < len; ++age) {
      const std::int32_t day = created + age;
      double mult = 1.0 + release_amp * std::exp(-age / release_decay);
      for (const auto& s : spikes) {
        if (day >= s.day) mult += s.amplitude * std::exp(-(day - s.day) / s.decay);
      }
      values[static_cast<std::size_t>(age)] = std::round(base * mult * noise(rng_));
    }
    return values;
  }

  NodeRecord make_node(std::size_t i) {
    std::uniform_int_distribution<std::size_t> adj(0, std::size(kAdjectives) - 1);
    std::uniform_int_distribution<std::size_t> noun(0, std::size(kNouns) - 1);
    std::uniform_int_distribution<std::size_t> genre(0, std::size(kGenres) - 1);
    std::uniform_int_distribution<int> n_cats(0, 2);
    std::lognormal_distribution<double> base(std::log(200.0), 1.2);
    std::uniform_real_distribution<double> release_amp(2.0, 8.0);
    std::uniform_real_distribution<double> release_decay(10.0, 60.0);

    NodeRecord node;
    node.id = node_id(i);
    const int artist = std::uniform_int_distribution<int>(1, static_cast<int>(p_.n_nodes / 5 + 1))(rng_);
    node.name = std::string(kAdjectives[adj(rng_)]) + " " + kNouns[noun(rng_)] + " " + std::to_string(i);
    node.meta["artist"] = "Artist " + std::to_string(artist);
    for (int k = n_cats(rng_); k > 0; --k) {
      const std::string g = kGenres[genre(rng_)];
      if (std::find(node.categories.begin(), node.categories.end(), g) == node.categories.end()) {
        node.categories.push_back(g);
      }
    }

    std::vector<Spike> spikes;
    double b = base(rng_);
    double ra = release_amp(rng_);
    double rd = release_decay(rng_);
    switch (i) {
      case 0:
        node.name = "Resurrected Anthem";
        node.meta["motif"] = "resurrected";
        b = 800.0;
        spikes.push_back({award_day_, 6.0, 8.0});
        spikes.push_back({release_day_ + resurrect_offset_, 12.0, 20.0});
        break;
      case 1:
        node.name = "New Release";
        node.meta["motif"] = "release";
        b = 600.0;
        ra = 25.0;
        rd = 30.0;
        break;
      case 2:
        node.name = "Twin Ballad A";
        node.meta["motif"] = "twin_a";
        b = 500.0;
        spikes.push_back({release_day_ + resurrect_offset_, 8.0, 20.0});
        break;
      case 3:
        node.name = "Twin Ballad B";
        node.meta["motif"] = "twin_b";
        break;
      default: break;
    }
    node.series = AttentionSeries(p_.start_date + created_[i], make_series(created_[i], spikes, b, ra, rd));
    return node;
  }

  void make_twin(NodeRecord& twin, const NodeRecord& original) {
    std::lognormal_distribution<double> noise(0.0, 0.05);
    auto values = original.series.to_dense();
    for (double& v : values) v = std::round(v * 0.85 * noise(rng_));
    twin.series = AttentionSeries(original.series.start(), std::move(values));
  }

  void add_edge(std::size_t s, std::size_t t, double fraction, bool dense) {
    const auto& src = data_.nodes[s].series;
    const DateIndex lo = std::max(src.start(), data_.nodes[t].series.start());
    const DateIndex hi = p_.start_date + (p_.n_days - 1);
    SyntheticDataset::Edge e;
    e.source = data_.nodes[s].id;
    e.target = data_.nodes[t].id;
    e.dense = dense;
    e.start = lo;
    if (dense) {
      for (DateIndex d = lo; d <= hi; ++d) e.values.push_back(round_to(fraction * src.at(d), 1000.0));
    } else {
      double sum = 0.0;
      for (DateIndex d = lo; d <= hi; ++d) sum += src.at(d);
      e.weight = round_to(fraction * sum / static_cast<double>(hi - lo + 1), 1000.0);
    }
    data_.edges.push_back(std::move(e));
  }

  void make_edges() {
    const std::size_t n = p_.n_nodes;
    std::unordered_set<std::uint64_t> present;
    auto key = [](std::size_t s, std::size_t t) { return (static_cast<std::uint64_t>(s) << 32) | t; };
    std::uniform_real_distribution<double> log_fraction(std::log(0.002), std::log(0.08));
    std::bernoulli_distribution dense(p_.dense_edge_fraction);
    std::bernoulli_distribution coin(0.5);
    auto try_add = [&](std::size_t s, std::size_t t, double fraction, bool force_dense) {
      if (data_.edges.size() >= p_.n_edges || !present.insert(key(s, t)).second) return;
      add_edge(s, t, fraction, force_dense || dense(rng_));
    };

    // Spanning tree over nodes in index order; the motif links are tree edges.
    for (std::size_t i = 1; i < n; ++i) {
      if (i == 1) {
        try_add(1, 0, 0.3, true);
      } else if (i == 3) {
        try_add(2, 3, 0.1, true);
      } else {
        const auto parent = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng_);
        const double f = std::exp(log_fraction(rng_));
        if (coin(rng_)) {
          try_add(i, parent, f, false);
        } else {
          try_add(parent, i, f, false);
        }
      }
    }
    try_add(3, 2, 0.1, true);
    try_add(0, 0, 0.05, true);

    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (data_.edges.size() < p_.n_edges) {
      const auto s = pick(rng_);
      const auto t = pick(rng_);
      if (s == t) continue;
      const double f = std::exp(log_fraction(rng_));
      try_add(s, t, f, false);
    }
  }

  void make_events() {
    EventRecord award;
    award.node_id = node_id(0);
    award.date = p_.start_date + (award_day_ - 1);
    award.label = "Annual Music Awards";
    award.url = "https://example.org/awards";
    data_.events.push_back(award);

    EventRecord release;
    release.node_id = node_id(1);
    release.date = p_.start_date + release_day_;
    release.label = "Release of New Release";
    data_.events.push_back(release);

    const DateIndex last = p_.start_date + (p_.n_days - 1);
    for (int y = p_.start_date.year(); y <= last.year(); ++y) {
      const DateIndex d = DateIndex::from_ymd(y, 12, 1);
      if (d < p_.start_date || d > last) continue;
      data_.events.push_back({"", d, "Year-end charts " + std::to_string(y), std::nullopt});
    }
  }

  const SyntheticParams& p_;
  std::mt19937_64 rng_;
  std::vector<std::int32_t> created_;
  std::int32_t release_day_ = 0;
  std::int32_t resurrect_offset_ = 1;
  std::int32_t award_day_ = 0;
  SyntheticDataset data_;
};

}  // namespace

SyntheticDataset generate_synthetic(const SyntheticParams& params) {
  params.validate();
  return Generator(params).run();
}

void write_synthetic(const SyntheticDataset& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream nodes(dir / "nodes.jsonl");
  for (const auto& n : data.nodes) {
    json meta = json::object();
    for (const auto& [k, v] : n.meta) meta[k] = v;
    nodes << json{{"id", n.id},
                  {"name", n.name},
                  {"created", n.created().iso()},
                  {"categories", n.categories},
                  {"values", n.series.to_dense()},
                  {"meta", meta}}
                 .dump()
          << '\n';
  }
  std::ofstream edges(dir / "edges.jsonl");
  for (const auto& e : data.edges) {
    json j = {{"source", e.source}, {"target", e.target}};
    if (e.dense) {
      j["start"] = e.start.iso();
      j["values"] = e.values;
    } else {
      j["weight"] = e.weight;
    }
    edges << j.dump() << '\n';
  }
  std::ofstream events(dir / "events.jsonl");
  for (const auto& ev : data.events) {
    json j = {{"node_id", ev.node_id}, {"date", ev.date.iso()}, {"label", ev.label}};
    if (ev.url) j["url"] = *ev.url;
    events << j.dump() << '\n';
  }
  if (!nodes || !edges || !events) throw std::runtime_error("failed writing dataset to " + dir.string());
}

}  // namespace attnflow
