#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "attentionflow/store.hpp"
#include "attentionflow/synthetic.hpp"
#include "support/temp_dir.hpp"

using namespace attnflow;
using attnflow::testing::TempDir;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<json> read_lines(const std::filesystem::path& p) {
  std::vector<json> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

SyntheticParams small(std::uint64_t seed, std::size_t nodes, std::size_t edges, std::int32_t days = 730) {
  SyntheticParams p;
  p.seed = seed;
  p.n_nodes = nodes;
  p.n_edges = edges;
  p.n_days = days;
  return p;
}

}  // namespace

TEST_SUITE("synthetic") {
  TEST_CASE("same seed gives byte-identical files") {
    TempDir a, b, c;
    write_synthetic(generate_synthetic(small(1, 200, 800)), a.path());
    write_synthetic(generate_synthetic(small(1, 200, 800)), b.path());
    write_synthetic(generate_synthetic(small(2, 200, 800)), c.path());
    for (const char* f : {"nodes.jsonl", "edges.jsonl", "events.jsonl"}) {
      CHECK(slurp(a / f) == slurp(b / f));
      CHECK_FALSE(slurp(a / f).empty());
    }
    CHECK(slurp(a / "nodes.jsonl") != slurp(c / "nodes.jsonl"));
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(generate_synthetic(small(1, 3, 10)), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic(small(1, 100, 50)), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic(small(1, 10, 200)), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic(small(1, 100, 400, 5)), std::invalid_argument);
    auto p = small(1, 100, 400);
    p.spike_rate = -1.0;
    CHECK_THROWS_AS(generate_synthetic(p), std::invalid_argument);
  }

  TEST_CASE("resurrection motif spikes within a week of the release") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
      TempDir dir;
      write_synthetic(generate_synthetic(small(seed, 100, 400, 1095)), dir.path());
      std::map<std::string, json> by_motif;
      for (auto& n : read_lines(dir / "nodes.jsonl")) {
        if (n["meta"].contains("motif")) by_motif[n["meta"]["motif"]] = n;
      }
      REQUIRE(by_motif.contains("resurrected"));
      REQUIRE(by_motif.contains("release"));
      const auto& old = by_motif["resurrected"];
      const auto& fresh = by_motif["release"];
      const DateIndex old_start = DateIndex::parse(old["created"].get<std::string>());
      const DateIndex release = DateIndex::parse(fresh["created"].get<std::string>());
      CHECK(old_start < release);
      const std::vector<double> v = old["values"];
      const auto at = [&](DateIndex d) { return v.at(static_cast<std::size_t>(d - old_start)); };

      // Baseline: median of the four weeks before the release.
      std::vector<double> before;
      for (DateIndex d = release - 28; d < release; ++d) before.push_back(at(d));
      std::nth_element(before.begin(), before.begin() + 14, before.end());
      const double baseline = before[14];
      double peak = 0.0;
      for (DateIndex d = release + 1; d <= release + 7; ++d) peak = std::max(peak, at(d));
      CHECK_MESSAGE(peak >= 3.0 * baseline, "seed " << seed);
    }
  }

  TEST_CASE("twin motif series move together") {
    const auto data = generate_synthetic(small(3, 100, 400, 1095));
    const NodeRecord* a = nullptr;
    const NodeRecord* b = nullptr;
    for (const auto& n : data.nodes) {
      if (n.id == data.motifs.twin_a) a = &n;
      if (n.id == data.motifs.twin_b) b = &n;
    }
    REQUIRE(a != nullptr);
    REQUIRE(b != nullptr);
    const auto va = a->series.to_dense();
    const auto vb = b->series.to_dense();
    REQUIRE(va.size() == vb.size());
    const double ma = std::accumulate(va.begin(), va.end(), 0.0) / static_cast<double>(va.size());
    const double mb = std::accumulate(vb.begin(), vb.end(), 0.0) / static_cast<double>(vb.size());
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
      sab += (va[i] - ma) * (vb[i] - mb);
      saa += (va[i] - ma) * (va[i] - ma);
      sbb += (vb[i] - mb) * (vb[i] - mb);
    }
    CHECK(sab / std::sqrt(saa * sbb) > 0.9);
  }

  TEST_CASE("100 nodes and 400 edges form a weakly connected graph") {
    for (std::uint64_t seed : {1u, 7u, 42u}) {
      TempDir dir;
      write_synthetic(generate_synthetic(small(seed, 100, 400)), dir.path());
      std::map<std::string, std::size_t> index;
      for (const auto& n : read_lines(dir / "nodes.jsonl")) index.emplace(n["id"], index.size());
      REQUIRE(index.size() == 100);
      UnionFind uf(index.size());
      const auto edges = read_lines(dir / "edges.jsonl");
      CHECK(edges.size() == 400);
      for (const auto& e : edges) uf.unite(index.at(e["source"]), index.at(e["target"]));
      std::size_t roots = 0;
      for (std::size_t i = 0; i < index.size(); ++i) roots += uf.find(i) == i ? 1 : 0;
      CHECK(roots == 1);
    }
  }

  TEST_CASE("10k-node dataset ingests and matches an independent re-parse") {
    TempDir dir;
    auto p = small(11, 10000, 50000, 365);
    write_synthetic(generate_synthetic(p), dir.path());
    const auto store = ingest(dir / "nodes.jsonl", dir / "edges.jsonl", dir / "events.jsonl");
    CHECK(store.node_count() == 10000);
    CHECK(store.edge_count() == 50000);

    const auto raw = read_lines(dir / "nodes.jsonl");
    std::mt19937_64 rng(5);
    const DateIndex first = p.start_date;
    for (int k = 0; k < 100; ++k) {
      const auto& rec = raw[std::uniform_int_distribution<std::size_t>(0, raw.size() - 1)(rng)];
      const int a = std::uniform_int_distribution<int>(-20, 380)(rng);
      const int len = std::uniform_int_distribution<int>(0, 200)(rng);
      const ObservationWindow w{first + a, first + a + len};
      const DateIndex created = DateIndex::parse(rec["created"].get<std::string>());
      double expected = 0.0;
      std::int32_t i = 0;
      for (double v : rec["values"]) {
        if (w.contains(created + i)) expected += v;
        ++i;
      }
      CHECK(window_sum(store.find_node(rec["id"].get<std::string>())->series, w) ==
            doctest::Approx(expected).epsilon(1e-12));
    }

    double file_total = 0.0;
    for (const auto& rec : raw) {
      for (double v : rec["values"]) file_total += v;
    }
    double store_total = 0.0;
    for (const auto& n : store.nodes()) store_total += store.total_attention(n.id);
    CHECK(store_total == doctest::Approx(file_total).epsilon(1e-6));
  }
}
