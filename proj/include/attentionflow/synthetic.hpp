#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "attentionflow/date.hpp"
#include "attentionflow/model.hpp"

namespace attnflow {

struct SyntheticParams {
  std::uint64_t seed = 1;
  std::size_t n_nodes = 1000;
  std::size_t n_edges = 5000;
  std::int32_t n_days = 3 * 365;
  double spike_rate = 0.01;  // expected spikes per node-day
  DateIndex start_date = DateIndex::from_ymd(2015, 1, 1);
  double dense_edge_fraction = 0.3;  // remaining edges are written as a scalar weight

  /// Throws std::invalid_argument on inconsistent parameters.
  void validate() const;
};

/// Ids of the engineered motif nodes, always present in a generated dataset.
struct SyntheticMotifs {
  std::string resurrected;  // older node whose attention revives...
  std::string release;      // ...a few days after this node is created
  std::string twin_a;
  std::string twin_b;
};

/// In-memory records, in file order. Edge weights of scalar-weight edges are
/// kept as a scalar here and expanded on ingest.
struct SyntheticDataset {
  struct Edge {
    std::string source;
    std::string target;
    bool dense = false;
    DateIndex start;
    std::vector<double> values;  // dense only
    double weight = 0.0;         // scalar only
  };
  std::vector<NodeRecord> nodes;
  std::vector<Edge> edges;
  std::vector<EventRecord> events;
  SyntheticMotifs motifs;
};

/// Log-normal base attention with Poisson-timed multiplicative spikes per
/// node; edge fluxes a random fraction of the source's attention; a weakly
/// connected graph containing the motif pairs. Deterministic in the seed.
SyntheticDataset generate_synthetic(const SyntheticParams& params);

/// Writes nodes.jsonl, edges.jsonl and events.jsonl into `dir`.
void write_synthetic(const SyntheticDataset& data, const std::filesystem::path& dir);

}  // namespace attnflow
