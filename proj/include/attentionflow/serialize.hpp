#pragma once

#include <json.hpp>
#include <string>

#include "attentionflow/influence.hpp"
#include "attentionflow/layout.hpp"
#include "attentionflow/store.hpp"

namespace attnflow {

// Objects serialize with keys in sorted order, so dump() of any value built
// here is canonical: equal values give identical bytes.

nlohmann::json to_json(const ObservationWindow& w);
nlohmann::json to_json(const ResolvedLayout& layout);
nlohmann::json to_json(const EgoNetwork& ego_net);
nlohmann::json to_json(const SearchHit& hit);
nlohmann::json to_json(const EventRecord& ev);

/// Node metadata, full series, and its (plus global) events.
nlohmann::json node_detail(const DatasetStore& store, const NodeRecord& node);

struct EgoResponseExtras {
  std::size_t alters_total = 0;  // visible alters before capping
  bool truncated = false;
};

/// Everything the client needs for one ego view, hover data included.
nlohmann::json ego_response(const DatasetStore& store, const EgoNetwork& ego_net,
                            const ResolvedLayout& layout, const EgoResponseExtras& extras);

std::string canonical_dump(const nlohmann::json& j);

}  // namespace attnflow
