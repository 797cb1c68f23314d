#include "attentionflow/api.hpp"

#include <charconv>
#include <cmath>
#include <httplib.h>

#include "attentionflow/serialize.hpp"

namespace attnflow {

using nlohmann::json;

namespace {

ApiResponse error(int status, const std::string& message) {
  return {status, canonical_dump({{"error", {{"status", status}, {"message", message}}}})};
}

ApiResponse ok(const json& body) { return {200, canonical_dump(body)}; }

std::optional<std::string> param(const QueryParams& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

double parse_number(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw BadRequest("parameter '" + key + "' must be a number");
  }
  return v;
}

DateIndex parse_date_param(const std::string& key, const std::string& text) {
  try {
    return DateIndex::parse(text);
  } catch (const std::invalid_argument& e) {
    throw BadRequest("parameter '" + key + "': " + e.what());
  }
}

}  // namespace

EgoQuery parse_ego_query(const NodeRecord& ego, const QueryParams& params) {
  EgoQuery q;
  q.ego_id = ego.id;
  const auto start = param(params, "start");
  const auto end = param(params, "end");
  const DateIndex s = start ? parse_date_param("start", *start) : ego.series.start();
  const DateIndex e = end ? parse_date_param("end", *end) : ego.series.last();
  if (e < s) throw BadRequest("window start must not be after end");
  q.window = {s, e};

  if (const auto t = param(params, "threshold")) {
    q.threshold = parse_number("threshold", *t);
    if (q.threshold < 0.0 || q.threshold > 1.0) throw BadRequest("threshold must lie in [0, 1]");
  }
  if (const auto sort = param(params, "sort")) {
    const auto c = parse_sort_criterion(*sort);
    if (!c) throw BadRequest("sort must be one of force, total, in, out, category");
    q.sort = *c;
  }
  if (const auto v = param(params, "r_min")) q.bounds.min = parse_number("r_min", *v);
  if (const auto v = param(params, "r_max")) q.bounds.max = parse_number("r_max", *v);
  if (!(q.bounds.min >= 0.0 && q.bounds.min < q.bounds.max)) {
    throw BadRequest("radius bounds must satisfy 0 <= r_min < r_max");
  }
  return q;
}

ApiService::ApiService(ServiceConfig config) : config_(std::move(config)) {}

void ApiService::set_store(std::shared_ptr<const DatasetStore> store) {
  std::lock_guard lock(mutex_);
  store_ = std::move(store);
}

std::shared_ptr<const DatasetStore> ApiService::store() const {
  std::lock_guard lock(mutex_);
  return store_;
}

ApiResponse ApiService::healthz() const {
  const auto s = store();
  if (!s) return {503, canonical_dump({{"status", "loading"}})};
  return ok({{"status", "ok"},
             {"nodes", s->node_count()},
             {"edges", s->edge_count()},
             {"events", s->events().size()},
             {"snapshot", s->snapshot_id()}});
}

ApiResponse ApiService::search(const QueryParams& params) const {
  const auto s = store();
  if (!s) return error(503, "dataset not loaded");
  const auto q = param(params, "q");
  if (!q) return error(400, "missing parameter 'q'");
  std::size_t limit = 20;
  if (const auto l = param(params, "limit")) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(l->data(), l->data() + l->size(), v);
    if (ec != std::errc{} || ptr != l->data() + l->size() || v < 1) {
      return error(400, "limit must be an integer >= 1");
    }
    limit = static_cast<std::size_t>(v);
  }
  json hits = json::array();
  for (const auto& h : s->search(*q, limit)) hits.push_back(to_json(h));
  return ok({{"query", *q}, {"limit", limit}, {"hits", hits}});
}

ApiResponse ApiService::node(std::string_view id) const {
  const auto s = store();
  if (!s) return error(503, "dataset not loaded");
  const NodeRecord* n = s->find_node(id);
  if (n == nullptr) return error(404, "unknown node id '" + std::string(id) + "'");
  return ok(node_detail(*s, *n));
}

ApiResponse ApiService::ego(std::string_view id, const QueryParams& params) const {
  const auto s = store();
  if (!s) return error(503, "dataset not loaded");
  const NodeRecord* n = s->find_node(id);
  if (n == nullptr) return error(404, "unknown node id '" + std::string(id) + "'");
  try {
    const EgoQuery q = parse_ego_query(*n, params);
    EgoNetwork net = extract_ego_network(*s, q.ego_id, q.window, q.threshold);
    EgoResponseExtras extras;
    extras.alters_total = net.alters.size();
    extras.truncated = cap_alters(net, config_.max_alters) > 0;
    const auto layout = resolve_layout(net, q.sort, q.bounds, config_.force);
    return ok(ego_response(*s, net, layout, extras));
  } catch (const BadRequest& e) {
    return error(400, e.what());
  }
}

ApiResponse ApiService::get(std::string_view path, const QueryParams& params) const {
  constexpr std::string_view kNodes = "/api/nodes/";
  if (path == "/api/healthz") return healthz();
  if (path == "/api/search") return search(params);
  if (path.starts_with(kNodes)) {
    std::string_view rest = path.substr(kNodes.size());
    constexpr std::string_view kEgo = "/ego";
    if (rest.ends_with(kEgo)) {
      rest.remove_suffix(kEgo.size());
      if (!rest.empty() && rest.find('/') == std::string_view::npos) return ego(rest, params);
    } else if (!rest.empty() && rest.find('/') == std::string_view::npos) {
      return node(rest);
    }
  }
  return error(404, "no route for " + std::string(path));
}

struct HttpServer::Impl {
  const ApiService& service;
  httplib::Server server;
};

HttpServer::HttpServer(const ApiService& service) : impl_(new Impl{service, {}}) {
  auto& srv = impl_->server;
  const std::string origin = service.config().cors_origin;
  srv.set_default_headers({{"Access-Control-Allow-Origin", origin},
                           {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  srv.Get(R"(/api/.*)", [this](const httplib::Request& req, httplib::Response& res) {
    QueryParams params(req.params.begin(), req.params.end());
    const auto r = impl_->service.get(req.path, params);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
  srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace attnflow
