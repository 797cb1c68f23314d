#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "attentionflow/layout.hpp"
#include "attentionflow/store.hpp"

namespace attnflow {

struct ServiceConfig {
  std::size_t max_alters = 200;
  std::string cors_origin = "*";
  ForceParams force;
};

struct ApiResponse {
  int status = 200;
  std::string body;
};

using QueryParams = std::multimap<std::string, std::string>;

/// Parameters of an ego view request after defaults are applied.
struct EgoQuery {
  std::string ego_id;
  ObservationWindow window;
  double threshold = 0.01;
  SortCriterion sort = SortCriterion::force;
  RadiusBounds bounds;
};

class BadRequest : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Missing start/end default to the ego's lifetime. Throws BadRequest.
EgoQuery parse_ego_query(const NodeRecord& ego, const QueryParams& params);

/// Transport-independent request handling. Every handler reads one immutable
/// store snapshot, so concurrent calls are safe. Bodies are canonical JSON.
class ApiService {
 public:
  explicit ApiService(ServiceConfig config = {});

  void set_store(std::shared_ptr<const DatasetStore> store);
  [[nodiscard]] std::shared_ptr<const DatasetStore> store() const;
  [[nodiscard]] const ServiceConfig& config() const { return config_; }

  [[nodiscard]] ApiResponse healthz() const;
  [[nodiscard]] ApiResponse search(const QueryParams& params) const;
  [[nodiscard]] ApiResponse node(std::string_view id) const;
  [[nodiscard]] ApiResponse ego(std::string_view id, const QueryParams& params) const;

  /// Routes a GET path (already URL-decoded) to one of the handlers above.
  [[nodiscard]] ApiResponse get(std::string_view path, const QueryParams& params) const;

 private:
  ServiceConfig config_;
  mutable std::mutex mutex_;
  std::shared_ptr<const DatasetStore> store_;
};

/// HTTP front end for an ApiService.
class HttpServer {
 public:
  explicit HttpServer(const ApiService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks serving requests until stop().
  bool listen();
  /// Stops accepting and lets in-flight requests finish.
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace attnflow
