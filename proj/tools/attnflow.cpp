// Command-line front end: dataset generation, ingest, serving and rendering.

#include <CLI11.hpp>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <pthread.h>
#include <thread>

#include "attentionflow/api.hpp"
#include "attentionflow/serialize.hpp"
#include "attentionflow/store.hpp"
#include "attentionflow/svg.hpp"
#include "attentionflow/synthetic.hpp"

using namespace attnflow;

namespace {

struct EgoArgs {
  std::string snapshot;
  std::string ego;
  std::string start;
  std::string end;
  double threshold = 0.01;
  std::string sort = "force";
};

void add_ego_options(CLI::App* cmd, EgoArgs& a) {
  cmd->add_option("--snapshot", a.snapshot, "Snapshot file")->required();
  cmd->add_option("--ego", a.ego, "Ego node id")->required();
  cmd->add_option("--start", a.start, "Window start (YYYY-MM-DD)");
  cmd->add_option("--end", a.end, "Window end (YYYY-MM-DD)");
  cmd->add_option("--threshold", a.threshold, "Influence threshold in [0, 1]")->capture_default_str();
  cmd->add_option("--sort", a.sort, "force | total | in | out | category")->capture_default_str();
}

QueryParams to_params(const EgoArgs& a) {
  QueryParams p;
  if (!a.start.empty()) p.emplace("start", a.start);
  if (!a.end.empty()) p.emplace("end", a.end);
  p.emplace("threshold", std::to_string(a.threshold));
  p.emplace("sort", a.sort);
  return p;
}

int run_serve(const std::string& snapshot, const std::string& host, int port, const ServiceConfig& config) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  ApiService service(config);
  HttpServer server(service);
  const int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  std::cout << "listening on http://" << host << ":" << bound << std::endl;

  std::thread loader([&] {
    try {
      auto store = std::make_shared<const DatasetStore>(load_snapshot(snapshot));
      std::cout << "loaded snapshot " << store->snapshot_id() << " (" << store->node_count() << " nodes, "
                << store->edge_count() << " edges)" << std::endl;
      service.set_store(std::move(store));
    } catch (const std::exception& e) {
      std::cerr << "failed to load snapshot: " << e.what() << std::endl;
      server.stop();
    }
  });
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  waiter.detach();

  const bool ok = server.listen();
  loader.join();
  return ok ? 0 : 1;
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v != nullptr ? std::string(v) : fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"attnflow: ego-network views over networks of attention series"};
  app.require_subcommand(1);

  std::string nodes_path, edges_path, events_path, out_path;
  auto* ingest_cmd = app.add_subcommand("ingest", "Parse dataset files into a snapshot");
  ingest_cmd->add_option("--nodes", nodes_path, "Nodes file (JSON lines)")->required();
  ingest_cmd->add_option("--edges", edges_path, "Edges file (JSON lines)")->required();
  ingest_cmd->add_option("--events", events_path, "Events file (JSON lines)");
  ingest_cmd->add_option("--out", out_path, "Snapshot output path")->required();

  SyntheticParams gen;
  std::string gen_start;
  auto* gen_cmd = app.add_subcommand("gen-synthetic", "Write a synthetic dataset");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->required();
  gen_cmd->add_option("--nodes", gen.n_nodes, "Number of nodes")->required();
  gen_cmd->add_option("--edges", gen.n_edges, "Number of edges")->required();
  gen_cmd->add_option("--days", gen.n_days, "Timeline length in days")->required();
  gen_cmd->add_option("--spike-rate", gen.spike_rate, "Expected spikes per node-day")->capture_default_str();
  gen_cmd->add_option("--dense-edge-fraction", gen.dense_edge_fraction,
                      "Fraction of edges written with a full weight series")
      ->capture_default_str();
  gen_cmd->add_option("--start", gen_start, "First day of the timeline (YYYY-MM-DD)");
  gen_cmd->add_option("--out", out_path, "Output directory")->required();

  std::string snapshot = env_or("SNAPSHOT", "");
  std::string host = "127.0.0.1";
  int port = std::atoi(env_or("PORT", "8080").c_str());
  ServiceConfig config;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API over a snapshot");
  serve_cmd->add_option("--snapshot", snapshot, "Snapshot file (or SNAPSHOT env)");
  serve_cmd->add_option("--port", port, "Port, 0 for any (or PORT env)")->capture_default_str();
  serve_cmd->add_option("--host", host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--max-alters", config.max_alters, "Alters per ego response")->capture_default_str();
  serve_cmd->add_option("--cors-origin", config.cors_origin, "Access-Control-Allow-Origin")->capture_default_str();

  EgoArgs render_args;
  int width = 960, height = 480;
  auto* render_cmd = app.add_subcommand("render", "Render an ego layout to SVG");
  add_ego_options(render_cmd, render_args);
  render_cmd->add_option("--width", width)->capture_default_str();
  render_cmd->add_option("--height", height)->capture_default_str();
  render_cmd->add_option("--out", out_path, "SVG output path")->required();

  EgoArgs query_args;
  auto* query_cmd = app.add_subcommand("query", "Print the ego response JSON");
  add_ego_options(query_cmd, query_args);

  std::string export_snapshot;
  auto* export_cmd = app.add_subcommand("export", "Write a snapshot back to dataset files");
  export_cmd->add_option("--snapshot", export_snapshot, "Snapshot file")->required();
  export_cmd->add_option("--out", out_path, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (ingest_cmd->parsed()) {
      std::optional<std::filesystem::path> ev;
      if (!events_path.empty()) ev = events_path;
      const auto store = ingest(nodes_path, edges_path, ev);
      const auto id = save_snapshot(store, out_path);
      std::cout << "snapshot " << id << ": " << store.node_count() << " nodes, " << store.edge_count()
                << " edges, " << store.events().size() << " events\n";
    } else if (gen_cmd->parsed()) {
      if (!gen_start.empty()) gen.start_date = DateIndex::parse(gen_start);
      write_synthetic(generate_synthetic(gen), out_path);
      std::cout << "wrote " << gen.n_nodes << " nodes, " << gen.n_edges << " edges to " << out_path << "\n";
    } else if (serve_cmd->parsed()) {
      if (snapshot.empty()) {
        std::cerr << "serve needs --snapshot or SNAPSHOT\n";
        return 2;
      }
      return run_serve(snapshot, host, port, config);
    } else if (render_cmd->parsed() || query_cmd->parsed()) {
      const EgoArgs& a = render_cmd->parsed() ? render_args : query_args;
      const auto store = load_snapshot(a.snapshot);
      const NodeRecord* ego = store.find_node(a.ego);
      if (ego == nullptr) throw NotFoundError("unknown node id '" + a.ego + "'");
      const auto q = parse_ego_query(*ego, to_params(a));
      auto net = extract_ego_network(store, q.ego_id, q.window, q.threshold);
      if (query_cmd->parsed()) {
        EgoResponseExtras extras{net.alters.size(), cap_alters(net, config.max_alters) > 0};
        std::cout << canonical_dump(ego_response(store, net, resolve_layout(net, q.sort, q.bounds), extras)) << "\n";
      } else {
        std::ofstream out(out_path);
        out << render_svg(resolve_layout(net, q.sort, q.bounds), net, {width, height});
        if (!out) throw std::runtime_error("failed writing " + out_path);
      }
    } else if (export_cmd->parsed()) {
      export_dataset(load_snapshot(export_snapshot), out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
