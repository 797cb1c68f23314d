#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "attentionflow/api.hpp"
#include "attentionflow/serialize.hpp"
#include "attentionflow/store.hpp"
#include "attentionflow/svg.hpp"
#include "attentionflow/synthetic.hpp"

namespace py = pybind11;
using namespace attnflow;

namespace {

ObservationWindow window_of(const std::string& start, const std::string& end) {
  return ObservationWindow::make(DateIndex::parse(start), DateIndex::parse(end));
}

AttentionSeries series_of(const std::string& start, std::vector<double> values) {
  return AttentionSeries(DateIndex::parse(start), std::move(values));
}

QueryParams ego_params(const std::optional<std::string>& start, const std::optional<std::string>& end,
                       double threshold, const std::string& sort) {
  QueryParams p;
  if (start) p.emplace("start", *start);
  if (end) p.emplace("end", *end);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", threshold);
  p.emplace("threshold", buf);
  p.emplace("sort", sort);
  return p;
}

struct EgoBuild {
  EgoQuery query;
  EgoNetwork net;
};

EgoBuild build_ego(const DatasetStore& store, const std::string& id, const QueryParams& params) {
  const NodeRecord* n = store.find_node(id);
  if (n == nullptr) throw py::key_error("unknown node id '" + id + "'");
  auto q = parse_ego_query(*n, params);
  auto net = extract_ego_network(store, q.ego_id, q.window, q.threshold);
  return {std::move(q), std::move(net)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ego-network views over networks of attention series";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_ValueError);
  py::register_exception<DuplicateIdError>(m, "DuplicateIdError", PyExc_ValueError);
  py::register_exception<NotFoundError>(m, "NotFoundError", PyExc_KeyError);

  m.def("window_sum",
        [](const std::string& start, std::vector<double> values, const std::string& ws, const std::string& we) {
          return window_sum(series_of(start, std::move(values)), window_of(ws, we));
        },
        py::arg("start"), py::arg("values"), py::arg("window_start"), py::arg("window_end"));

  m.def("align_daily",
        [](const std::string& start, std::vector<double> values, const std::string& ws, const std::string& we) {
          return align_daily(series_of(start, std::move(values)), window_of(ws, we));
        },
        py::arg("start"), py::arg("values"), py::arg("window_start"), py::arg("window_end"));

  m.def("year_partition",
        [](const std::string& start, std::vector<double> values) {
          std::vector<std::pair<int, double>> out;
          for (const auto& y : year_partition(series_of(start, std::move(values)))) out.emplace_back(y.year, y.sum);
          return out;
        },
        py::arg("start"), py::arg("values"));

  m.def("x_position",
        [](const std::string& t, const std::string& ws, const std::string& we) {
          return x_position(DateIndex::parse(t), window_of(ws, we));
        },
        py::arg("day"), py::arg("window_start"), py::arg("window_end"));

  m.def("generate_synthetic",
        [](const std::filesystem::path& out, std::uint64_t seed, std::size_t nodes, std::size_t edges,
           std::int32_t days, double spike_rate, double dense_edge_fraction) {
          SyntheticParams p;
          p.seed = seed;
          p.n_nodes = nodes;
          p.n_edges = edges;
          p.n_days = days;
          p.spike_rate = spike_rate;
          p.dense_edge_fraction = dense_edge_fraction;
          const auto data = generate_synthetic(p);
          write_synthetic(data, out);
          return py::dict(py::arg("resurrected") = data.motifs.resurrected, py::arg("release") = data.motifs.release,
                          py::arg("twin_a") = data.motifs.twin_a, py::arg("twin_b") = data.motifs.twin_b);
        },
        py::arg("out_dir"), py::arg("seed") = 1, py::arg("nodes") = 1000, py::arg("edges") = 5000,
        py::arg("days") = 3 * 365, py::arg("spike_rate") = 0.01, py::arg("dense_edge_fraction") = 0.3);

  py::class_<DatasetStore, std::shared_ptr<DatasetStore>>(m, "Store")
      .def_static(
          "ingest",
          [](const std::filesystem::path& nodes, const std::filesystem::path& edges,
             std::optional<std::filesystem::path> events) {
            py::gil_scoped_release release;
            return std::make_shared<DatasetStore>(ingest(nodes, edges, events));
          },
          py::arg("nodes"), py::arg("edges"), py::arg("events") = py::none())
      .def_static(
          "load",
          [](const std::filesystem::path& path) {
            py::gil_scoped_release release;
            return std::make_shared<DatasetStore>(load_snapshot(path));
          },
          py::arg("path"))
      .def("save", [](const DatasetStore& s, const std::filesystem::path& p) { return save_snapshot(s, p); },
           py::arg("path"), "Write a snapshot; returns its id")
      .def("export", [](const DatasetStore& s, const std::filesystem::path& dir) { export_dataset(s, dir); },
           py::arg("dir"))
      .def_property_readonly("node_count", &DatasetStore::node_count)
      .def_property_readonly("edge_count", &DatasetStore::edge_count)
      .def_property_readonly("snapshot_id", &DatasetStore::snapshot_id)
      .def("total_attention", &DatasetStore::total_attention, py::arg("id"))
      .def("search_json",
           [](const DatasetStore& s, const std::string& q, std::size_t limit) {
             nlohmann::json hits = nlohmann::json::array();
             for (const auto& h : s.search(q, limit)) hits.push_back(to_json(h));
             return canonical_dump(hits);
           },
           py::arg("query"), py::arg("limit") = 20)
      .def("node_json",
           [](const DatasetStore& s, const std::string& id) {
             const NodeRecord* n = s.find_node(id);
             if (n == nullptr) throw py::key_error("unknown node id '" + id + "'");
             return canonical_dump(node_detail(s, *n));
           },
           py::arg("id"))
      .def("ego_json",
           [](const DatasetStore& s, const std::string& id, std::optional<std::string> start,
              std::optional<std::string> end, double threshold, const std::string& sort, std::size_t max_alters) {
             auto b = build_ego(s, id, ego_params(start, end, threshold, sort));
             EgoResponseExtras extras{b.net.alters.size(), cap_alters(b.net, max_alters) > 0};
             const auto layout = resolve_layout(b.net, b.query.sort, b.query.bounds);
             return canonical_dump(ego_response(s, b.net, layout, extras));
           },
           py::arg("id"), py::arg("start") = py::none(), py::arg("end") = py::none(), py::arg("threshold") = 0.01,
           py::arg("sort") = "force", py::arg("max_alters") = 200)
      .def("render_svg",
           [](const DatasetStore& s, const std::string& id, std::optional<std::string> start,
              std::optional<std::string> end, double threshold, const std::string& sort) {
             auto b = build_ego(s, id, ego_params(start, end, threshold, sort));
             return render_svg(resolve_layout(b.net, b.query.sort, b.query.bounds), b.net);
           },
           py::arg("id"), py::arg("start") = py::none(), py::arg("end") = py::none(), py::arg("threshold") = 0.01,
           py::arg("sort") = "force");
}
