#include "attentionflow/svg.hpp"

#include <cstdio>
#include <map>
#include <sstream>

namespace attnflow {

namespace {

constexpr const char* kPalette[] = {"#fde0c5", "#facba6", "#f8b58b", "#f59e72", "#f2855d",
                                    "#ef6a4c", "#eb4a40", "#d53e4f", "#b22c5e", "#8c1c6b"};
constexpr int kMarginLeft = 40;
constexpr int kMarginRight = 60;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const ResolvedLayout& layout, const EgoNetwork& ego_net, const SvgOptions& options) {
  const double plot_w = options.width - kMarginLeft - kMarginRight;
  const double plot_h = options.height - kMarginTop - kMarginBottom;
  auto px = [&](double x) { return kMarginLeft + x * plot_w; };
  auto py = [&](double y) { return kMarginTop + y * plot_h; };

  std::map<std::string, const NodeGeometry*> geom;
  for (const auto& n : layout.nodes) geom[n.node_id] = &n;
  std::map<std::string, std::string> names;
  names[ego_net.ego->id] = ego_net.ego->name;
  for (const auto& a : ego_net.alters) names[a.node->id] = a.node->name;

  std::ostringstream svg;
  svg << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << options.width << R"(" height=")"
      << options.height << R"(" viewBox="0 0 )" << options.width << ' ' << options.height << R"(">)" << '\n';
  svg << R"(<rect width="100%" height="100%" fill="#ffffff"/>)" << '\n';

  const double axis_y = options.height - kMarginBottom + 15;
  svg << R"(<g class="axis"><line x1=")" << num(px(0)) << R"(" y1=")" << num(axis_y) << R"(" x2=")"
      << num(px(1)) << R"(" y2=")" << num(axis_y) << R"(" stroke="#555"/>)";
  svg << R"(<text x=")" << num(px(0)) << R"(" y=")" << num(axis_y + 18)
      << R"(" font-size="11" text-anchor="start">)" << layout.window.start.iso() << "</text>";
  svg << R"(<text x=")" << num(px(1)) << R"(" y=")" << num(axis_y + 18)
      << R"(" font-size="11" text-anchor="end">)" << layout.window.end.iso() << "</text></g>\n";

  svg << "<g class=\"edges\">\n";
  for (const auto& e : layout.edges) {
    const double stroke = 0.5 + 8.0 * e.width;
    const NodeGeometry& s = *geom.at(e.source_id);
    if (e.is_self_loop) {
      const double r = s.radius * plot_h;
      svg << R"(<path class="self-loop" d="M )" << num(px(s.x) - r * 0.5) << ' ' << num(py(s.y) - r * 0.8)
          << " C " << num(px(s.x) - r * 1.5) << ' ' << num(py(s.y) - r * 3.0) << ", " << num(px(s.x) + r * 1.5)
          << ' ' << num(py(s.y) - r * 3.0) << ", " << num(px(s.x) + r * 0.5) << ' ' << num(py(s.y) - r * 0.8)
          << R"(" fill="none" stroke="#6a6a6a" stroke-opacity="0.7" stroke-width=")" << num(stroke) << "\"/>\n";
      continue;
    }
    const NodeGeometry& t = *geom.at(e.target_id);
    // Bend to the left of the direction of travel so the two directions of a
    // pair do not overlap.
    const double mx = (px(s.x) + px(t.x)) / 2;
    const double my = (py(s.y) + py(t.y)) / 2;
    const double dx = px(t.x) - px(s.x);
    const double dy = py(t.y) - py(s.y);
    const double cx = mx + dy * 0.15;
    const double cy = my - dx * 0.15;
    svg << R"(<path class="edge" data-source=")" << escape(e.source_id) << R"(" data-target=")"
        << escape(e.target_id) << R"(" d="M )" << num(px(s.x)) << ' ' << num(py(s.y)) << " Q " << num(cx) << ' '
        << num(cy) << ' ' << num(px(t.x)) << ' ' << num(py(t.y))
        << R"(" fill="none" stroke="#6a6a6a" stroke-opacity="0.7" stroke-width=")" << num(stroke) << "\"/>\n";
  }
  svg << "</g>\n<g class=\"nodes\">\n";

  for (const auto& n : layout.nodes) {
    const double r = n.radius * plot_h;
    svg << R"(<g class="node" data-id=")" << escape(n.node_id) << R"(">)";
    for (auto it = n.rings.rings.rbegin(); it != n.rings.rings.rend(); ++it) {
      svg << R"(<circle cx=")" << num(px(n.x)) << R"(" cy=")" << num(py(n.y)) << R"(" r=")"
          << num(it->outer_radius * r) << R"(" fill=")" << kPalette[it->color_index % std::size(kPalette)]
          << R"(" stroke="#ffffff" stroke-width="0.5"/>)";
    }
    svg << R"(<text x=")" << num(px(n.x)) << R"(" y=")" << num(py(n.y) + r + 12)
        << R"(" font-size="10" text-anchor="middle">)" << escape(names[n.node_id]) << "</text></g>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace attnflow
