#include "tda/mapper.hpp"

#include "tda/dbscan.hpp"
#include "tda/io_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tda {

MapperGraph build_mapper_graph(const ProjectedData& projected,
                               const std::vector<CoverElement>& cover, double eps,
                               int min_samples, std::vector<std::string>* warnings) {
  const Eigen::MatrixXd& coords = projected.coords;
  const int n = static_cast<int>(coords.rows());
  MapperGraph graph;
  for (const CoverElement& element : cover) {
    if (element.dimensions() > coords.cols()) {
      throw std::invalid_argument("mapper: cover spans more axes than the lens provides");
    }
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (element.contains(coords.row(i).head(element.dimensions()))) {
        members.push_back(i);
      }
    }
    if (members.empty()) continue;

    Eigen::MatrixXd sub(static_cast<Eigen::Index>(members.size()), coords.cols());
    for (size_t r = 0; r < members.size(); ++r) {
      sub.row(static_cast<Eigen::Index>(r)) = coords.row(members[r]);
    }
    const std::vector<int> labels = dbscan(sub, eps, min_samples);

    std::map<int, std::vector<int>> clusters;
    for (size_t r = 0; r < members.size(); ++r) {
      if (labels[r] != kNoiseLabel) clusters[labels[r]].push_back(members[r]);
    }
    for (auto& [label, rows] : clusters) {
      MapperNode node;
      node.id = static_cast<int>(graph.nodes.size());
      node.members = rows;  // ascending by construction
      node.cover_index = element.index;
      node.cluster_label = label;
      node.color_value =
          std::accumulate(rows.begin(), rows.end(), 0.0) / static_cast<double>(rows.size());
      graph.nodes.push_back(std::move(node));
    }
  }

  for (size_t i = 0; i < graph.nodes.size(); ++i) {
    for (size_t j = i + 1; j < graph.nodes.size(); ++j) {
      const auto& a = graph.nodes[i].members;
      const auto& b = graph.nodes[j].members;
      std::vector<int> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (!common.empty()) {
        graph.edges.push_back({static_cast<int>(i), static_cast<int>(j),
                               static_cast<int>(common.size())});
      }
    }
  }

  if (graph.nodes.empty() && warnings != nullptr) {
    warnings->push_back("mapper graph is empty: every point was labeled noise in every pre-image");
  }
  return graph;
}

int graph_cycle_rank(const MapperGraph& graph) {
  const int v = static_cast<int>(graph.nodes.size());
  std::vector<int> parent(static_cast<size_t>(v));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (const MapperEdge& e : graph.edges) {
    const int ra = find(e.source), rb = find(e.target);
    if (ra != rb) parent[static_cast<size_t>(rb)] = ra;
  }
  int components = 0;
  for (int i = 0; i < v; ++i) {
    if (find(i) == i) ++components;
  }
  return static_cast<int>(graph.edges.size()) - v + components;
}

std::string graph_to_json(const MapperGraph& graph) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const MapperNode& node : graph.nodes) {
    nlohmann::json jn;
    jn["id"] = node.id;
    jn["members"] = node.members;
    jn["cover_index"] = node.cover_index;
    jn["color_value"] = node.color_value;
    j["nodes"].push_back(jn);
  }
  j["edges"] = nlohmann::json::array();
  for (const MapperEdge& e : graph.edges) {
    nlohmann::json je;
    je["source"] = e.source;
    je["target"] = e.target;
    je["shared"] = e.shared;
    j["edges"].push_back(je);
  }
  return j.dump(2) + "\n";
}

namespace {

struct Rgb {
  double r, g, b;
};

// Viridis anchors, dark purple to yellow.
constexpr Rgb kViridis[] = {
    {68, 1, 84},    {72, 40, 120},  {62, 74, 137},  {49, 104, 142}, {38, 130, 142},
    {31, 158, 137}, {53, 183, 121}, {109, 205, 89}, {253, 231, 37},
};

}  // namespace

std::string color_ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  // Low color_value renders yellow, high renders dark purple.
  const double u = (1.0 - t) * 8.0;
  const int lo = std::min(7, static_cast<int>(u));
  const double frac = u - lo;
  const Rgb& a = kViridis[lo];
  const Rgb& b = kViridis[lo + 1];
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<int>(std::lround(a.r + frac * (b.r - a.r))),
                static_cast<int>(std::lround(a.g + frac * (b.g - a.g))),
                static_cast<int>(std::lround(a.b + frac * (b.b - a.b))));
  return buf;
}

namespace {

std::vector<std::string> node_colors(const MapperGraph& graph) {
  double lo = 0.0, hi = 0.0;
  if (!graph.nodes.empty()) {
    lo = hi = graph.nodes.front().color_value;
    for (const MapperNode& n : graph.nodes) {
      lo = std::min(lo, n.color_value);
      hi = std::max(hi, n.color_value);
    }
  }
  std::vector<std::string> out;
  out.reserve(graph.nodes.size());
  for (const MapperNode& n : graph.nodes) {
    const double t = hi > lo ? (n.color_value - lo) / (hi - lo) : 0.0;
    out.push_back(color_ramp(t));
  }
  return out;
}

}  // namespace

std::string graph_to_dot(const MapperGraph& graph) {
  const auto colors = node_colors(graph);
  std::ostringstream out;
  out << "graph mapper {\n";
  out << "  node [shape=circle style=filled fontsize=10];\n";
  for (const MapperNode& n : graph.nodes) {
    out << "  n" << n.id << " [fillcolor=\"" << colors[static_cast<size_t>(n.id)]
        << "\" label=\"" << n.id << "\\n(" << n.members.size() << ")\"];\n";
  }
  for (const MapperEdge& e : graph.edges) {
    out << "  n" << e.source << " -- n" << e.target << " [label=\"" << e.shared << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

// Deterministic spring layout: circle initialization, fixed iteration count,
// no randomness.
std::vector<std::pair<double, double>> layout_positions(const MapperGraph& graph) {
  const size_t v = graph.nodes.size();
  std::vector<std::pair<double, double>> pos(v);
  if (v == 0) return pos;
  const double tau = 6.283185307179586;
  for (size_t i = 0; i < v; ++i) {
    const double angle = tau * static_cast<double>(i) / static_cast<double>(v);
    pos[i] = {std::cos(angle), std::sin(angle)};
  }
  if (v == 1) return pos;
  const double ideal = std::sqrt(4.0 / static_cast<double>(v));
  for (int iter = 0; iter < 150; ++iter) {
    std::vector<std::pair<double, double>> disp(v, {0.0, 0.0});
    for (size_t i = 0; i < v; ++i) {
      for (size_t j = i + 1; j < v; ++j) {
        double dx = pos[i].first - pos[j].first;
        double dy = pos[i].second - pos[j].second;
        double dist = std::sqrt(dx * dx + dy * dy);
        if (dist < 1e-9) {
          dx = 1e-3 * static_cast<double>(i - j);
          dy = 1e-3;
          dist = std::sqrt(dx * dx + dy * dy);
        }
        const double force = ideal * ideal / dist;
        disp[i].first += dx / dist * force;
        disp[i].second += dy / dist * force;
        disp[j].first -= dx / dist * force;
        disp[j].second -= dy / dist * force;
      }
    }
    for (const MapperEdge& e : graph.edges) {
      const size_t a = static_cast<size_t>(e.source), b = static_cast<size_t>(e.target);
      double dx = pos[a].first - pos[b].first;
      double dy = pos[a].second - pos[b].second;
      const double dist = std::max(1e-9, std::sqrt(dx * dx + dy * dy));
      const double force = dist * dist / ideal;
      disp[a].first -= dx / dist * force;
      disp[a].second -= dy / dist * force;
      disp[b].first += dx / dist * force;
      disp[b].second += dy / dist * force;
    }
    const double step = 0.1 * (1.0 - static_cast<double>(iter) / 150.0) + 0.01;
    for (size_t i = 0; i < v; ++i) {
      const double len = std::max(
          1e-9, std::sqrt(disp[i].first * disp[i].first + disp[i].second * disp[i].second));
      pos[i].first += disp[i].first / len * std::min(len, step);
      pos[i].second += disp[i].second / len * std::min(len, step);
    }
  }
  return pos;
}

}  // namespace

std::string graph_to_html(const MapperGraph& graph) {
  const auto pos = layout_positions(graph);
  const auto colors = node_colors(graph);
  double min_x = -1, max_x = 1, min_y = -1, max_y = 1;
  if (!pos.empty()) {
    min_x = max_x = pos[0].first;
    min_y = max_y = pos[0].second;
    for (const auto& p : pos) {
      min_x = std::min(min_x, p.first);
      max_x = std::max(max_x, p.first);
      min_y = std::min(min_y, p.second);
      max_y = std::max(max_y, p.second);
    }
  }
  const double width = 800.0, height = 600.0, margin = 40.0;
  const double span_x = std::max(1e-9, max_x - min_x);
  const double span_y = std::max(1e-9, max_y - min_y);
  auto sx = [&](double x) { return margin + (x - min_x) / span_x * (width - 2 * margin); };
  auto sy = [&](double y) { return margin + (y - min_y) / span_y * (height - 2 * margin); };

  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
      << "<title>mapper graph</title>\n"
      << "<style>body{font-family:sans-serif;background:#fafafa}"
      << "circle{stroke:#333;stroke-width:0.5}line{stroke:#999;stroke-width:1}</style>\n"
      << "</head>\n<body>\n"
      << "<h3>mapper graph: " << graph.nodes.size() << " nodes, " << graph.edges.size()
      << " edges</h3>\n"
      << "<svg width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
      << " " << height << "\">\n";
  for (const MapperEdge& e : graph.edges) {
    const auto& a = pos[static_cast<size_t>(e.source)];
    const auto& b = pos[static_cast<size_t>(e.target)];
    out << "<line x1=\"" << format_double(sx(a.first), 6) << "\" y1=\""
        << format_double(sy(a.second), 6) << "\" x2=\"" << format_double(sx(b.first), 6)
        << "\" y2=\"" << format_double(sy(b.second), 6) << "\"/>\n";
  }
  for (const MapperNode& n : graph.nodes) {
    const auto& p = pos[static_cast<size_t>(n.id)];
    const double r = 4.0 + 2.0 * std::log1p(static_cast<double>(n.members.size()));
    out << "<circle cx=\"" << format_double(sx(p.first), 6) << "\" cy=\""
        << format_double(sy(p.second), 6) << "\" r=\"" << format_double(r, 4) << "\" fill=\""
        << colors[static_cast<size_t>(n.id)] << "\"><title>node " << n.id << ": "
        << n.members.size() << " rows, mean row index " << format_double(n.color_value, 6)
        << "</title></circle>\n";
  }
  out << "</svg>\n<script type=\"application/json\" id=\"graph-data\">\n"
      << graph_to_json(graph) << "</script>\n</body>\n</html>\n";
  return out.str();
}

void write_graph_json(const MapperGraph& graph, const std::filesystem::path& path) {
  atomic_write_file(path, graph_to_json(graph));
}

void write_graph_dot(const MapperGraph& graph, const std::filesystem::path& path) {
  atomic_write_file(path, graph_to_dot(graph));
}

void write_graph_html(const MapperGraph& graph, const std::filesystem::path& path) {
  atomic_write_file(path, graph_to_html(graph));
}

}  // namespace tda
