// Nerve-graph assembly: cover the lens space, cluster each pre-image with
// DBSCAN in the reduced coordinates, one node per cluster, edges between
// nodes sharing members. Includes the JSON/DOT/HTML exporters.
#pragma once

#include "tda/cover.hpp"
#include "tda/pca.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tda {

struct MapperNode {
  int id = 0;
  std::vector<int> members;     // sorted row indices
  std::vector<int> cover_index;
  int cluster_label = 0;
  double color_value = 0.0;     // mean of member row indices
};

struct MapperEdge {
  int source = 0;
  int target = 0;
  int shared = 0;  // size of the member intersection
};

struct MapperGraph {
  std::vector<MapperNode> nodes;
  std::vector<MapperEdge> edges;
};

// For each cover element: members are the rows whose leading coordinates fall
// in the element's box (the cover may span fewer axes than the lens);
// clustering runs on the members' full reduced coordinates. Noise points join
// no node. Nodes are numbered in cover order, then cluster-label order.
MapperGraph build_mapper_graph(const ProjectedData& projected,
                               const std::vector<CoverElement>& cover, double eps,
                               int min_samples, std::vector<std::string>* warnings = nullptr);

// E - V + C, the number of independent cycles.
int graph_cycle_rank(const MapperGraph& graph);

std::string graph_to_json(const MapperGraph& graph);
std::string graph_to_dot(const MapperGraph& graph);
std::string graph_to_html(const MapperGraph& graph);

void write_graph_json(const MapperGraph& graph, const std::filesystem::path& path);
void write_graph_dot(const MapperGraph& graph, const std::filesystem::path& path);
void write_graph_html(const MapperGraph& graph, const std::filesystem::path& path);

// Yellow at t=0 through dark purple at t=1 ("#rrggbb").
std::string color_ramp(double t);

}  // namespace tda
