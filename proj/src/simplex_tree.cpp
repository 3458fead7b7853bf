#include "tda/simplex_tree.hpp"

#include "tda/io_util.hpp"

#include <algorithm>
#include <stdexcept>

namespace tda {

SimplexTree::SimplexTree(int num_vertices, double max_edge_length, int max_dimension)
    : num_vertices_(num_vertices),
      max_edge_length_(max_edge_length),
      max_dimension_(max_dimension) {
  if (num_vertices < 1) {
    throw std::invalid_argument("simplex tree needs at least one vertex");
  }
  if (max_dimension < 1) {
    throw std::invalid_argument("max_dimension must be >= 1");
  }
  for (int v = 0; v < num_vertices; ++v) {
    root_.children[v].filtration = 0.0;
  }
}

void SimplexTree::insert(const Simplex& simplex, double filtration) {
  if (simplex.empty()) {
    throw std::invalid_argument("cannot insert the empty simplex");
  }
  Node* node = &root_;
  for (size_t i = 0; i < simplex.size(); ++i) {
    if (i > 0 && simplex[i] <= simplex[i - 1]) {
      throw std::invalid_argument("simplex vertices must be strictly increasing");
    }
    node = &node->children[simplex[i]];
  }
  node->filtration = filtration;
}

const SimplexTree::Node* SimplexTree::find(const Simplex& simplex) const {
  const Node* node = &root_;
  for (int v : simplex) {
    auto it = node->children.find(v);
    if (it == node->children.end()) return nullptr;
    node = &it->second;
  }
  return node == &root_ ? nullptr : node;
}

std::optional<double> SimplexTree::filtration_of(const Simplex& simplex) const {
  const Node* node = find(simplex);
  if (node == nullptr) return std::nullopt;
  return node->filtration;
}

void SimplexTree::for_each_simplex(
    const std::function<void(const Simplex&, double)>& fn) const {
  Simplex stack;
  std::function<void(const Node&)> dfs = [&](const Node& node) {
    for (const auto& [vertex, child] : node.children) {
      stack.push_back(vertex);
      fn(stack, child.filtration);
      dfs(child);
      stack.pop_back();
    }
  };
  dfs(root_);
}

std::size_t SimplexTree::simplex_count() const {
  std::size_t count = 0;
  for_each_simplex([&](const Simplex&, double) { ++count; });
  return count;
}

std::size_t SimplexTree::simplex_count(int dimension) const {
  std::size_t count = 0;
  for_each_simplex([&](const Simplex& s, double) {
    if (static_cast<int>(s.size()) - 1 == dimension) ++count;
  });
  return count;
}

std::vector<FilteredSimplex> SimplexTree::simplices_in_filtration_order() const {
  std::vector<FilteredSimplex> out;
  out.reserve(simplex_count());
  for_each_simplex([&](const Simplex& s, double f) { out.push_back({s, f}); });
  std::sort(out.begin(), out.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
    if (a.filtration != b.filtration) return a.filtration < b.filtration;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
  });
  return out;
}

bool SimplexTree::validate() const {
  bool ok = true;
  for_each_simplex([&](const Simplex& s, double f) {
    if (!ok || s.size() < 2) return;
    for (size_t skip = 0; skip < s.size(); ++skip) {
      Simplex face;
      face.reserve(s.size() - 1);
      for (size_t i = 0; i < s.size(); ++i) {
        if (i != skip) face.push_back(s[i]);
      }
      const auto face_f = filtration_of(face);
      if (!face_f || *face_f > f) {
        ok = false;
        return;
      }
    }
  });
  return ok;
}

namespace {

// Zomorodian-style incremental expansion: grow each simplex only by vertices
// adjacent to all of its members, carrying the max pairwise distance along.
void add_cofaces(SimplexTree& tree, const Eigen::Ref<const Eigen::MatrixXd>& dist,
                 Simplex& simplex, double filtration, const std::vector<int>& candidates,
                 int max_dimension) {
  tree.insert(simplex, filtration);
  if (static_cast<int>(simplex.size()) - 1 >= max_dimension) return;
  const bool child_can_grow = static_cast<int>(simplex.size()) < max_dimension;
  for (size_t ci = 0; ci < candidates.size(); ++ci) {
    const int v = candidates[ci];
    double f = filtration;
    for (int u : simplex) {
      f = std::max(f, dist(u, v));
    }
    std::vector<int> next;
    if (child_can_grow) {
      next.reserve(candidates.size() - ci);
      for (size_t cj = ci + 1; cj < candidates.size(); ++cj) {
        const int w = candidates[cj];
        if (dist(v, w) <= tree.max_edge_length()) next.push_back(w);
      }
    }
    simplex.push_back(v);
    add_cofaces(tree, dist, simplex, f, next, max_dimension);
    simplex.pop_back();
  }
}

}  // namespace

SimplexTree build_rips(const Eigen::Ref<const Eigen::MatrixXd>& dist, double max_edge_length,
                       int max_dimension) {
  if (dist.rows() != dist.cols() || dist.rows() < 1) {
    throw std::invalid_argument("distance matrix must be square and non-empty");
  }
  if (max_edge_length <= 0.0) {
    throw std::invalid_argument("max_edge_length must be positive");
  }
  if (max_dimension < 1) {
    throw std::invalid_argument("max_dimension must be >= 1");
  }
  const int n = static_cast<int>(dist.rows());
  SimplexTree tree(n, max_edge_length, max_dimension);
  Simplex simplex;
  for (int u = 0; u < n; ++u) {
    std::vector<int> upper;
    for (int v = u + 1; v < n; ++v) {
      if (dist(u, v) <= max_edge_length) upper.push_back(v);
    }
    simplex.assign(1, u);
    add_cofaces(tree, dist, simplex, 0.0, upper, max_dimension);
  }
  return tree;
}

void write_filtration_dump(const SimplexTree& tree, std::ostream& out) {
  for (const FilteredSimplex& fs : tree.simplices_in_filtration_order()) {
    for (size_t i = 0; i < fs.vertices.size(); ++i) {
      if (i > 0) out << ' ';
      out << fs.vertices[i];
    }
    out << '\t' << format_double(fs.filtration) << '\n';
  }
}

}  // namespace tda
