// Filtered simplicial complexes stored as a trie over ascending vertex
// sequences, plus the Vietoris-Rips construction that fills one from a
// distance matrix.
#pragma once

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

namespace tda {

// Vertex indices, strictly increasing. Dimension = size - 1.
using Simplex = std::vector<int>;

struct FilteredSimplex {
  Simplex vertices;
  double filtration = 0.0;

  int dimension() const { return static_cast<int>(vertices.size()) - 1; }
};

// Trie keyed by vertex sequence; each node stores the filtration value of the
// simplex spelled by its root path. Closure and monotonicity are maintained by
// the builders: every face of a stored simplex is stored with a
// smaller-or-equal filtration value, and vertices sit at 0.
class SimplexTree {
 public:
  SimplexTree(int num_vertices, double max_edge_length, int max_dimension);

  int num_vertices() const { return num_vertices_; }
  double max_edge_length() const { return max_edge_length_; }
  int max_dimension() const { return max_dimension_; }

  // Inserts one simplex; faces must already be present (builders guarantee
  // this, tests assert it via validate()).
  void insert(const Simplex& simplex, double filtration);

  std::optional<double> filtration_of(const Simplex& simplex) const;

  std::size_t simplex_count() const;
  std::size_t simplex_count(int dimension) const;

  void for_each_simplex(const std::function<void(const Simplex&, double)>& fn) const;

  // Total order: ascending filtration value, then ascending dimension, then
  // lexicographic vertex order. Faces always precede cofaces.
  std::vector<FilteredSimplex> simplices_in_filtration_order() const;

  // Checks closure and face/coface monotonicity by full traversal.
  bool validate() const;

 private:
  struct Node {
    double filtration = 0.0;
    std::map<int, Node> children;
  };

  const Node* find(const Simplex& simplex) const;

  Node root_;  // virtual; depth-1 children are the vertices
  int num_vertices_ = 0;
  double max_edge_length_ = 0.0;
  int max_dimension_ = 1;
};

// Vietoris-Rips filtration: every vertex at 0, edge (i,j) present iff
// dist(i,j) <= max_edge_length with that distance as its value, and a
// k-simplex (k <= max_dimension) present iff all its edges are, valued at the
// largest pairwise distance among its vertices. Expansion is incremental over
// upper-neighbor intersections rather than subset enumeration.
SimplexTree build_rips(const Eigen::Ref<const Eigen::MatrixXd>& dist, double max_edge_length,
                       int max_dimension);

// Debug dump, one simplex per line: "v0 v1 ... vk<TAB>filtration", in
// filtration order.
void write_filtration_dump(const SimplexTree& tree, std::ostream& out);

}  // namespace tda
