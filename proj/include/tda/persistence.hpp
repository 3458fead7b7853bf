// Persistent homology over Z/2: boundary-matrix reduction of a filtered
// complex, union-find merge events, bar queries, and the CSV exports.
#pragma once

#include "tda/simplex_tree.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <utility>
#include <vector>

namespace tda {

struct PersistencePair {
  int dimension = 0;
  double birth = 0.0;
  double death = std::numeric_limits<double>::infinity();

  bool is_infinite() const { return std::isinf(death); }
};

struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;
  int max_homology_dimension = 0;
};

// One union-find merge: the edge that joined two components, identified by the
// minimum vertex index of each side at merge time.
struct MergeEvent {
  double filtration_value = 0.0;
  Simplex edge;
  int absorbed_root = 0;
  int surviving_root = 0;
};

// Raw output of the column reduction: (birth position, death position) pairs
// over the given column order, plus positions never paired. Kept public so an
// independent reduction can be compared pair-for-pair.
struct ReductionResult {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> unpaired;
};

// Clearing-optimized reduction (columns processed by decreasing dimension;
// paired birth columns are skipped). The pair multiset is identical to the
// naive left-to-right reduction on the same column order.
ReductionResult reduce_boundary_matrix(const std::vector<FilteredSimplex>& ordered);

// Bars in dimensions 0..max_homology_dim. Requires
// max_homology_dim <= tree.max_dimension() - 1, since dimension-k deaths need
// (k+1)-simplices. Zero-persistence pairs are dropped; unpaired creators
// become infinite bars.
PersistenceDiagram compute_persistence(const SimplexTree& tree, int max_homology_dim);

// Union-find over edges in filtration order; one event per edge that joins
// two distinct components (n - C events for C final components).
std::vector<MergeEvent> compute_merge_events(const SimplexTree& tree);

// Number of dimension-k bars alive at t under the half-open convention
// [birth, death).
int betti_at(const PersistenceDiagram& diagram, double t, int k);

// Number of dimension-1 bars born inside [window_low, window_high].
int dim1_spike_count(const PersistenceDiagram& diagram, double window_low, double window_high);

// CSV "dimension,birth,death"; doubles at 17 significant digits, infinite
// deaths as the literal `inf`. Atomic write.
void write_diagram_csv(const PersistenceDiagram& diagram, const std::filesystem::path& path);

// CSV "filtration,edge_u,edge_v,absorbed_root,surviving_root". Atomic write.
void write_merge_csv(const std::vector<MergeEvent>& events, const std::filesystem::path& path);

std::string diagram_to_csv(const PersistenceDiagram& diagram);
std::string merges_to_csv(const std::vector<MergeEvent>& events);

}  // namespace tda
