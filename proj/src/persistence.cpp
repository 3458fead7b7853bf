#include "tda/persistence.hpp"

#include "tda/io_util.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace tda {

namespace {

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : s) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// a := a XOR b over sorted index vectors (symmetric difference).
void symdiff_inplace(std::vector<int>& a, const std::vector<int>& b, std::vector<int>& tmp) {
  tmp.clear();
  tmp.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(tmp));
  a.swap(tmp);
}

}  // namespace

ReductionResult reduce_boundary_matrix(const std::vector<FilteredSimplex>& ordered) {
  const int m = static_cast<int>(ordered.size());
  std::unordered_map<Simplex, int, SimplexHash> position;
  position.reserve(static_cast<size_t>(m) * 2);
  int max_dim = 0;
  for (int i = 0; i < m; ++i) {
    position.emplace(ordered[i].vertices, i);
    max_dim = std::max(max_dim, ordered[i].dimension());
  }
  std::vector<std::vector<int>> by_dim(static_cast<size_t>(max_dim) + 1);
  for (int i = 0; i < m; ++i) {
    by_dim[static_cast<size_t>(ordered[i].dimension())].push_back(i);
  }

  std::vector<int> pivot_owner(static_cast<size_t>(m), -1);
  std::vector<char> cleared(static_cast<size_t>(m), 0);
  std::vector<char> is_death(static_cast<size_t>(m), 0);
  std::vector<std::vector<int>> stored(static_cast<size_t>(m));
  ReductionResult result;

  std::vector<int> col, tmp;
  Simplex facet;
  for (int d = max_dim; d >= 1; --d) {
    for (int j : by_dim[static_cast<size_t>(d)]) {
      if (cleared[static_cast<size_t>(j)]) continue;
      const Simplex& s = ordered[static_cast<size_t>(j)].vertices;
      col.clear();
      facet.resize(s.size() - 1);
      for (size_t skip = 0; skip < s.size(); ++skip) {
        size_t w = 0;
        for (size_t i = 0; i < s.size(); ++i) {
          if (i != skip) facet[w++] = s[i];
        }
        col.push_back(position.at(facet));
      }
      std::sort(col.begin(), col.end());
      while (!col.empty()) {
        const int pivot = col.back();
        const int owner = pivot_owner[static_cast<size_t>(pivot)];
        if (owner < 0) break;
        symdiff_inplace(col, stored[static_cast<size_t>(owner)], tmp);
      }
      if (!col.empty()) {
        const int pivot = col.back();
        pivot_owner[static_cast<size_t>(pivot)] = j;
        stored[static_cast<size_t>(j)] = col;
        is_death[static_cast<size_t>(j)] = 1;
        cleared[static_cast<size_t>(pivot)] = 1;
        result.pairs.emplace_back(pivot, j);
      }
    }
  }

  std::vector<char> is_birth(static_cast<size_t>(m), 0);
  for (const auto& [birth, death] : result.pairs) {
    (void)death;
    is_birth[static_cast<size_t>(birth)] = 1;
  }
  for (int i = 0; i < m; ++i) {
    if (!is_birth[static_cast<size_t>(i)] && !is_death[static_cast<size_t>(i)]) {
      result.unpaired.push_back(i);
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end());
  return result;
}

PersistenceDiagram compute_persistence(const SimplexTree& tree, int max_homology_dim) {
  if (max_homology_dim < 0) {
    throw std::invalid_argument("max_homology_dim must be >= 0");
  }
  if (max_homology_dim > tree.max_dimension() - 1) {
    throw std::invalid_argument(
        "dimension-" + std::to_string(max_homology_dim) + " homology requires " +
        std::to_string(max_homology_dim + 1) + "-simplices, but the complex caps at dimension " +
        std::to_string(tree.max_dimension()));
  }
  const std::vector<FilteredSimplex> ordered = tree.simplices_in_filtration_order();
  const ReductionResult red = reduce_boundary_matrix(ordered);

  PersistenceDiagram diagram;
  diagram.max_homology_dimension = max_homology_dim;
  for (const auto& [birth_pos, death_pos] : red.pairs) {
    const FilteredSimplex& b = ordered[static_cast<size_t>(birth_pos)];
    const FilteredSimplex& d = ordered[static_cast<size_t>(death_pos)];
    if (b.dimension() > max_homology_dim) continue;
    if (d.filtration > b.filtration) {
      diagram.pairs.push_back({b.dimension(), b.filtration, d.filtration});
    }
  }
  for (int pos : red.unpaired) {
    const FilteredSimplex& b = ordered[static_cast<size_t>(pos)];
    if (b.dimension() > max_homology_dim) continue;
    diagram.pairs.push_back(
        {b.dimension(), b.filtration, std::numeric_limits<double>::infinity()});
  }
  std::sort(diagram.pairs.begin(), diagram.pairs.end(),
            [](const PersistencePair& a, const PersistencePair& b) {
              if (a.dimension != b.dimension) return a.dimension < b.dimension;
              if (a.birth != b.birth) return a.birth < b.birth;
              return a.death < b.death;
            });
  return diagram;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  std::vector<int> component_min;

  explicit UnionFind(int n) : parent(static_cast<size_t>(n)), component_min(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
    std::iota(component_min.begin(), component_min.end(), 0);
  }

  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }

  // Returns the surviving root after linking; component_min is maintained.
  int link(int ra, int rb) {
    parent[static_cast<size_t>(rb)] = ra;
    component_min[static_cast<size_t>(ra)] =
        std::min(component_min[static_cast<size_t>(ra)], component_min[static_cast<size_t>(rb)]);
    return ra;
  }
};

}  // namespace

std::vector<MergeEvent> compute_merge_events(const SimplexTree& tree) {
  std::vector<FilteredSimplex> edges;
  tree.for_each_simplex([&](const Simplex& s, double f) {
    if (s.size() == 2) edges.push_back({s, f});
  });
  std::sort(edges.begin(), edges.end(), [](const FilteredSimplex& a, const FilteredSimplex& b) {
    if (a.filtration != b.filtration) return a.filtration < b.filtration;
    return a.vertices < b.vertices;
  });

  UnionFind uf(tree.num_vertices());
  std::vector<MergeEvent> events;
  for (const FilteredSimplex& e : edges) {
    const int ru = uf.find(e.vertices[0]);
    const int rv = uf.find(e.vertices[1]);
    if (ru == rv) continue;
    const int min_u = uf.component_min[static_cast<size_t>(ru)];
    const int min_v = uf.component_min[static_cast<size_t>(rv)];
    MergeEvent ev;
    ev.filtration_value = e.filtration;
    ev.edge = e.vertices;
    ev.surviving_root = std::min(min_u, min_v);
    ev.absorbed_root = std::max(min_u, min_v);
    events.push_back(std::move(ev));
    uf.link(ru, rv);
  }
  return events;
}

int betti_at(const PersistenceDiagram& diagram, double t, int k) {
  if (k > diagram.max_homology_dimension) {
    throw std::invalid_argument("betti_at: dimension " + std::to_string(k) +
                                " exceeds the diagram's max homology dimension " +
                                std::to_string(diagram.max_homology_dimension));
  }
  int count = 0;
  for (const PersistencePair& p : diagram.pairs) {
    if (p.dimension == k && p.birth <= t && t < p.death) ++count;
  }
  return count;
}

int dim1_spike_count(const PersistenceDiagram& diagram, double window_low, double window_high) {
  if (!(window_low < window_high)) {
    throw std::invalid_argument("dim1_spike_count: window_low must be < window_high");
  }
  int count = 0;
  for (const PersistencePair& p : diagram.pairs) {
    if (p.dimension == 1 && p.birth >= window_low && p.birth <= window_high) ++count;
  }
  return count;
}

std::string diagram_to_csv(const PersistenceDiagram& diagram) {
  std::ostringstream out;
  out << "dimension,birth,death\n";
  for (const PersistencePair& p : diagram.pairs) {
    out << p.dimension << ',' << format_double(p.birth) << ',' << format_double(p.death) << '\n';
  }
  return out.str();
}

std::string merges_to_csv(const std::vector<MergeEvent>& events) {
  std::ostringstream out;
  out << "filtration,edge_u,edge_v,absorbed_root,surviving_root\n";
  for (const MergeEvent& e : events) {
    out << format_double(e.filtration_value) << ',' << e.edge[0] << ',' << e.edge[1] << ','
        << e.absorbed_root << ',' << e.surviving_root << '\n';
  }
  return out.str();
}

void write_diagram_csv(const PersistenceDiagram& diagram, const std::filesystem::path& path) {
  atomic_write_file(path, diagram_to_csv(diagram));
}

void write_merge_csv(const std::vector<MergeEvent>& events, const std::filesystem::path& path) {
  atomic_write_file(path, merges_to_csv(events));
}

}  // namespace tda
