// Overlapping interval cover of a projected space: per axis,
// n_intervals equal-length closed intervals whose consecutive overlap is a
// fixed fraction of the interval length; multi-axis elements are Cartesian
// products.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

namespace tda {

struct CoverElement {
  std::vector<int> index;                      // per-axis interval index
  std::vector<std::array<double, 2>> box;      // closed [lo, hi] per axis

  int dimensions() const { return static_cast<int>(box.size()); }

  // Tests the first box.size() coordinates of the point.
  bool contains(const Eigen::Ref<const Eigen::RowVectorXd>& point) const;
};

// Per axis with data range [min, max]: interval length
// L = range / (n_intervals*(1-overlap) + overlap), interval i starting at
// min + i*L*(1-overlap). The first/last interval endpoints are pinned to the
// exact data min/max so every point is covered. A degenerate axis (max == min)
// gets the single interval [v-0.5, v+0.5] and a warning.
// Requires n_intervals >= 1 and 0 <= overlap < 1.
std::vector<CoverElement> build_cover(const Eigen::Ref<const Eigen::MatrixXd>& coords,
                                      int n_intervals, double overlap,
                                      std::vector<std::string>* warnings = nullptr);

}  // namespace tda
