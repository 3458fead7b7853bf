// Density clustering: a point is core when at least min_samples points
// (itself included) lie within eps; clusters are the maximal sets
// density-reachable from core points, the rest is noise.
#pragma once

#include <Eigen/Dense>

#include <vector>

namespace tda {

inline constexpr int kNoiseLabel = -1;

// Per-row cluster label (>= 0) or kNoiseLabel. Cluster ids are assigned in
// order of the first core point encountered in row order; a non-core point
// within eps of several clusters joins the one of its smallest-index core
// neighbor, so labels are deterministic for a fixed row order.
// Requires eps > 0 and min_samples >= 1.
std::vector<int> dbscan(const Eigen::Ref<const Eigen::MatrixXd>& coords, double eps,
                        int min_samples);

}  // namespace tda
