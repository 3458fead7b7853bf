// Principal component analysis via eigendecomposition of the population
// covariance matrix, with the deterministic sign and tie conventions the rest
// of the pipeline depends on.
#pragma once

#include "tda/point_cloud.hpp"

#include <Eigen/Dense>

#include <vector>

namespace tda {

struct ProjectedData {
  Eigen::MatrixXd coords;                    // n x k, centered data times loadings^T
  Eigen::MatrixXd component_loadings;        // k x d, unit rows
  Eigen::VectorXd explained_variance_ratio;  // k entries in [0,1], non-increasing
  std::vector<int> dominant_columns;         // argmax |loading| per component

  int lens_dimension() const { return static_cast<int>(coords.cols()); }
};

// Top-k principal components of the row set. Columns are centered; the
// covariance matrix is (X^T X)/n; components are ordered by eigenvalue
// descending, ties broken by preferring the component whose
// largest-magnitude loading sits in the smallest column index. Each loading's
// sign is fixed so its largest-magnitude entry is positive.
// Requires 1 <= k <= min(n-1, d).
ProjectedData pca_fit_transform(const Eigen::Ref<const Eigen::MatrixXd>& values, int k);

ProjectedData pca_fit_transform(const PointCloud& pc, int k);

// Human-readable component report: explained variance ratios and dominant
// columns (with labels when provided).
std::string pca_report_text(const ProjectedData& projected,
                            const std::vector<std::string>& column_labels);

}  // namespace tda
