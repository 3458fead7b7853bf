// Labeled numeric tables, column normalization, and pairwise Euclidean
// distances. The matrix kernels are free functions over Eigen expressions;
// PointCloud adds row/column labels on top of them.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace tda {

enum class NormalizationMode { ZScore, MinMax };

using DistanceMatrix = Eigen::MatrixXd;

struct PointCloud {
  Eigen::MatrixXd values;
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;

  PointCloud() = default;
  PointCloud(Eigen::MatrixXd v, std::vector<std::string> rows, std::vector<std::string> cols);
  explicit PointCloud(Eigen::MatrixXd v);  // labels generated as p0.., c0..

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

// Distance-range summary for the original vs PCA-reduced comparison.
struct DistortionStats {
  double min_original = 0.0;
  double max_original = 0.0;
  double mean_original = 0.0;
  double min_reduced = 0.0;
  double max_reduced = 0.0;
  double mean_reduced = 0.0;
  double pearson_correlation = 0.0;
};

// Column-wise z-score with the population standard deviation (divide by n).
// Constant columns map to all zeros; their count is reported through
// constant_columns when non-null.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> normalize_columns_zscore(
    const Eigen::MatrixBase<Derived>& x, int* constant_columns = nullptr) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out = x.derived();
  const auto n = static_cast<Scalar>(out.rows());
  int constants = 0;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const Scalar mean = out.col(j).mean();
    const Scalar sd = std::sqrt((out.col(j).array() - mean).square().sum() / n);
    if (sd == Scalar(0)) {
      out.col(j).setZero();
      ++constants;
    } else {
      out.col(j) = (out.col(j).array() - mean) / sd;
    }
  }
  if (constant_columns) *constant_columns = constants;
  return out;
}

// Column-wise affine map onto [0, 1]. Constant columns map to all zeros.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> normalize_columns_minmax(
    const Eigen::MatrixBase<Derived>& x, int* constant_columns = nullptr) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out = x.derived();
  int constants = 0;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const Scalar lo = out.col(j).minCoeff();
    const Scalar hi = out.col(j).maxCoeff();
    if (lo == hi) {
      out.col(j).setZero();
      ++constants;
    } else {
      out.col(j) = (out.col(j).array() - lo) / (hi - lo);
    }
  }
  if (constant_columns) *constant_columns = constants;
  return out;
}

// Symmetric Euclidean distance matrix over rows; each unordered pair is
// computed once and mirrored, so symmetry is exact.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> pairwise_distances(
    const Eigen::MatrixBase<Derived>& points) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = points.rows();
  Matrix pts = points.derived();
  Matrix dist = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Scalar d = (pts.row(i) - pts.row(j)).norm();
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  return dist;
}

PointCloud normalize_columns(const PointCloud& pc, NormalizationMode mode,
                             std::vector<std::string>* warnings = nullptr);

DistanceMatrix pairwise_distances(const PointCloud& pc);

// Statistics over the n(n-1)/2 upper-triangle entries of both matrices plus
// the Pearson correlation between them. Throws if n < 2 (no pairs).
DistortionStats distance_distortion_report(const DistanceMatrix& dm_original,
                                           const DistanceMatrix& dm_reduced);

std::string distortion_report_text(const DistortionStats& stats);

}  // namespace tda
