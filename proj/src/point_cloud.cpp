#include "tda/point_cloud.hpp"

#include "tda/io_util.hpp"

#include <algorithm>
#include <sstream>

namespace tda {

namespace {

void validate(const Eigen::MatrixXd& v, const std::vector<std::string>& rows,
              const std::vector<std::string>& cols) {
  if (v.rows() < 1 || v.cols() < 1) {
    throw std::invalid_argument("point cloud must have at least one row and one column");
  }
  if (!v.allFinite()) {
    throw std::invalid_argument("point cloud contains non-finite entries");
  }
  if (static_cast<Eigen::Index>(rows.size()) != v.rows() ||
      static_cast<Eigen::Index>(cols.size()) != v.cols()) {
    throw std::invalid_argument("label list lengths must match matrix dimensions");
  }
}

}  // namespace

PointCloud::PointCloud(Eigen::MatrixXd v, std::vector<std::string> rows,
                       std::vector<std::string> cols)
    : values(std::move(v)), row_labels(std::move(rows)), column_labels(std::move(cols)) {
  validate(values, row_labels, column_labels);
}

PointCloud::PointCloud(Eigen::MatrixXd v) : values(std::move(v)) {
  row_labels.reserve(values.rows());
  column_labels.reserve(values.cols());
  for (Eigen::Index i = 0; i < values.rows(); ++i) row_labels.push_back("p" + std::to_string(i));
  for (Eigen::Index j = 0; j < values.cols(); ++j) column_labels.push_back("c" + std::to_string(j));
  validate(values, row_labels, column_labels);
}

PointCloud normalize_columns(const PointCloud& pc, NormalizationMode mode,
                             std::vector<std::string>* warnings) {
  Eigen::MatrixXd out;
  int constants = 0;
  if (mode == NormalizationMode::ZScore) {
    out = normalize_columns_zscore(pc.values, &constants);
  } else {
    out = normalize_columns_minmax(pc.values, &constants);
  }
  if (constants > 0 && warnings != nullptr) {
    for (Eigen::Index j = 0; j < pc.values.cols(); ++j) {
      if (pc.values.col(j).minCoeff() == pc.values.col(j).maxCoeff()) {
        warnings->push_back("column '" + pc.column_labels[static_cast<size_t>(j)] +
                            "' is constant; normalized to zeros");
      }
    }
  }
  return PointCloud(std::move(out), pc.row_labels, pc.column_labels);
}

DistanceMatrix pairwise_distances(const PointCloud& pc) { return pairwise_distances(pc.values); }

DistortionStats distance_distortion_report(const DistanceMatrix& dm_original,
                                           const DistanceMatrix& dm_reduced) {
  const Eigen::Index n = dm_original.rows();
  if (dm_reduced.rows() != n) {
    throw std::invalid_argument("distance matrices must have the same number of points");
  }
  if (n < 2) {
    throw std::invalid_argument("distance distortion needs at least two points (no pairs)");
  }
  const Eigen::Index m = n * (n - 1) / 2;
  Eigen::VectorXd a(m), b(m);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j, ++k) {
      a(k) = dm_original(i, j);
      b(k) = dm_reduced(i, j);
    }
  }
  DistortionStats s;
  s.min_original = a.minCoeff();
  s.max_original = a.maxCoeff();
  s.mean_original = a.mean();
  s.min_reduced = b.minCoeff();
  s.max_reduced = b.maxCoeff();
  s.mean_reduced = b.mean();
  const Eigen::VectorXd da = a.array() - s.mean_original;
  const Eigen::VectorXd db = b.array() - s.mean_reduced;
  const double sa = std::sqrt(da.squaredNorm() / static_cast<double>(m));
  const double sb = std::sqrt(db.squaredNorm() / static_cast<double>(m));
  if (sa == 0.0 && sb == 0.0) {
    s.pearson_correlation = 1.0;  // both constant: trivially identical shape
  } else if (sa == 0.0 || sb == 0.0) {
    s.pearson_correlation = 0.0;
  } else {
    const double cov = da.dot(db) / static_cast<double>(m);
    s.pearson_correlation = std::clamp(cov / (sa * sb), -1.0, 1.0);
  }
  return s;
}

std::string distortion_report_text(const DistortionStats& stats) {
  std::ostringstream out;
  out << "original distances: min=" << format_double(stats.min_original, 9)
      << " mean=" << format_double(stats.mean_original, 9)
      << " max=" << format_double(stats.max_original, 9) << "\n";
  out << "reduced distances:  min=" << format_double(stats.min_reduced, 9)
      << " mean=" << format_double(stats.mean_reduced, 9)
      << " max=" << format_double(stats.max_reduced, 9) << "\n";
  out << "pearson correlation: " << format_double(stats.pearson_correlation, 9) << "\n";
  return out.str();
}

}  // namespace tda
