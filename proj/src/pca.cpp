#include "tda/pca.hpp"

#include "tda/io_util.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tda {

namespace {

int dominant_index(const Eigen::VectorXd& v) {
  int best = 0;
  double best_abs = std::abs(v(0));
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs) {
      best_abs = a;
      best = static_cast<int>(i);
    }
  }
  return best;
}

}  // namespace

ProjectedData pca_fit_transform(const Eigen::Ref<const Eigen::MatrixXd>& values, int k) {
  const Eigen::Index n = values.rows();
  const Eigen::Index d = values.cols();
  const Eigen::Index k_max = std::min<Eigen::Index>(n - 1, d);
  if (k < 1 || k > k_max) {
    throw std::invalid_argument("pca: k must be in [1, min(n-1, d)] = [1, " +
                                std::to_string(k_max) + "], got " + std::to_string(k));
  }

  const Eigen::RowVectorXd mean = values.colwise().mean();
  const Eigen::MatrixXd centered = values.rowwise() - mean;
  const Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("pca: eigendecomposition failed");
  }
  const Eigen::VectorXd eigenvalues = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd eigenvectors = solver.eigenvectors();

  // Sign convention first, so the tie-break below sees the fixed vectors.
  std::vector<Eigen::VectorXd> vectors(static_cast<size_t>(d));
  std::vector<int> dominant(static_cast<size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::VectorXd v = eigenvectors.col(i);
    const int dom = dominant_index(v);
    if (v(dom) < 0) v = -v;
    vectors[static_cast<size_t>(i)] = std::move(v);
    dominant[static_cast<size_t>(i)] = dom;
  }

  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double la = eigenvalues(a), lb = eigenvalues(b);
    if (la != lb) return la > lb;
    return dominant[static_cast<size_t>(a)] < dominant[static_cast<size_t>(b)];
  });

  double total = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) total += std::max(0.0, eigenvalues(i));

  ProjectedData out;
  out.component_loadings.resize(k, d);
  out.explained_variance_ratio.resize(k);
  out.dominant_columns.resize(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    const int src = order[static_cast<size_t>(i)];
    out.component_loadings.row(i) = vectors[static_cast<size_t>(src)].transpose();
    const double lambda = std::max(0.0, eigenvalues(src));
    out.explained_variance_ratio(i) = total > 0.0 ? lambda / total : 0.0;
    out.dominant_columns[static_cast<size_t>(i)] = dominant[static_cast<size_t>(src)];
  }
  out.coords = centered * out.component_loadings.transpose();
  return out;
}

ProjectedData pca_fit_transform(const PointCloud& pc, int k) {
  return pca_fit_transform(pc.values, k);
}

std::string pca_report_text(const ProjectedData& projected,
                            const std::vector<std::string>& column_labels) {
  std::ostringstream out;
  out << "lens dimension: " << projected.lens_dimension() << "\n";
  for (int i = 0; i < projected.lens_dimension(); ++i) {
    const int col = projected.dominant_columns[static_cast<size_t>(i)];
    out << "component " << i << ": explained_variance_ratio="
        << format_double(projected.explained_variance_ratio(i), 9) << " dominant_column=" << col;
    if (col >= 0 && static_cast<size_t>(col) < column_labels.size()) {
      out << " (" << column_labels[static_cast<size_t>(col)] << ")";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace tda
