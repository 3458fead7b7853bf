#include "tda/cover.hpp"

#include <stdexcept>

namespace tda {

bool CoverElement::contains(const Eigen::Ref<const Eigen::RowVectorXd>& point) const {
  for (size_t a = 0; a < box.size(); ++a) {
    const double x = point(static_cast<Eigen::Index>(a));
    if (x < box[a][0] || x > box[a][1]) return false;
  }
  return true;
}

std::vector<CoverElement> build_cover(const Eigen::Ref<const Eigen::MatrixXd>& coords,
                                      int n_intervals, double overlap,
                                      std::vector<std::string>* warnings) {
  if (coords.rows() < 1 || coords.cols() < 1) {
    throw std::invalid_argument("cover: coords must be non-empty");
  }
  if (n_intervals < 1) {
    throw std::invalid_argument("cover: n_intervals must be >= 1");
  }
  if (overlap < 0.0 || overlap >= 1.0) {
    throw std::invalid_argument("cover: overlap must be in [0, 1)");
  }
  const int k = static_cast<int>(coords.cols());

  std::vector<std::vector<std::array<double, 2>>> axis_intervals(static_cast<size_t>(k));
  for (int a = 0; a < k; ++a) {
    const double lo = coords.col(a).minCoeff();
    const double hi = coords.col(a).maxCoeff();
    auto& intervals = axis_intervals[static_cast<size_t>(a)];
    if (lo == hi) {
      intervals.push_back({lo - 0.5, hi + 0.5});
      if (warnings != nullptr) {
        warnings->push_back("cover axis " + std::to_string(a) +
                            " is degenerate (constant value); using a single interval");
      }
      continue;
    }
    const double range = hi - lo;
    const double length = range / (n_intervals * (1.0 - overlap) + overlap);
    for (int i = 0; i < n_intervals; ++i) {
      double start = lo + i * length * (1.0 - overlap);
      double end = start + length;
      if (i == 0) start = lo;
      if (i == n_intervals - 1) end = hi;  // pin against fp drift at the ends
      intervals.push_back({start, end});
    }
  }

  // Cartesian product in lexicographic index order, axis 0 slowest.
  std::vector<CoverElement> elements;
  std::vector<int> idx(static_cast<size_t>(k), 0);
  while (true) {
    CoverElement e;
    e.index = idx;
    e.box.resize(static_cast<size_t>(k));
    for (int a = 0; a < k; ++a) {
      e.box[static_cast<size_t>(a)] =
          axis_intervals[static_cast<size_t>(a)][static_cast<size_t>(idx[static_cast<size_t>(a)])];
    }
    elements.push_back(std::move(e));
    int a = k - 1;
    while (a >= 0) {
      if (++idx[static_cast<size_t>(a)] <
          static_cast<int>(axis_intervals[static_cast<size_t>(a)].size())) {
        break;
      }
      idx[static_cast<size_t>(a)] = 0;
      --a;
    }
    if (a < 0) break;
  }
  return elements;
}

}  // namespace tda
