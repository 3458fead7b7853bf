#include "tda/dbscan.hpp"

#include <queue>
#include <stdexcept>

namespace tda {

std::vector<int> dbscan(const Eigen::Ref<const Eigen::MatrixXd>& coords, double eps,
                        int min_samples) {
  if (eps <= 0.0) {
    throw std::invalid_argument("dbscan: eps must be positive");
  }
  if (min_samples < 1) {
    throw std::invalid_argument("dbscan: min_samples must be >= 1");
  }
  const int n = static_cast<int>(coords.rows());
  const double eps_sq = eps * eps;

  std::vector<std::vector<int>> neighbors(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    neighbors[static_cast<size_t>(i)].push_back(i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((coords.row(i) - coords.row(j)).squaredNorm() <= eps_sq) {
        neighbors[static_cast<size_t>(i)].push_back(j);
        neighbors[static_cast<size_t>(j)].push_back(i);
      }
    }
  }
  std::vector<char> core(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    core[static_cast<size_t>(i)] =
        static_cast<int>(neighbors[static_cast<size_t>(i)].size()) >= min_samples;
  }

  std::vector<int> labels(static_cast<size_t>(n), kNoiseLabel);
  int next_cluster = 0;
  for (int i = 0; i < n; ++i) {
    if (!core[static_cast<size_t>(i)] || labels[static_cast<size_t>(i)] != kNoiseLabel) continue;
    const int cluster = next_cluster++;
    std::queue<int> frontier;
    labels[static_cast<size_t>(i)] = cluster;
    frontier.push(i);
    while (!frontier.empty()) {
      const int p = frontier.front();
      frontier.pop();
      for (int q : neighbors[static_cast<size_t>(p)]) {
        if (!core[static_cast<size_t>(q)] || labels[static_cast<size_t>(q)] != kNoiseLabel) {
          continue;
        }
        labels[static_cast<size_t>(q)] = cluster;
        frontier.push(q);
      }
    }
  }

  // Border points: join the cluster of the smallest-index core neighbor.
  for (int i = 0; i < n; ++i) {
    if (core[static_cast<size_t>(i)]) continue;
    for (int q : neighbors[static_cast<size_t>(i)]) {  // ascending after i itself
      if (core[static_cast<size_t>(q)]) {
        labels[static_cast<size_t>(i)] = labels[static_cast<size_t>(q)];
        break;
      }
    }
  }
  return labels;
}

}  // namespace tda
