#include "tda/pca.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace tda;

TEST_CASE("collinear points are rank one") {
  Eigen::MatrixXd v(3, 2);
  v << 1, 2, 2, 4, 3, 6;
  const ProjectedData p = pca_fit_transform(v, 1);
  CHECK(p.explained_variance_ratio(0) == doctest::Approx(1.0).epsilon(1e-12));
  // loading proportional to (1,2)/sqrt(5), sign-fixed positive
  CHECK(p.component_loadings(0, 0) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(p.component_loadings(0, 1) == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));
  CHECK(p.dominant_columns[0] == 1);
}

TEST_CASE("equal eigenvalues resolve deterministically") {
  // 4 points on the axes: covariance is isotropic, eigenvalues tie exactly.
  Eigen::MatrixXd v(4, 2);
  v << 1, 0, -1, 0, 0, 1, 0, -1;
  const ProjectedData a = pca_fit_transform(v, 2);
  const ProjectedData b = pca_fit_transform(v, 2);
  CHECK(a.component_loadings == b.component_loadings);
  CHECK(a.coords == b.coords);
  // tie-break: component 0 takes the smaller dominant column index
  CHECK(a.dominant_columns[0] <= a.dominant_columns[1]);
  CHECK(a.explained_variance_ratio(0) == doctest::Approx(0.5));
}

TEST_CASE("matches the Jacobi oracle on a small cloud") {
  std::mt19937 rng(53);
  const Eigen::MatrixXd v = testsupport::random_points(rng, 4, 3);
  const ProjectedData impl = pca_fit_transform(v, 2);
  const oracles::PcaOracleResult expect = oracles::pca_by_jacobi(v, 2);
  CHECK((impl.coords - expect.coords).cwiseAbs().maxCoeff() < 1e-9);
  for (int i = 0; i < 2; ++i) {
    CHECK(impl.explained_variance_ratio(i) == doctest::Approx(expect.ratios(i)).epsilon(1e-9));
  }
}

TEST_CASE("loadings have unit norm and ratios are non-increasing") {
  std::mt19937 rng(59);
  for (int rep = 0; rep < 10; ++rep) {
    const Eigen::MatrixXd v = testsupport::random_points(rng, 8, 5);
    const ProjectedData p = pca_fit_transform(v, 3);
    for (int i = 0; i < 3; ++i) {
      CHECK(p.component_loadings.row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(p.explained_variance_ratio(0) >= p.explained_variance_ratio(1));
    CHECK(p.explained_variance_ratio(1) >= p.explained_variance_ratio(2));
    CHECK(p.explained_variance_ratio(0) <= 1.0 + 1e-12);
  }
}

TEST_CASE("full-rank projection preserves pairwise distances") {
  std::mt19937 rng(61);
  // rank-2 data in 5 columns: rows are combinations of two fixed directions
  const Eigen::MatrixXd basis = testsupport::random_points(rng, 2, 5);
  const Eigen::MatrixXd weights = testsupport::random_points(rng, 10, 2);
  const Eigen::MatrixXd v = weights * basis;
  const ProjectedData p = pca_fit_transform(v, 2);
  const Eigen::MatrixXd original = pairwise_distances(v);
  const Eigen::MatrixXd reduced = pairwise_distances(p.coords);
  CHECK((original - reduced).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("dominant column follows the dominant-variance column") {
  std::mt19937 rng(67);
  Eigen::MatrixXd v = testsupport::random_points(rng, 20, 4);
  v.col(2) *= 250.0;  // one column dwarfs the rest
  const ProjectedData p = pca_fit_transform(v, 1);
  CHECK(p.dominant_columns[0] == 2);
}

TEST_CASE("k out of range is rejected") {
  Eigen::MatrixXd v(3, 2);
  v << 1, 0, 0, 1, 1, 1;
  CHECK_THROWS_AS(pca_fit_transform(v, 0), std::invalid_argument);
  CHECK_THROWS_AS(pca_fit_transform(v, 3), std::invalid_argument);  // k > min(n-1, d)
}

TEST_CASE("report text names dominant columns") {
  Eigen::MatrixXd v(3, 2);
  v << 1, 2, 2, 4, 3, 6;
  const ProjectedData p = pca_fit_transform(v, 1);
  const std::string report = pca_report_text(p, {"year", "week"});
  CHECK(report.find("dominant_column=1 (week)") != std::string::npos);
  CHECK(report.find("explained_variance_ratio=1") != std::string::npos);
}
