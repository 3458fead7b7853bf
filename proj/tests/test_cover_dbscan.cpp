#include "tda/cover.hpp"
#include "tda/dbscan.hpp"

#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace tda;

TEST_CASE("cover of [0,10] with 2 intervals and 0.3 overlap") {
  Eigen::MatrixXd coords(2, 1);
  coords << 0, 10;
  const auto cover = build_cover(coords, 2, 0.3);
  REQUIRE(cover.size() == 2);
  const double length = 10.0 / 1.7;
  CHECK(cover[0].box[0][0] == 0.0);
  CHECK(cover[0].box[0][1] == doctest::Approx(length).epsilon(1e-9));
  CHECK(cover[1].box[0][0] == doctest::Approx(10.0 - length).epsilon(1e-9));
  CHECK(cover[1].box[0][1] == 10.0);
  const double shared = cover[0].box[0][1] - cover[1].box[0][0];
  CHECK(shared == doctest::Approx(0.3 * length).epsilon(1e-9));
  CHECK(shared == doctest::Approx(1.7647).epsilon(1e-4));
}

TEST_CASE("zero overlap partitions the range") {
  Eigen::MatrixXd coords(2, 1);
  coords << 0, 12;
  const auto cover = build_cover(coords, 4, 0.0);
  REQUIRE(cover.size() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(cover[i].box[0][0] == doctest::Approx(3.0 * i));
    CHECK(cover[i].box[0][1] == doctest::Approx(3.0 * (i + 1)));
  }
}

TEST_CASE("single interval covers the full range") {
  Eigen::MatrixXd coords(3, 1);
  coords << -2, 0, 5;
  const auto cover = build_cover(coords, 1, 0.3);
  REQUIRE(cover.size() == 1);
  CHECK(cover[0].box[0][0] == -2.0);
  CHECK(cover[0].box[0][1] == 5.0);
}

TEST_CASE("degenerate axis yields one padded interval and a warning") {
  Eigen::MatrixXd coords(3, 2);
  coords << 0, 4, 1, 4, 2, 4;
  std::vector<std::string> warnings;
  const auto cover = build_cover(coords, 3, 0.2, &warnings);
  CHECK(cover.size() == 3);  // 3 x 1
  CHECK(warnings.size() == 1);
  for (const auto& e : cover) {
    CHECK(e.box[1][0] < e.box[1][1]);
    CHECK(e.box[1][0] <= 4.0);
    CHECK(4.0 <= e.box[1][1]);
  }
}

TEST_CASE("every point is covered; interior points hit at most 2 intervals per axis") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> uni(-5.0, 5.0);
  std::uniform_real_distribution<double> ov(0.0, 0.49);
  for (int rep = 0; rep < 50; ++rep) {
    const int n_intervals = 1 + static_cast<int>(rng() % 12);
    const double overlap = ov(rng);
    Eigen::MatrixXd coords(30, 1);
    for (int i = 0; i < 30; ++i) coords(i, 0) = uni(rng);
    const auto cover = build_cover(coords, n_intervals, overlap);
    for (int i = 0; i < 30; ++i) {
      int hits = 0;
      for (const auto& e : cover) {
        if (e.contains(coords.row(i))) ++hits;
      }
      CHECK(hits >= 1);
      CHECK(hits <= 2);
    }
  }
}

TEST_CASE("2-d cover elements are products in lexicographic order") {
  Eigen::MatrixXd coords(4, 2);
  coords << 0, 0, 1, 0, 0, 1, 1, 1;
  const auto cover = build_cover(coords, 2, 0.2);
  REQUIRE(cover.size() == 4);
  CHECK(cover[0].index == std::vector<int>{0, 0});
  CHECK(cover[1].index == std::vector<int>{0, 1});
  CHECK(cover[2].index == std::vector<int>{1, 0});
  CHECK(cover[3].index == std::vector<int>{1, 1});
}

TEST_CASE("2-d cover: points land in at most 2^k elements") {
  std::mt19937 rng(101);
  const Eigen::MatrixXd coords = testsupport::random_points(rng, 40, 2, 3.0);
  const auto cover = build_cover(coords, 5, 0.35);
  REQUIRE(cover.size() == 25);
  for (int i = 0; i < 40; ++i) {
    int hits = 0;
    for (const auto& e : cover) {
      if (e.contains(coords.row(i))) ++hits;
    }
    CHECK(hits >= 1);
    CHECK(hits <= 4);
  }
}

TEST_CASE("cover rejects bad parameters") {
  Eigen::MatrixXd coords(2, 1);
  coords << 0, 1;
  CHECK_THROWS_AS(build_cover(coords, 0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(build_cover(coords, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_cover(coords, 2, -0.1), std::invalid_argument);
}

TEST_CASE("dbscan separates two 1-d blobs") {
  Eigen::MatrixXd coords(6, 1);
  coords << 0, 0.1, 0.2, 10, 10.1, 10.2;
  const auto labels = dbscan(coords, 0.5, 2);
  CHECK(labels == std::vector<int>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("an isolated point is noise") {
  Eigen::MatrixXd coords(1, 1);
  coords << 3.0;
  CHECK(dbscan(coords, 1.0, 2) == std::vector<int>{kNoiseLabel});
}

TEST_CASE("a tight cloud is one cluster with no noise") {
  std::mt19937 rng(73);
  const Eigen::MatrixXd coords = testsupport::random_points(rng, 12, 2, 0.3);
  const auto labels = dbscan(coords, 1.0, 12);
  for (int l : labels) CHECK(l == 0);
}

TEST_CASE("dbscan matches the density-reachability oracle") {
  std::mt19937 rng(79);
  std::uniform_real_distribution<double> pick_eps(0.05, 0.5);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 20 + static_cast<int>(rng() % 60);
    const Eigen::MatrixXd coords = testsupport::random_points(rng, n, 2);
    const double eps = pick_eps(rng);
    const int min_samples = 1 + static_cast<int>(rng() % 6);
    const auto impl = dbscan(coords, eps, min_samples);
    const auto expect = oracles::dbscan_by_reachability(coords, eps, min_samples);
    CHECK(oracles::labels_equivalent(impl, expect));
  }
}

TEST_CASE("dbscan labels are stable under permutation up to renaming") {
  std::mt19937 rng(83);
  const Eigen::MatrixXd coords = testsupport::random_points(rng, 40, 2);
  std::vector<int> perm(40);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd shuffled(40, 2);
  for (int i = 0; i < 40; ++i) shuffled.row(i) = coords.row(perm[i]);

  const auto base = dbscan(coords, 0.2, 3);
  const auto moved = dbscan(shuffled, 0.2, 3);
  std::vector<int> moved_back(40);
  for (int i = 0; i < 40; ++i) moved_back[static_cast<size_t>(perm[i])] = moved[static_cast<size_t>(i)];
  CHECK(oracles::labels_equivalent(base, moved_back));
}

TEST_CASE("dbscan rejects bad parameters") {
  Eigen::MatrixXd coords(2, 1);
  coords << 0, 1;
  CHECK_THROWS_AS(dbscan(coords, 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(dbscan(coords, 1.0, 0), std::invalid_argument);
}
