#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "emx/instances.hpp"
#include "test_util.hpp"

using namespace emx;

TEST_CASE("naive and sweep baselines agree on 2D data, duplicates included") {
  std::mt19937_64 rng(51);
  for (int round = 0; round < 150; ++round) {
    PointSet s = testutil::random_points(rng, 1 + rng() % 200, 2, round % 2 == 0);
    PointSet a = naive_maxima(s, Exec::serial);
    PointSet b = sweep_maxima_2d(s);
    CHECK(a.flat() == b.flat());  // both keep input order
  }
}

TEST_CASE("duplicate maximal points all survive both baselines") {
  PointSet s = PointSet::from_rows({{1, 1}, {2, 2}, {2, 2}});
  PointSet a = naive_maxima(s, Exec::serial);
  PointSet b = sweep_maxima_2d(s);
  REQUIRE(a.size() == 2);
  CHECK(a[0][0] == 2);
  CHECK(a[1][0] == 2);
  CHECK(a.flat() == b.flat());
}

TEST_CASE("baselines reject empty input") {
  PointSet empty(2, {});
  CHECK_THROWS_AS(naive_maxima(empty), std::invalid_argument);
  CHECK_THROWS_AS(sweep_maxima_2d(empty), std::invalid_argument);
  PointSet s3 = PointSet::from_rows({{1, 2, 3}});
  CHECK_THROWS_AS(sweep_maxima_2d(s3), std::invalid_argument);
}

TEST_CASE("cascade instances have exactly h maxima") {
  std::mt19937_64 rng(52);
  for (int round = 0; round < 20; ++round) {
    std::size_t d = 2 + rng() % 4;
    std::size_t n = 20 + rng() % 300;
    std::size_t h = 1 + rng() % 15;
    GeneratedInstance inst = gen_cascade(n, h, d, rng());
    CHECK(inst.points.size() == n);
    CHECK(inst.points.dim() == d);
    CHECK(inst.known_maxima_size == h);
    CHECK(naive_maxima(inst.points, Exec::serial).size() == h);
  }
}

TEST_CASE("balanced instances have exactly h maxima") {
  std::mt19937_64 rng(53);
  for (int round = 0; round < 20; ++round) {
    std::size_t d = 2 + rng() % 4;
    std::size_t h = 1 + rng() % 12;
    std::size_t n = h * (1 + rng() % 25);
    GeneratedInstance inst = gen_balanced(n, h, d, rng());
    CHECK(inst.points.size() == n);
    CHECK(inst.known_maxima_size == h);
    CHECK(naive_maxima(inst.points, Exec::serial).size() == h);
  }
}

TEST_CASE("balanced generation requires h to divide n") {
  CHECK_THROWS_AS(gen_balanced(10, 3, 2, 0), std::invalid_argument);
}

TEST_CASE("uniform instances record their measured maxima count") {
  std::mt19937_64 rng(54);
  for (int round = 0; round < 10; ++round) {
    std::size_t d = 2 + rng() % 4;
    GeneratedInstance inst = gen_uniform(1 + rng() % 400, d, rng());
    CHECK(inst.known_maxima_size == naive_maxima(inst.points, Exec::serial).size());
    CHECK_FALSE(inst.known_partition.has_value());
    for (double v : inst.points.flat()) {
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
    }
  }
}

TEST_CASE("generators are deterministic in the seed") {
  GeneratedInstance a = gen_cascade(100, 10, 3, 7);
  GeneratedInstance b = gen_cascade(100, 10, 3, 7);
  CHECK(a.points.flat() == b.points.flat());
  GeneratedInstance c = gen_cascade(100, 10, 3, 8);
  CHECK(a.points.flat() != c.points.flat());

  GeneratedInstance u1 = gen_uniform(64, 4, 11);
  GeneratedInstance u2 = gen_uniform(64, 4, 11);
  CHECK(u1.points.flat() == u2.points.flat());
}

TEST_CASE("generator partitions pass verification") {
  std::mt19937_64 rng(55);
  for (int round = 0; round < 12; ++round) {
    std::size_t d = 2 + rng() % 4;
    GeneratedInstance cascade = gen_cascade(120, 8, d, rng());
    REQUIRE(cascade.known_partition.has_value());
    CHECK(respectful_verify(cascade.points, cascade.known_partition->boxes,
                            cascade.partition_subsets));
    GeneratedInstance balanced = gen_balanced(120, 8, d, rng());
    REQUIRE(balanced.known_partition.has_value());
    CHECK(respectful_verify(balanced.points, balanced.known_partition->boxes,
                            balanced.partition_subsets));
  }
}

TEST_CASE("verification fails when a block's corner clears the maxima") {
  GeneratedInstance inst = gen_cascade(50, 5, 3, 9);
  REQUIRE(inst.known_partition.has_value());
  auto boxes = inst.known_partition->boxes;
  // Inflate the cluster box past every staircase point: it still encloses
  // its block, but its upper corner is witnessed by nobody.
  boxes[0] = AxisBox(std::vector<double>(3, 0.0), std::vector<double>(3, 7.0));
  CHECK_FALSE(respectful_verify(inst.points, boxes, inst.partition_subsets));
}

TEST_CASE("verification rejects malformed partitions") {
  PointSet s = PointSet::from_rows({{0, 0}, {1, 1}});
  AxisBox all({0, 0}, {1, 1});
  CHECK_THROWS_AS(respectful_verify(s, {all}, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(respectful_verify(s, {all}, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(respectful_verify(s, {all}, {{0, 7}}), std::invalid_argument);
  CHECK_THROWS_AS(respectful_verify(s, {all, all}, {{0, 1}}), std::invalid_argument);
  AxisBox small({0, 0}, {0.5, 0.5});
  CHECK_THROWS_AS(respectful_verify(s, {small}, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("partition entropy matches hand-computed values") {
  GeneratedInstance inst = gen_cascade(100, 10, 3, 1);
  REQUIRE(inst.known_partition.has_value());
  // Blocks of 90 and ten singletons over n = 100.
  CHECK(partition_entropy(*inst.known_partition) ==
        doctest::Approx(0.8011884).epsilon(2e-6));

  RespectfulPartitionSpec skew;
  skew.n = 8;
  skew.subset_sizes = {5, 1, 1, 1};
  CHECK(partition_entropy(skew) == doctest::Approx(1.5488).epsilon(1e-4));

  RespectfulPartitionSpec even;
  even.n = 8;
  even.subset_sizes = {2, 2, 2, 2};
  CHECK(partition_entropy(even) == 2.0);

  RespectfulPartitionSpec single;
  single.n = 8;
  single.subset_sizes = {8};
  CHECK(partition_entropy(single) == 0.0);
}

TEST_CASE("partition entropy is maximal for even blocks") {
  std::mt19937_64 rng(56);
  for (int round = 0; round < 200; ++round) {
    std::size_t blocks = 2 + rng() % 12;
    RespectfulPartitionSpec spec;
    spec.n = 0;
    for (std::size_t k = 0; k < blocks; ++k) {
      std::size_t sz = 1 + rng() % 20;
      spec.subset_sizes.push_back(sz);
      spec.n += sz;
    }
    double e = partition_entropy(spec);
    CHECK(e >= 0.0);
    CHECK(e <= std::log2(double(blocks)) + 1e-12);
  }
}

TEST_CASE("partition entropy rejects inconsistent specs") {
  RespectfulPartitionSpec bad;
  bad.n = 10;
  bad.subset_sizes = {3, 3};
  CHECK_THROWS_AS(partition_entropy(bad), std::invalid_argument);
  RespectfulPartitionSpec empty;
  empty.n = 0;
  CHECK_THROWS_AS(partition_entropy(empty), std::invalid_argument);
}

TEST_CASE("cost functional matches hand-computed values") {
  RespectfulPartitionSpec even;
  even.n = 8;
  even.subset_sizes = {2, 2, 2, 2};
  // 8 + 4 * 2 * (log2 4)^2 = 40 in four dimensions.
  CHECK(theoretical_cost(even, 4) == 40.0);
  // The exponent d - 2 vanishes in 2D, leaving n + n.
  RespectfulPartitionSpec skew;
  skew.n = 8;
  skew.subset_sizes = {3, 5};
  CHECK(theoretical_cost(skew, 2) == 16.0);
  CHECK_THROWS_AS(theoretical_cost(even, 1), std::invalid_argument);
}

TEST_CASE("uniform-block bound holds with equality for even blocks") {
  CHECK(gibbs_bound_check({2, 2, 2, 2}, 8, 3));
  CHECK_THROWS_AS(gibbs_bound_check({4, 4}, 8, 3), std::invalid_argument);
  CHECK_THROWS_AS(gibbs_bound_check({}, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(gibbs_bound_check({2, 2}, 5, 3), std::invalid_argument);
}

TEST_CASE("uniform-block bound holds on random admissible partitions") {
  std::mt19937_64 rng(57);
  int checked = 0;
  for (int round = 0; round < 1000; ++round) {
    std::size_t d = 3 + rng() % 3;
    std::size_t blocks = 48 + rng() % 48;
    std::vector<std::size_t> sizes;
    std::size_t n = 0;
    for (std::size_t k = 0; k < blocks; ++k) {
      std::size_t sz = 1 + rng() % 8;
      sizes.push_back(sz);
      n += sz;
    }
    std::size_t floor_ratio = std::size_t(1) << (d - 1);
    bool admissible = true;
    for (std::size_t sz : sizes) {
      if (n < sz * floor_ratio) admissible = false;
    }
    if (!admissible) continue;
    ++checked;
    CHECK(gibbs_bound_check(sizes, n, d));
  }
  CHECK(checked > 500);
}

TEST_CASE("family names are stable") {
  CHECK(std::string(family_name(Family::cascade)) == "cascade");
  CHECK(std::string(family_name(Family::balanced)) == "balanced");
  CHECK(std::string(family_name(Family::uniform)) == "uniform");
}
