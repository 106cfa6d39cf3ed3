#include "doctest.h"

#include <random>
#include <stdexcept>

#include "emx/core.hpp"
#include "test_util.hpp"

using namespace emx;

TEST_CASE("dominates basic cases") {
  std::vector<double> a{3, 4}, b{3, 2}, c{2, 1}, d{1, 2};
  CHECK(dominates(a, b));
  CHECK_FALSE(dominates(b, a));
  CHECK_FALSE(dominates(d, c));  // incomparable pair
  CHECK_FALSE(dominates(c, d));
  CHECK_FALSE(dominates(a, a));  // never reflexive
}

TEST_CASE("dominates rejects dimension mismatch") {
  std::vector<double> a{1, 2}, b{1, 2, 3};
  CHECK_THROWS_AS(dominates(a, b), std::invalid_argument);
  CHECK_THROWS_AS(weakly_dominates_excl(a, b), std::invalid_argument);
}

TEST_CASE("weak dominance excludes the identical point") {
  std::vector<double> p{2, 2}, q{1, 2};
  CHECK(weakly_dominates_excl(p, q));
  CHECK_FALSE(weakly_dominates_excl(p, p));
  std::vector<double> r{2, 3, 1}, s{2, 3, 1};
  CHECK_FALSE(weakly_dominates_excl(r, s));
}

TEST_CASE("dominance order properties on random points") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 2000; ++round) {
    std::size_t d = 2 + rng() % 4;
    PointSet pts = testutil::random_points(rng, 3, d, round % 2 == 0);
    auto a = pts[0], b = pts[1], c = pts[2];
    CHECK_FALSE(dominates(a, a));
    if (dominates(a, b)) CHECK_FALSE(dominates(b, a));
    if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
    // The two predicates coincide pointwise: p != q exactly when some
    // coordinate is strictly larger, given p >= q everywhere.
    CHECK(dominates(a, b) == weakly_dominates_excl(a, b));
  }
}

TEST_CASE("min_enclosing_box is the tight corner box") {
  PointSet s = PointSet::from_rows({{0, 0}, {1, 2}, {2, 1}});
  AxisBox b = min_enclosing_box(s);
  CHECK(b.lo == std::vector<double>{0, 0});
  CHECK(b.hi == std::vector<double>{2, 2});

  PointSet two = PointSet::from_rows({{0, 0}, {2, 1}});
  Point corner = max_corner(min_enclosing_box(two));
  CHECK(corner.coords == std::vector<double>{2, 1});
}

TEST_CASE("min_enclosing_box of empty set throws") {
  PointSet empty(2, {});
  CHECK_THROWS_AS(min_enclosing_box(empty), std::invalid_argument);
}

TEST_CASE("min_enclosing_box contains every input point") {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 200; ++round) {
    std::size_t d = 2 + rng() % 4;
    PointSet pts = testutil::random_points(rng, 1 + rng() % 40, d);
    AxisBox b = min_enclosing_box(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(contains_point(b, pts[i]));
  }
}

TEST_CASE("box_relation closed-box semantics") {
  AxisBox outer({0, 0}, {2, 2});
  CHECK(box_relation(AxisBox({0, 0}, {1, 1}), outer) == BoxRelation::contained_in);
  CHECK(box_relation(AxisBox({1, 1}, {3, 3}), outer) == BoxRelation::partially_intersects);
  CHECK(box_relation(AxisBox({3, 3}, {4, 4}), outer) == BoxRelation::disjoint);
  // Shared boundary counts as intersection under closed semantics.
  CHECK(box_relation(AxisBox({2, 0}, {3, 1}), outer) == BoxRelation::partially_intersects);
  CHECK(box_relation(outer, outer) == BoxRelation::contained_in);
}

TEST_CASE("dedupe keeps first occurrences in order") {
  PointSet s = PointSet::from_rows({{1, 1}, {2, 2}, {1, 1}, {3, 0}});
  auto [clean, removed] = dedupe(s);
  CHECK(removed == 1);
  REQUIRE(clean.size() == 3);
  CHECK(clean[0][0] == 1);
  CHECK(clean[1][0] == 2);
  CHECK(clean[2][0] == 3);
}

TEST_CASE("dedupe of empty set is a no-op") {
  PointSet empty(3, {});
  auto [clean, removed] = dedupe(empty);
  CHECK(clean.empty());
  CHECK(removed == 0);
}

TEST_CASE("dedupe is idempotent and removal counts add up") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 100; ++round) {
    std::size_t d = 2 + rng() % 3;
    PointSet pts = testutil::random_points(rng, 1 + rng() % 60, d, true);
    auto [clean, removed] = dedupe(pts);
    CHECK(clean.size() + removed == pts.size());
    auto [again, removed2] = dedupe(clean);
    CHECK(removed2 == 0);
    CHECK(again.flat() == clean.flat());
  }
}

TEST_CASE("PointSet rejects invalid construction") {
  CHECK_THROWS_AS(PointSet(1, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(PointSet(2, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(PointSet(2, {1.0, std::numeric_limits<double>::quiet_NaN()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PointSet(2, {1.0, std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);
}

TEST_CASE("AxisBox rejects inverted corners") {
  CHECK_THROWS_AS(AxisBox({1, 0}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(AxisBox({0, 0}, {1}), std::invalid_argument);
}
