#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "emx/dpc.hpp"
#include "emx/instances.hpp"
#include "test_util.hpp"

using namespace emx;

namespace {

// Indices of points no other point dominates, by pairwise scan.
std::vector<std::uint32_t> maximal_indices(const PointSet& s) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < s.size() && !dominated; ++j) {
      if (j != i && dominates(s[j], s[i])) dominated = true;
    }
    if (!dominated) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

}  // namespace

TEST_CASE("subset budget schedule") {
  const std::size_t big = std::size_t(1) << 40;
  CHECK(rj_schedule(1, big) == 4);
  CHECK(rj_schedule(2, big) == 16);
  CHECK(rj_schedule(3, big) == 256);
  CHECK(rj_schedule(4, big) == 65536);
  CHECK(rj_schedule(5, 1000) == 1024);  // capped at the next power of two >= n
  CHECK(rj_schedule(1, 2) == 2);
  CHECK(rj_schedule(1, 3) == 4);
  CHECK(rj_schedule(7, 1000) == 1024);  // schedule saturates at the cap
  CHECK(rj_schedule(40, 5) == 8);
  CHECK_THROWS_AS(rj_schedule(0, 10), std::invalid_argument);
  CHECK_THROWS_AS(rj_schedule(1, 0), std::invalid_argument);
}

TEST_CASE("budget schedule never decreases and reaches the cap") {
  for (std::size_t n : {2, 5, 17, 100, 4097}) {
    std::size_t prev = 0;
    for (std::size_t j = 1; j <= 10; ++j) {
      std::size_t r = rj_schedule(j, n);
      CHECK(r >= prev);
      CHECK(r <= std::bit_ceil(n));
      prev = r;
    }
    CHECK(prev == std::bit_ceil(n));
  }
}

TEST_CASE("one prune round on a dominated pair") {
  PointSet s = PointSet::from_rows({{1, 1}, {2, 2}});
  PruneResult res = prune_iteration(s, 2, Exec::serial);
  CHECK(res.record.sigma_before == 2);
  CHECK(res.record.sigma_after == 1);
  CHECK(res.record.queries_issued == 2);  // one corner per nonempty subset
  CHECK(res.record.subsets_pruned == 1);
  REQUIRE(res.survivors.size() == 1);
  CHECK(res.survivors[0][0] == 2);
  CHECK(res.survivors[0][1] == 2);
  REQUIRE(res.kept_subsets.size() == 1);
  CHECK(res.kept_subsets[0] == std::vector<std::uint32_t>{1});
}

TEST_CASE("prune round keeps an antichain intact") {
  PointSet s = PointSet::from_rows({{1, 4}, {2, 3}, {3, 2}, {4, 1}});
  PruneResult res = prune_iteration(s, 4, Exec::serial);
  CHECK(res.record.sigma_after == 4);
  CHECK(res.record.subsets_pruned == 0);
  CHECK(res.survivors.flat() == s.flat());
}

TEST_CASE("prune round never drops a subset holding a maximal point") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 120; ++round) {
    std::size_t d = 2 + rng() % 4;
    std::size_t n = 2 + rng() % 150;
    PointSet s = testutil::random_points(rng, n, d, round % 3 == 0);
    std::size_t r = 1 + rng() % 32;
    PruneResult res = prune_iteration(s, r, Exec::serial);

    std::vector<std::uint8_t> kept(n, 0);
    for (const auto& subset : res.kept_subsets)
      for (std::uint32_t i : subset) kept[i] = 1;
    for (std::uint32_t i : maximal_indices(s)) CHECK(kept[i] == 1);

    // Pruning only removes dominated points, so the maxima are unchanged.
    CHECK(testutil::canon(naive_maxima(res.survivors)) ==
          testutil::canon(naive_maxima(s)));
    std::size_t pruned_points = 0;
    for (std::size_t k = 0; k < res.kept_subsets.size(); ++k)
      pruned_points += res.kept_subsets[k].size();
    CHECK(res.record.sigma_after == pruned_points);
    CHECK(res.record.sigma_before - res.record.sigma_after ==
          s.size() - res.survivors.size());
  }
}

TEST_CASE("maxima of a dominated pair") {
  PointSet s = PointSet::from_rows({{1, 1}, {2, 2}});
  MaximaResult res = compute_maxima(s, Exec::serial);
  REQUIRE(res.maxima.size() == 1);
  CHECK(res.maxima[0][0] == 2);
  CHECK(res.trace.iterations.size() == 1);
  CHECK(res.trace.total_queries == 2);
  CHECK(res.trace.duplicates_removed == 0);
  CHECK(res.trace.output_size == 1);
}

TEST_CASE("maxima of a single point or pure duplicates") {
  PointSet one = PointSet::from_rows({{3, 7}});
  MaximaResult res1 = compute_maxima(one, Exec::serial);
  CHECK(res1.maxima.flat() == one.flat());
  CHECK(res1.trace.iterations.empty());

  PointSet dups = PointSet::from_rows({{3, 7}, {3, 7}, {3, 7}});
  MaximaResult res2 = compute_maxima(dups, Exec::serial);
  CHECK(res2.maxima.size() == 1);
  CHECK(res2.trace.duplicates_removed == 2);
  CHECK(res2.trace.iterations.empty());
}

TEST_CASE("compute_maxima rejects an empty set") {
  PointSet empty(2, {});
  CHECK_THROWS_AS(compute_maxima(empty), std::invalid_argument);
}

TEST_CASE("maxima agree with the pairwise reference") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 120; ++round) {
    std::size_t d = 2 + rng() % 5;
    std::size_t n = 1 + rng() % 200;
    PointSet s = testutil::random_points(rng, n, d, round % 2 == 0);
    MaximaResult res = compute_maxima(s, Exec::serial);
    PointSet expect = naive_maxima(dedupe(s).first, Exec::serial);
    // Same points in the same (input) order, not merely as sets.
    CHECK(res.maxima.flat() == expect.flat());
    CHECK(res.trace.output_size == res.maxima.size());
  }
}

TEST_CASE("maxima do not depend on input order") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 40; ++round) {
    std::size_t d = 2 + rng() % 3;
    PointSet s = testutil::random_points(rng, 2 + rng() % 120, d, round % 2 == 0);
    MaximaResult a = compute_maxima(s, Exec::serial);
    MaximaResult b = compute_maxima(testutil::permuted(s, rng), Exec::serial);
    CHECK(testutil::canon(a.maxima) == testutil::canon(b.maxima));
  }
}

TEST_CASE("round count stays within the doubly logarithmic budget") {
  std::mt19937_64 rng(44);
  for (std::size_t n : {16, 64, 256, 1024, 4096}) {
    for (std::size_t d : {2, 3, 4}) {
      PointSet s = testutil::random_points(rng, n, d);
      MaximaResult res = compute_maxima(s, Exec::serial);
      std::size_t n0 = dedupe(s).first.size();
      double bound = std::ceil(std::log2(std::log2(double(n0)))) + 1.0;
      CHECK(double(res.trace.iterations.size()) <= bound);
    }
  }
}

TEST_CASE("worst-case antichain still terminates on schedule") {
  // Diagonal antichain: nothing can ever be pruned.
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 1024; ++i) rows.push_back({double(i), double(1024 - i)});
  PointSet s = PointSet::from_rows(rows);
  MaximaResult res = compute_maxima(s, Exec::serial);
  CHECK(res.maxima.size() == 1024);
  // ceil(log2 log2 1024) + 1 = 5 rounds at most; the schedule hits the cap
  // r = 1024 at round 4 and stops there.
  CHECK(res.trace.iterations.size() == 4);
  for (const IterationRecord& rec : res.trace.iterations) {
    CHECK(rec.sigma_before == 1024);
    CHECK(rec.sigma_after == 1024);
    CHECK(rec.subsets_pruned == 0);
  }
}

TEST_CASE("trace records are internally consistent") {
  std::mt19937_64 rng(45);
  for (int round = 0; round < 40; ++round) {
    std::size_t d = 2 + rng() % 4;
    PointSet s = testutil::random_points(rng, 4 + rng() % 300, d, round % 2 == 0);
    MaximaResult res = compute_maxima(s, Exec::serial);
    std::size_t n0 = dedupe(s).first.size();
    std::uint64_t total = 0;
    std::size_t entering = n0;
    for (std::size_t k = 0; k < res.trace.iterations.size(); ++k) {
      const IterationRecord& rec = res.trace.iterations[k];
      CHECK(rec.j == k + 1);
      CHECK(rec.r_j == rj_schedule(k + 1, n0));
      CHECK(rec.sigma_before == entering);
      CHECK(rec.sigma_after <= rec.sigma_before);
      CHECK(rec.sigma_after >= res.maxima.size());
      // One corner query per nonempty subset, never more than the budget.
      CHECK(rec.queries_issued <= rec.r_j);
      CHECK(rec.queries_issued >= 1);
      entering = rec.sigma_after;
      total += rec.queries_issued;
    }
    CHECK(res.trace.total_queries == total);
  }
}

TEST_CASE("generated families come out exactly right") {
  std::mt19937_64 rng(46);
  for (int round = 0; round < 12; ++round) {
    std::size_t d = 2 + rng() % 4;
    GeneratedInstance cascade = gen_cascade(200, 14, d, rng());
    MaximaResult mc = compute_maxima(cascade.points, Exec::serial);
    CHECK(mc.maxima.size() == cascade.known_maxima_size);

    GeneratedInstance balanced = gen_balanced(192, 12, d, rng());
    MaximaResult mb = compute_maxima(balanced.points, Exec::serial);
    CHECK(mb.maxima.size() == balanced.known_maxima_size);
  }
}
