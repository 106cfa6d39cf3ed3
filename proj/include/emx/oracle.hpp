#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "emx/core.hpp"
#include "emx/exec.hpp"

namespace emx {

// Reference oracle: out[i] = 1 iff some point of s weakly dominates
// queries[i] and differs from it in at least one coordinate. Serial on
// purpose; every other oracle is tested against it.
std::vector<std::uint8_t> brute_batch(const PointSet& s,
                                      const std::vector<Point>& queries);

// Staircase over the 2D maxima of a point multiset: xs strictly increasing,
// ys strictly decreasing. Answers both the inclusive predicate ("is some
// stored point >= q") and the exclusive one used for dominance tests.
class Staircase2D {
 public:
  Staircase2D() = default;
  static Staircase2D from_xy(std::vector<std::pair<double, double>> pts);

  bool covers(double x, double y) const;       // exists p >= (x, y)
  bool covers_excl(double x, double y) const;  // additionally p != (x, y)
  std::size_t size() const { return xs_.size(); }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

Staircase2D build_staircase_2d(const PointSet& s);
bool query_staircase(const Staircase2D& st, PointRef q);

// Offline 3D batch: sweeps points and queries in descending third coordinate
// while maintaining a dynamic staircase of the swept (x, y) projections.
// Points whose third coordinate equals a query's are inserted before that
// query is answered; a point exactly equal to the query never counts as its
// own witness.
std::vector<std::uint8_t> offline_sweep_3d(const PointSet& s,
                                           const std::vector<Point>& queries);

namespace detail {

// Answers the inclusive predicate "does some stored point p satisfy p >= q
// componentwise" for any dimension. Small sets fall back to a linear scan,
// d = 2 uses a staircase, d >= 3 peels the last coordinate with a balanced
// tree whose canonical nodes each hold a (d-1)-dimensional sub-oracle.
// Query cost is O(log^(d-1) m) for a set of m points.
class CoverOracle {
 public:
  CoverOracle();
  CoverOracle(std::vector<double> flat, std::size_t dim);
  CoverOracle(CoverOracle&&) noexcept;
  CoverOracle& operator=(CoverOracle&&) noexcept;
  ~CoverOracle();

  // Reads the first dim() entries of q.
  bool covers(std::span<const double> q) const;
  std::size_t size() const { return count_; }
  std::size_t dim() const { return dim_; }

 private:
  struct Node;
  enum class Mode { empty, brute, staircase, tree };

  bool node_covers(const Node& node, std::size_t k, std::span<const double> q) const;
  std::unique_ptr<Node> build_node(const std::vector<double>& sorted_flat,
                                   std::size_t lo, std::size_t hi);

  Mode mode_ = Mode::empty;
  std::size_t dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> brute_;        // Mode::brute row storage
  Staircase2D stairs_;               // Mode::staircase
  std::vector<double> last_sorted_;  // Mode::tree: sorted last coordinates
  std::unique_ptr<Node> root_;
};

}  // namespace detail

// Dominance oracle that chunks the point set into ceil(n / r) groups of at
// most r points (input order) and consults every group on every query, so
// the per-query group count is a fixed, assertable quantity.
class GroupedOracle {
 public:
  GroupedOracle(const PointSet& s, std::size_t r);

  // True iff some point of the set weakly dominates q and differs from it.
  bool query(PointRef q) const;

  std::size_t group_count() const { return groups_.size(); }
  std::size_t group_capacity() const { return r_; }
  std::size_t dim() const { return dim_; }

 private:
  struct Group {
    std::vector<double> sorted_rows;  // lexicographically sorted, for exact lookup
    detail::CoverOracle cover;
  };

  bool group_reports(const Group& g, PointRef q) const;

  std::size_t dim_ = 0;
  std::size_t r_ = 0;
  std::vector<Group> groups_;
};

GroupedOracle build_grouped(const PointSet& s, std::size_t r);
bool grouped_query(const GroupedOracle& g, PointRef q);

struct BatchCounters {
  std::uint64_t queries = 0;
  std::uint64_t groups_touched = 0;
};

// Dispatching batch oracle. Small sets are answered brute force, d = 2 by a
// staircase, d = 3 by the offline sweep, d >= 4 by a GroupedOracle built
// with `budget_r` as group capacity. Answers are independent of the
// execution policy. groups_touched counts group consultations for the
// grouped path and one consulted structure per query otherwise.
std::vector<std::uint8_t> batch_dominated(const PointSet& s,
                                          const std::vector<Point>& queries,
                                          std::size_t budget_r,
                                          Exec ex = Exec::parallel,
                                          BatchCounters* counters = nullptr);

}  // namespace emx
