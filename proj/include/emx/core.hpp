#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace emx {

// Read-only view of one point's coordinates.
using PointRef = std::span<const double>;

// A single point. `index` is the position the point had in the set it was
// taken from, or -1 when it never belonged to one.
struct Point {
  std::vector<double> coords;
  std::int64_t index = -1;

  Point() = default;
  explicit Point(std::vector<double> c, std::int64_t idx = -1)
      : coords(std::move(c)), index(idx) {}

  std::size_t dim() const { return coords.size(); }
  PointRef ref() const { return coords; }
};

// Immutable set of points of equal dimension d >= 2, stored row-major.
// Construction rejects non-finite coordinates. Duplicates are allowed;
// dedupe() produces a duplicate-free copy.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dim, std::vector<double> flat);
  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : flat_.size() / dim_; }
  bool empty() const { return flat_.empty(); }
  PointRef operator[](std::size_t i) const {
    return PointRef(flat_.data() + i * dim_, dim_);
  }
  Point point(std::size_t i) const;
  PointSet subset(std::span<const std::uint32_t> indices) const;
  const std::vector<double>& flat() const { return flat_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> flat_;
};

// Closed axis-aligned box; lo[i] <= hi[i] for every axis.
struct AxisBox {
  std::vector<double> lo;
  std::vector<double> hi;

  AxisBox(std::vector<double> lo_corner, std::vector<double> hi_corner);
  std::size_t dim() const { return lo.size(); }
};

enum class BoxRelation { disjoint, partially_intersects, contained_in };

// p dominates q: p >= q on every axis and p > q on at least one.
bool dominates(PointRef p, PointRef q);

// p >= q on every axis and p differs from q in at least one coordinate.
// Extensionally the same predicate as dominates(); both exist because the
// callers phrase their contracts differently (set pruning vs. corner tests).
bool weakly_dominates_excl(PointRef p, PointRef q);

AxisBox min_enclosing_box(const PointSet& s);
AxisBox min_enclosing_box(const PointSet& s, std::span<const std::uint32_t> subset);

Point max_corner(const AxisBox& b);

// Relation of `cell` to `b` under closed-box semantics: contained_in when
// cell lies entirely inside b, disjoint when they share no point.
BoxRelation box_relation(const AxisBox& cell, const AxisBox& b);

bool contains_point(const AxisBox& b, PointRef p);

// Removes exact coordinate duplicates, keeping the first occurrence of each
// point and the original relative order. Returns the clean set and the
// number of dropped points.
std::pair<PointSet, std::size_t> dedupe(const PointSet& s);

// Lexicographic comparison of coordinate rows; -1 / 0 / +1.
int compare_rows(PointRef a, PointRef b);
bool equal_rows(PointRef a, PointRef b);

}  // namespace emx
