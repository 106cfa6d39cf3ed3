#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "emx/core.hpp"

namespace emx {

// Balanced k-d partition of a point set. The requested subset count r is
// rounded up to the next power of two r'; the subset list always holds
// exactly r' entries, padded with empty subsets where the recursion ran out
// of points. Every nonempty subset has at most ceil(n / r') points and its
// cell is the minimum enclosing box of its points.
struct KdPartition {
  std::vector<std::vector<std::uint32_t>> subsets;  // indices into the source set
  std::vector<std::optional<AxisBox>> cells;        // nullopt for empty subsets
  std::size_t requested_r = 0;
  std::size_t padded_r = 0;  // next power of two >= requested_r
  std::size_t depth = 0;     // deepest split level actually used
};

// Splits by lower median, cycling the axis with depth (axis = depth mod d).
// Coordinate ties break on the point's index, so the split is a total order
// and deterministic. Recursion stops early once a range holds <= 1 point.
KdPartition build_partition(const PointSet& s, std::size_t r);

// Number of nonempty cells that partially intersect b (neither disjoint from
// b nor contained in it).
std::size_t partial_intersection_count(const KdPartition& p, const AxisBox& b);

// Number of points inside the closed box b whose cell is not contained in b.
// Bounded by partial_intersection_count(p, b) * ceil(n / padded_r).
std::size_t residual_points(const KdPartition& p, const PointSet& s, const AxisBox& b);

}  // namespace emx
