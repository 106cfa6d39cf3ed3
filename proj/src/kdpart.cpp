#include "emx/kdpart.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace emx {

namespace {

struct Builder {
  const PointSet& s;
  std::vector<std::uint32_t> idx;
  std::vector<std::vector<std::uint32_t>> subsets;
  std::size_t target_depth = 0;
  std::size_t depth_used = 0;

  void split(std::size_t lo, std::size_t hi, std::size_t depth) {
    if (depth == target_depth || hi - lo <= 1) {
      subsets.emplace_back(idx.begin() + static_cast<std::ptrdiff_t>(lo),
                           idx.begin() + static_cast<std::ptrdiff_t>(hi));
      // nth_element leaves ranges in unspecified order; emit leaves in
      // ascending index order so the partition is canonical.
      std::sort(subsets.back().begin(), subsets.back().end());
      depth_used = std::max(depth_used, depth);
      // Pad the rest of this subtree so the leaf count stays exactly 2^target.
      std::size_t pads = (std::size_t(1) << (target_depth - depth)) - 1;
      for (std::size_t k = 0; k < pads; ++k) subsets.emplace_back();
      return;
    }
    std::size_t axis = depth % s.dim();
    std::size_t m = hi - lo;
    std::size_t left = (m + 1) / 2;  // lower median: left child gets ceil(m/2)
    auto cmp = [&](std::uint32_t a, std::uint32_t b) {
      double ca = s[a][axis], cb = s[b][axis];
      if (ca != cb) return ca < cb;
      return a < b;
    };
    std::nth_element(idx.begin() + static_cast<std::ptrdiff_t>(lo),
                     idx.begin() + static_cast<std::ptrdiff_t>(lo + left),
                     idx.begin() + static_cast<std::ptrdiff_t>(hi), cmp);
    split(lo, lo + left, depth + 1);
    split(lo + left, hi, depth + 1);
  }
};

}  // namespace

KdPartition build_partition(const PointSet& s, std::size_t r) {
  if (s.empty()) throw std::invalid_argument("build_partition of empty set");
  if (r == 0) throw std::invalid_argument("build_partition needs r >= 1");
  std::size_t n = s.size();
  std::size_t padded = std::bit_ceil(r);
  std::size_t target_depth = static_cast<std::size_t>(std::bit_width(padded) - 1);

  Builder b{s, std::vector<std::uint32_t>(n), {}, target_depth, 0};
  std::iota(b.idx.begin(), b.idx.end(), 0u);
  b.subsets.reserve(padded);
  b.split(0, n, 0);

  KdPartition part;
  part.subsets = std::move(b.subsets);
  part.requested_r = r;
  part.padded_r = padded;
  part.depth = b.depth_used;
  part.cells.reserve(part.subsets.size());
  for (const auto& sub : part.subsets) {
    if (sub.empty()) {
      part.cells.emplace_back(std::nullopt);
    } else {
      part.cells.emplace_back(min_enclosing_box(s, sub));
    }
  }
  return part;
}

std::size_t partial_intersection_count(const KdPartition& p, const AxisBox& b) {
  std::size_t count = 0;
  for (const auto& cell : p.cells) {
    if (!cell) continue;
    if (box_relation(*cell, b) == BoxRelation::partially_intersects) ++count;
  }
  return count;
}

std::size_t residual_points(const KdPartition& p, const PointSet& s, const AxisBox& b) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < p.subsets.size(); ++i) {
    if (p.subsets[i].empty()) continue;
    BoxRelation rel = box_relation(*p.cells[i], b);
    if (rel == BoxRelation::contained_in || rel == BoxRelation::disjoint) continue;
    for (std::uint32_t pt : p.subsets[i]) {
      if (contains_point(b, s[pt])) ++count;
    }
  }
  return count;
}

}  // namespace emx
