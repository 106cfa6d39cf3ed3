#include "emx/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace emx {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_same_dim(PointRef p, PointRef q) {
  require(p.size() == q.size(), "dimension mismatch");
}

}  // namespace

PointSet::PointSet(std::size_t dim, std::vector<double> flat) : dim_(dim) {
  require(dim >= 2, "PointSet needs dimension >= 2");
  require(flat.size() % dim == 0, "flat coordinate array does not divide by dim");
  for (double v : flat) require(std::isfinite(v), "coordinates must be finite");
  flat_ = std::move(flat);
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  require(!rows.empty(), "from_rows needs at least one row");
  std::size_t d = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (const auto& r : rows) {
    require(r.size() == d, "rows of unequal dimension");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return PointSet(d, std::move(flat));
}

Point PointSet::point(std::size_t i) const {
  PointRef r = (*this)[i];
  return Point(std::vector<double>(r.begin(), r.end()),
               static_cast<std::int64_t>(i));
}

PointSet PointSet::subset(std::span<const std::uint32_t> indices) const {
  std::vector<double> flat;
  flat.reserve(indices.size() * dim_);
  for (std::uint32_t i : indices) {
    PointRef r = (*this)[i];
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return PointSet(dim_, std::move(flat));
}

AxisBox::AxisBox(std::vector<double> lo_corner, std::vector<double> hi_corner)
    : lo(std::move(lo_corner)), hi(std::move(hi_corner)) {
  require(lo.size() == hi.size(), "box corners of unequal dimension");
  require(!lo.empty(), "box needs at least one axis");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    require(std::isfinite(lo[i]) && std::isfinite(hi[i]),
            "box corners must be finite");
    require(lo[i] <= hi[i], "box has lo > hi on some axis");
  }
}

bool dominates(PointRef p, PointRef q) {
  check_same_dim(p, q);
  bool strict = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < q[i]) return false;
    if (p[i] > q[i]) strict = true;
  }
  return strict;
}

bool weakly_dominates_excl(PointRef p, PointRef q) {
  check_same_dim(p, q);
  bool differs = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < q[i]) return false;
    if (p[i] != q[i]) differs = true;
  }
  return differs;
}

AxisBox min_enclosing_box(const PointSet& s) {
  require(!s.empty(), "min_enclosing_box of empty set");
  std::vector<double> lo(s[0].begin(), s[0].end());
  std::vector<double> hi = lo;
  for (std::size_t i = 1; i < s.size(); ++i) {
    PointRef p = s[i];
    for (std::size_t a = 0; a < s.dim(); ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  return AxisBox(std::move(lo), std::move(hi));
}

AxisBox min_enclosing_box(const PointSet& s, std::span<const std::uint32_t> subset) {
  require(!subset.empty(), "min_enclosing_box of empty subset");
  PointRef first = s[subset[0]];
  std::vector<double> lo(first.begin(), first.end());
  std::vector<double> hi = lo;
  for (std::size_t k = 1; k < subset.size(); ++k) {
    PointRef p = s[subset[k]];
    for (std::size_t a = 0; a < s.dim(); ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  return AxisBox(std::move(lo), std::move(hi));
}

Point max_corner(const AxisBox& b) { return Point(b.hi); }

BoxRelation box_relation(const AxisBox& cell, const AxisBox& b) {
  require(cell.dim() == b.dim(), "box dimension mismatch");
  bool contained = true;
  for (std::size_t i = 0; i < cell.dim(); ++i) {
    if (cell.hi[i] < b.lo[i] || cell.lo[i] > b.hi[i]) return BoxRelation::disjoint;
    if (cell.lo[i] < b.lo[i] || cell.hi[i] > b.hi[i]) contained = false;
  }
  return contained ? BoxRelation::contained_in : BoxRelation::partially_intersects;
}

bool contains_point(const AxisBox& b, PointRef p) {
  require(b.dim() == p.size(), "dimension mismatch");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < b.lo[i] || p[i] > b.hi[i]) return false;
  }
  return true;
}

int compare_rows(PointRef a, PointRef b) {
  check_same_dim(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

bool equal_rows(PointRef a, PointRef b) { return compare_rows(a, b) == 0; }

std::pair<PointSet, std::size_t> dedupe(const PointSet& s) {
  std::size_t n = s.size();
  if (n == 0) return {s, 0};
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    int c = compare_rows(s[a], s[b]);
    if (c != 0) return c < 0;
    return a < b;
  });
  std::vector<std::uint32_t> keep;
  keep.reserve(n);
  keep.push_back(order[0]);
  for (std::size_t i = 1; i < n; ++i) {
    if (!equal_rows(s[order[i]], s[order[i - 1]])) keep.push_back(order[i]);
  }
  std::sort(keep.begin(), keep.end());
  std::size_t removed = n - keep.size();
  return {s.subset(keep), removed};
}

}  // namespace emx
