#include "emx/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace emx {

namespace {

constexpr std::size_t kCoverBruteCutoff = 24;  // linear scan below this size
constexpr std::size_t kSmallSetCutoff = 32;    // batch dispatch goes brute below this

void check_queries(const PointSet& s, const std::vector<Point>& queries) {
  for (const Point& q : queries) {
    if (q.dim() != s.dim())
      throw std::invalid_argument("query dimension does not match point set");
  }
}

bool row_covers(const double* row, std::span<const double> q, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    if (row[i] < q[i]) return false;
  }
  return true;
}

}  // namespace

std::vector<std::uint8_t> brute_batch(const PointSet& s,
                                      const std::vector<Point>& queries) {
  check_queries(s, queries);
  std::vector<std::uint8_t> out(queries.size(), 0);
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    PointRef q = queries[qi].ref();
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (weakly_dominates_excl(s[i], q)) {
        out[qi] = 1;
        break;
      }
    }
  }
  return out;
}

Staircase2D Staircase2D::from_xy(std::vector<std::pair<double, double>> pts) {
  Staircase2D st;
  if (pts.empty()) return st;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  });
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> kept;
  for (const auto& p : pts) {
    if (p.second > best) {
      kept.push_back(p);
      best = p.second;
    }
  }
  st.xs_.reserve(kept.size());
  st.ys_.reserve(kept.size());
  for (auto it = kept.rbegin(); it != kept.rend(); ++it) {
    st.xs_.push_back(it->first);
    st.ys_.push_back(it->second);
  }
  return st;
}

bool Staircase2D::covers(double x, double y) const {
  auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.end()) return false;
  return ys_[static_cast<std::size_t>(it - xs_.begin())] >= y;
}

bool Staircase2D::covers_excl(double x, double y) const {
  auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.end()) return false;
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (ys_[i] < y) return false;
  // The leftmost step at or right of x has the largest y among candidates;
  // if it coincides with (x, y) no other step can weakly dominate it.
  if (xs_[i] == x && ys_[i] == y) return false;
  return true;
}

Staircase2D build_staircase_2d(const PointSet& s) {
  if (s.dim() != 2)
    throw std::invalid_argument("build_staircase_2d needs a 2D point set");
  std::vector<std::pair<double, double>> xy;
  xy.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) xy.emplace_back(s[i][0], s[i][1]);
  return Staircase2D::from_xy(std::move(xy));
}

bool query_staircase(const Staircase2D& st, PointRef q) {
  if (q.size() != 2) throw std::invalid_argument("staircase query must be 2D");
  return st.covers_excl(q[0], q[1]);
}

namespace {

// Dynamic staircase for the 3D sweep: key = x, value = y, keys strictly
// increasing with strictly decreasing values.
class DynamicStaircase {
 public:
  void insert(double x, double y) {
    auto it = map_.lower_bound(x);
    if (it != map_.end() && it->second >= y) return;  // weakly covered already
    if (it != map_.end() && it->first == x) it = map_.erase(it);
    while (it != map_.begin()) {
      auto pv = std::prev(it);
      if (pv->second <= y) {
        map_.erase(pv);
      } else {
        break;
      }
    }
    map_.emplace_hint(it, x, y);
  }

  bool covers_excl(double x, double y) const {
    auto it = map_.lower_bound(x);
    if (it == map_.end()) return false;
    if (it->second < y) return false;
    if (it->first == x && it->second == y) return false;
    return true;
  }

 private:
  std::map<double, double> map_;
};

}  // namespace

std::vector<std::uint8_t> offline_sweep_3d(const PointSet& s,
                                           const std::vector<Point>& queries) {
  if (s.dim() != 3) throw std::invalid_argument("offline_sweep_3d needs d = 3");
  check_queries(s, queries);
  std::vector<std::uint8_t> out(queries.size(), 0);
  if (queries.empty()) return out;

  std::size_t n = s.size();
  std::vector<std::uint32_t> porder(n);
  std::iota(porder.begin(), porder.end(), 0u);
  std::sort(porder.begin(), porder.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (s[a][2] != s[b][2]) return s[a][2] > s[b][2];
    return a < b;
  });
  std::vector<std::uint32_t> qorder(queries.size());
  std::iota(qorder.begin(), qorder.end(), 0u);
  std::sort(qorder.begin(), qorder.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (queries[a].coords[2] != queries[b].coords[2])
      return queries[a].coords[2] > queries[b].coords[2];
    return a < b;
  });

  // Highest third coordinate per exact (x, y) projection, for the case where
  // the swept witness matches the query in the first two coordinates.
  std::map<std::pair<double, double>, double> top_z;
  for (std::size_t i = 0; i < n; ++i) {
    std::pair<double, double> key{s[i][0], s[i][1]};
    auto [it, fresh] = top_z.try_emplace(key, s[i][2]);
    if (!fresh) it->second = std::max(it->second, s[i][2]);
  }

  DynamicStaircase stair;
  std::size_t pi = 0;
  for (std::uint32_t qi : qorder) {
    const auto& q = queries[qi].coords;
    while (pi < n && s[porder[pi]][2] >= q[2]) {
      stair.insert(s[porder[pi]][0], s[porder[pi]][1]);
      ++pi;
    }
    bool hit = stair.covers_excl(q[0], q[1]);
    if (!hit) {
      auto it = top_z.find({q[0], q[1]});
      hit = it != top_z.end() && it->second > q[2];
    }
    out[qi] = hit ? 1 : 0;
  }
  return out;
}

namespace detail {

struct CoverOracle::Node {
  std::size_t lo = 0;
  std::size_t hi = 0;
  CoverOracle oracle;
  std::unique_ptr<Node> left;
  std::unique_ptr<Node> right;
};

CoverOracle::CoverOracle() = default;
CoverOracle::CoverOracle(CoverOracle&&) noexcept = default;
CoverOracle& CoverOracle::operator=(CoverOracle&&) noexcept = default;
CoverOracle::~CoverOracle() = default;

CoverOracle::CoverOracle(std::vector<double> flat, std::size_t dim) : dim_(dim) {
  if (dim < 2) throw std::invalid_argument("CoverOracle needs dimension >= 2");
  count_ = flat.size() / dim;
  if (count_ == 0) {
    mode_ = Mode::empty;
    return;
  }
  if (count_ <= kCoverBruteCutoff) {
    mode_ = Mode::brute;
    brute_ = std::move(flat);
    return;
  }
  if (dim == 2) {
    std::vector<std::pair<double, double>> xy;
    xy.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i)
      xy.emplace_back(flat[i * 2], flat[i * 2 + 1]);
    stairs_ = Staircase2D::from_xy(std::move(xy));
    mode_ = Mode::staircase;
    return;
  }
  mode_ = Mode::tree;
  std::vector<std::uint32_t> order(count_);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return flat[a * dim + dim - 1] < flat[b * dim + dim - 1];
  });
  std::vector<double> sorted_flat(flat.size());
  last_sorted_.resize(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    std::copy_n(flat.begin() + order[i] * dim, dim, sorted_flat.begin() + i * dim);
    last_sorted_[i] = sorted_flat[i * dim + dim - 1];
  }
  root_ = build_node(sorted_flat, 0, count_);
}

std::unique_ptr<CoverOracle::Node> CoverOracle::build_node(
    const std::vector<double>& sorted_flat, std::size_t lo, std::size_t hi) {
  auto node = std::make_unique<Node>();
  node->lo = lo;
  node->hi = hi;
  std::size_t sub_dim = dim_ - 1;
  std::vector<double> proj;
  proj.reserve((hi - lo) * sub_dim);
  for (std::size_t i = lo; i < hi; ++i) {
    const double* row = sorted_flat.data() + i * dim_;
    proj.insert(proj.end(), row, row + sub_dim);
  }
  node->oracle = CoverOracle(std::move(proj), sub_dim);
  if (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    node->left = build_node(sorted_flat, lo, mid);
    node->right = build_node(sorted_flat, mid, hi);
  }
  return node;
}

bool CoverOracle::covers(std::span<const double> q) const {
  switch (mode_) {
    case Mode::empty:
      return false;
    case Mode::brute:
      for (std::size_t i = 0; i < count_; ++i) {
        if (row_covers(brute_.data() + i * dim_, q, dim_)) return true;
      }
      return false;
    case Mode::staircase:
      return stairs_.covers(q[0], q[1]);
    case Mode::tree: {
      auto it = std::lower_bound(last_sorted_.begin(), last_sorted_.end(),
                                 q[dim_ - 1]);
      std::size_t k = static_cast<std::size_t>(it - last_sorted_.begin());
      if (k == count_) return false;
      return node_covers(*root_, k, q);
    }
  }
  return false;
}

bool CoverOracle::node_covers(const Node& node, std::size_t k,
                              std::span<const double> q) const {
  if (node.lo >= k) return node.oracle.covers(q);
  if (node.hi <= k) return false;
  return node_covers(*node.left, k, q) || node_covers(*node.right, k, q);
}

}  // namespace detail

GroupedOracle::GroupedOracle(const PointSet& s, std::size_t r) : dim_(s.dim()) {
  std::size_t n = s.size();
  if (n == 0) throw std::invalid_argument("GroupedOracle needs a nonempty set");
  r_ = std::clamp<std::size_t>(r, 1, n);
  groups_.reserve((n + r_ - 1) / r_);
  for (std::size_t start = 0; start < n; start += r_) {
    std::size_t end = std::min(start + r_, n);
    std::size_t m = end - start;
    std::vector<double> rows(s.flat().begin() + start * dim_,
                             s.flat().begin() + end * dim_);
    Group g;
    g.cover = detail::CoverOracle(rows, dim_);

    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return compare_rows(PointRef(rows.data() + a * dim_, dim_),
                          PointRef(rows.data() + b * dim_, dim_)) < 0;
    });
    g.sorted_rows.resize(rows.size());
    for (std::size_t i = 0; i < m; ++i) {
      std::copy_n(rows.begin() + order[i] * dim_, dim_,
                  g.sorted_rows.begin() + i * dim_);
    }
    groups_.push_back(std::move(g));
  }
}

bool GroupedOracle::group_reports(const Group& g, PointRef q) const {
  if (!g.cover.covers(q)) return false;
  // Exact membership via binary search: the witness may be q itself.
  std::size_t m = g.sorted_rows.size() / dim_;
  std::size_t lo = 0, hi = m;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    PointRef row(g.sorted_rows.data() + mid * dim_, dim_);
    if (compare_rows(row, q) < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  bool present = lo < m && equal_rows(PointRef(g.sorted_rows.data() + lo * dim_, dim_), q);
  if (!present) return true;
  // q is stored here, so ask for a witness that is strictly larger in some
  // coordinate: bump that coordinate to the next representable double.
  std::vector<double> bumped(q.begin(), q.end());
  for (std::size_t i = 0; i < dim_; ++i) {
    double orig = bumped[i];
    bumped[i] = std::nextafter(orig, std::numeric_limits<double>::infinity());
    bool hit = g.cover.covers(bumped);
    bumped[i] = orig;
    if (hit) return true;
  }
  return false;
}

bool GroupedOracle::query(PointRef q) const {
  if (q.size() != dim_)
    throw std::invalid_argument("query dimension does not match point set");
  bool any = false;
  // Every group is consulted; per-query work is group_count() consultations.
  for (const Group& g : groups_) any |= group_reports(g, q);
  return any;
}

GroupedOracle build_grouped(const PointSet& s, std::size_t r) {
  return GroupedOracle(s, r);
}

bool grouped_query(const GroupedOracle& g, PointRef q) { return g.query(q); }

std::vector<std::uint8_t> batch_dominated(const PointSet& s,
                                          const std::vector<Point>& queries,
                                          std::size_t budget_r, Exec ex,
                                          BatchCounters* counters) {
  check_queries(s, queries);
  if (budget_r == 0) throw std::invalid_argument("batch_dominated needs budget_r >= 1");
  std::vector<std::uint8_t> out(queries.size(), 0);
  if (queries.empty()) return out;
  if (counters) counters->queries += queries.size();

  std::size_t n = s.size();
  std::size_t d = s.dim();
  if (n < kSmallSetCutoff) {
    parallel_for(queries.size(), ex, [&](std::size_t qi) {
      PointRef q = queries[qi].ref();
      for (std::size_t i = 0; i < n; ++i) {
        if (weakly_dominates_excl(s[i], q)) {
          out[qi] = 1;
          return;
        }
      }
    });
    if (counters) counters->groups_touched += queries.size();
    return out;
  }
  if (d == 2) {
    Staircase2D st = build_staircase_2d(s);
    parallel_for(queries.size(), ex, [&](std::size_t qi) {
      const auto& q = queries[qi].coords;
      out[qi] = st.covers_excl(q[0], q[1]) ? 1 : 0;
    });
    if (counters) counters->groups_touched += queries.size();
    return out;
  }
  if (d == 3) {
    out = offline_sweep_3d(s, queries);
    if (counters) counters->groups_touched += queries.size();
    return out;
  }
  GroupedOracle oracle(s, budget_r);
  parallel_for(queries.size(), ex, [&](std::size_t qi) {
    out[qi] = oracle.query(queries[qi].ref()) ? 1 : 0;
  });
  if (counters) {
    counters->groups_touched +=
        static_cast<std::uint64_t>(queries.size()) * oracle.group_count();
  }
  return out;
}

}  // namespace emx
