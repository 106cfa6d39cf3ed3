#include "emx/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace emx {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// 53-bit uniform draw in [0, 1); identical across platforms for a given
// engine state, unlike std::uniform_real_distribution.
double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double open_unit(std::mt19937_64& rng) {
  double u = unit_double(rng);
  while (u == 0.0) u = unit_double(rng);
  return u;
}

std::vector<double> staircase_row(std::size_t k, std::size_t h, std::size_t d) {
  std::vector<double> row(d, static_cast<double>(h));
  row[0] = static_cast<double>(k);
  row[1] = static_cast<double>(h + 1 - k);
  return row;
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::balanced:
      return "balanced";
    case Family::cascade:
      return "cascade";
    case Family::uniform:
      return "uniform";
  }
  return "unknown";
}

PointSet naive_maxima(const PointSet& s, Exec ex) {
  require(!s.empty(), "naive_maxima of empty set");
  std::size_t n = s.size();
  std::vector<std::uint8_t> dominated(n, 0);
  parallel_for(n, ex, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && dominates(s[j], s[i])) {
        dominated[i] = 1;
        return;
      }
    }
  });
  std::vector<std::uint32_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (!dominated[i]) keep.push_back(static_cast<std::uint32_t>(i));
  }
  return s.subset(keep);
}

PointSet sweep_maxima_2d(const PointSet& s) {
  require(s.dim() == 2, "sweep_maxima_2d needs a 2D point set");
  require(!s.empty(), "sweep_maxima_2d of empty set");
  std::size_t n = s.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (s[a][0] != s[b][0]) return s[a][0] > s[b][0];
    if (s[a][1] != s[b][1]) return s[a][1] > s[b][1];
    return a < b;
  });
  std::vector<std::uint8_t> maximal(n, 0);
  double best = -std::numeric_limits<double>::infinity();
  double kept_x = 0, kept_y = 0;
  bool have_kept = false;
  for (std::uint32_t i : order) {
    double x = s[i][0], y = s[i][1];
    bool dup_of_kept = have_kept && x == kept_x && y == kept_y;
    if (y > best || dup_of_kept) {
      maximal[i] = 1;
      best = std::max(best, y);
      kept_x = x;
      kept_y = y;
      have_kept = true;
    }
  }
  std::vector<std::uint32_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (maximal[i]) keep.push_back(static_cast<std::uint32_t>(i));
  }
  return s.subset(keep);
}

GeneratedInstance gen_cascade(std::size_t n, std::size_t h, std::size_t d,
                              std::uint64_t seed) {
  require(d >= 2, "gen_cascade needs d >= 2");
  require(h >= 1 && h <= n, "gen_cascade needs 1 <= h <= n");
  std::vector<double> flat;
  flat.reserve(n * d);
  for (std::size_t k = 1; k <= h; ++k) {
    auto row = staircase_row(k, h, d);
    flat.insert(flat.end(), row.begin(), row.end());
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = h; i < n; ++i) {
    for (std::size_t a = 0; a < d; ++a) flat.push_back(open_unit(rng));
  }

  GeneratedInstance out;
  out.points = PointSet(d, std::move(flat));
  out.family = Family::cascade;
  out.seed = seed;
  out.known_maxima_size = h;

  RespectfulPartitionSpec spec;
  spec.n = n;
  std::vector<std::vector<std::uint32_t>> subsets;
  if (n > h) {
    spec.subset_sizes.push_back(n - h);
    spec.boxes.emplace_back(std::vector<double>(d, 0.0), std::vector<double>(d, 1.0));
    std::vector<std::uint32_t> cluster(n - h);
    std::iota(cluster.begin(), cluster.end(), static_cast<std::uint32_t>(h));
    subsets.push_back(std::move(cluster));
  }
  for (std::size_t k = 1; k <= h; ++k) {
    spec.subset_sizes.push_back(1);
    auto row = staircase_row(k, h, d);
    spec.boxes.emplace_back(row, row);
    subsets.push_back({static_cast<std::uint32_t>(k - 1)});
  }
  out.known_partition = std::move(spec);
  out.partition_subsets = std::move(subsets);
  return out;
}

GeneratedInstance gen_balanced(std::size_t n, std::size_t h, std::size_t d,
                               std::uint64_t seed) {
  require(d >= 2, "gen_balanced needs d >= 2");
  require(h >= 1 && h <= n, "gen_balanced needs 1 <= h <= n");
  require(n % h == 0, "gen_balanced needs h to divide n");
  std::size_t block = n / h;
  std::mt19937_64 rng(seed);
  std::vector<double> flat;
  flat.reserve(n * d);

  RespectfulPartitionSpec spec;
  spec.n = n;
  std::vector<std::vector<std::uint32_t>> subsets;
  for (std::size_t k = 1; k <= h; ++k) {
    auto corner = staircase_row(k, h, d);
    flat.insert(flat.end(), corner.begin(), corner.end());
    for (std::size_t c = 1; c < block; ++c) {
      for (std::size_t a = 0; a < d; ++a) {
        double hi = corner[a];
        double v = hi - open_unit(rng);
        // Keep the draw strictly inside (hi - 1, hi) even when rounding
        // lands on an endpoint.
        if (v >= hi) v = std::nextafter(hi, -std::numeric_limits<double>::infinity());
        if (v <= hi - 1.0)
          v = std::nextafter(hi - 1.0, std::numeric_limits<double>::infinity());
        flat.push_back(v);
      }
    }
    spec.subset_sizes.push_back(block);
    std::vector<double> lo(corner);
    for (double& v : lo) v -= 1.0;
    spec.boxes.emplace_back(std::move(lo), corner);
    std::vector<std::uint32_t> ids(block);
    std::iota(ids.begin(), ids.end(), static_cast<std::uint32_t>((k - 1) * block));
    subsets.push_back(std::move(ids));
  }

  GeneratedInstance out;
  out.points = PointSet(d, std::move(flat));
  out.family = Family::balanced;
  out.seed = seed;
  out.known_maxima_size = h;
  out.known_partition = std::move(spec);
  out.partition_subsets = std::move(subsets);
  return out;
}

GeneratedInstance gen_uniform(std::size_t n, std::size_t d, std::uint64_t seed) {
  require(d >= 2, "gen_uniform needs d >= 2");
  require(n >= 1, "gen_uniform needs n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<double> flat;
  flat.reserve(n * d);
  for (std::size_t i = 0; i < n * d; ++i) flat.push_back(unit_double(rng));

  GeneratedInstance out;
  out.points = PointSet(d, std::move(flat));
  out.family = Family::uniform;
  out.seed = seed;
  out.known_maxima_size = naive_maxima(out.points).size();
  return out;
}

double partition_entropy(const RespectfulPartitionSpec& spec) {
  require(!spec.subset_sizes.empty(), "partition_entropy of empty partition");
  std::size_t total = 0;
  for (std::size_t nk : spec.subset_sizes) {
    require(nk >= 1, "partition blocks must be nonempty");
    total += nk;
  }
  require(total == spec.n, "partition sizes must sum to n");
  double n = static_cast<double>(spec.n);
  double sum = 0.0;
  for (std::size_t nk : spec.subset_sizes) {
    double w = static_cast<double>(nk) / n;
    sum += w * std::log2(n / static_cast<double>(nk));
  }
  return sum;
}

bool respectful_verify(const PointSet& s, const std::vector<AxisBox>& boxes,
                       const std::vector<std::vector<std::uint32_t>>& subsets) {
  require(boxes.size() == subsets.size(), "one box per subset required");
  std::size_t n = s.size();
  std::vector<std::uint8_t> seen(n, 0);
  std::size_t covered = 0;
  for (const auto& subset : subsets) {
    require(!subset.empty(), "partition blocks must be nonempty");
    for (std::uint32_t i : subset) {
      require(i < n, "subset index out of range");
      require(!seen[i], "subsets overlap");
      seen[i] = 1;
      ++covered;
    }
  }
  require(covered == n, "subsets do not cover the set");
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    require(boxes[k].dim() == s.dim(), "box dimension mismatch");
    for (std::uint32_t i : subsets[k]) {
      require(contains_point(boxes[k], s[i]), "box does not enclose its subset");
    }
  }
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    if (subsets[k].size() == 1) continue;
    PointRef corner(boxes[k].hi);
    bool witnessed = false;
    for (std::size_t i = 0; i < n; ++i) {
      PointRef p = s[i];
      bool at_or_above = true;
      for (std::size_t a = 0; a < p.size(); ++a) {
        if (p[a] < corner[a]) {
          at_or_above = false;
          break;
        }
      }
      if (at_or_above) {
        witnessed = true;
        break;
      }
    }
    if (!witnessed) return false;
  }
  return true;
}

double theoretical_cost(const RespectfulPartitionSpec& spec, std::size_t d) {
  require(d >= 2, "theoretical_cost needs d >= 2");
  partition_entropy(spec);  // validates sizes against n
  double n = static_cast<double>(spec.n);
  double sum = 0.0;
  double expo = static_cast<double>(d) - 2.0;
  for (std::size_t nk : spec.subset_sizes) {
    double ratio = n / static_cast<double>(nk);
    sum += static_cast<double>(nk) * std::pow(std::log2(ratio), expo);
  }
  return n + sum;
}

bool gibbs_bound_check(const std::vector<std::size_t>& sizes, std::size_t n,
                       std::size_t d) {
  require(d >= 2, "gibbs_bound_check needs d >= 2");
  require(!sizes.empty(), "gibbs_bound_check of empty partition");
  std::size_t total = 0;
  double floor_ratio = std::ldexp(1.0, static_cast<int>(d) - 1);  // 2^(d-1)
  for (std::size_t nk : sizes) {
    require(nk >= 1, "partition blocks must be nonempty");
    total += nk;
  }
  require(total == n, "partition sizes must sum to n");
  double nn = static_cast<double>(n);
  for (std::size_t nk : sizes) {
    require(nn / static_cast<double>(nk) >= floor_ratio,
            "gibbs_bound_check requires n/n_k >= 2^(d-1)");
  }
  double expo = static_cast<double>(d) - 2.0;
  double lhs = 0.0;
  for (std::size_t nk : sizes) {
    lhs += static_cast<double>(nk) * std::pow(std::log2(nn / static_cast<double>(nk)), expo);
  }
  double h = static_cast<double>(sizes.size());
  double rhs = nn * std::pow(std::log2(h), expo);
  return lhs <= rhs + 1e-9 * (std::abs(rhs) + 1.0);
}

}  // namespace emx
