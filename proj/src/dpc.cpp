#include "emx/dpc.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "emx/kdpart.hpp"
#include "emx/oracle.hpp"

namespace emx {

std::size_t rj_schedule(std::size_t j, std::size_t n) {
  if (j == 0) throw std::invalid_argument("rj_schedule rounds start at j = 1");
  if (n == 0) throw std::invalid_argument("rj_schedule needs n >= 1");
  std::size_t cap = std::bit_ceil(n);
  if (j >= 6) return cap;  // 2^(2^6) overflows 64 bits and exceeds any cap
  std::size_t exponent = std::size_t(1) << j;
  if (exponent >= 64) return cap;
  std::size_t value = std::size_t(1) << exponent;
  return std::min(value, cap);
}

PruneResult prune_iteration(const PointSet& s, std::size_t r, Exec ex) {
  if (s.empty()) throw std::invalid_argument("prune_iteration of empty set");
  KdPartition part = build_partition(s, r);

  std::vector<std::size_t> nonempty;
  nonempty.reserve(part.subsets.size());
  for (std::size_t i = 0; i < part.subsets.size(); ++i) {
    if (!part.subsets[i].empty()) nonempty.push_back(i);
  }

  std::vector<Point> corners(nonempty.size());
  parallel_for(nonempty.size(), ex, [&](std::size_t k) {
    corners[k] = max_corner(*part.cells[nonempty[k]]);
  });

  BatchCounters counters;
  std::vector<std::uint8_t> pruned = batch_dominated(s, corners, r, ex, &counters);

  PruneResult res;
  res.record.r_j = r;
  res.record.sigma_before = s.size();
  res.record.queries_issued = counters.queries;
  res.record.groups_touched = counters.groups_touched;

  std::vector<std::uint32_t> survivors;
  survivors.reserve(s.size());
  for (std::size_t k = 0; k < nonempty.size(); ++k) {
    auto& subset = part.subsets[nonempty[k]];
    if (pruned[k]) {
      res.record.subsets_pruned += 1;
      continue;
    }
    survivors.insert(survivors.end(), subset.begin(), subset.end());
    res.kept_subsets.push_back(std::move(subset));
  }
  std::sort(survivors.begin(), survivors.end());
  res.survivors = s.subset(survivors);
  res.record.sigma_after = res.survivors.size();
  return res;
}

MaximaResult compute_maxima(const PointSet& s, Exec ex) {
  if (s.empty()) throw std::invalid_argument("compute_maxima of empty set");
  MaximaResult result;
  auto [clean, removed] = dedupe(s);
  result.trace.duplicates_removed = removed;

  std::size_t n0 = clean.size();
  PointSet current = std::move(clean);
  bool has_multi = current.size() > 1;
  std::size_t j = 0;
  while (has_multi) {
    ++j;
    if (j > 64) throw std::logic_error("prune rounds failed to terminate");
    std::size_t r = rj_schedule(j, n0);
    PruneResult round = prune_iteration(current, r, ex);
    round.record.j = j;
    result.trace.total_queries += round.record.queries_issued;
    result.trace.iterations.push_back(round.record);
    current = std::move(round.survivors);
    has_multi = false;
    for (const auto& kept : round.kept_subsets) {
      if (kept.size() > 1) {
        has_multi = true;
        break;
      }
    }
  }
  result.trace.output_size = current.size();
  result.maxima = std::move(current);
  return result;
}

}  // namespace emx
