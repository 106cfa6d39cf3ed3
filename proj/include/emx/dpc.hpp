#pragma once

#include <cstdint>
#include <vector>

#include "emx/core.hpp"
#include "emx/exec.hpp"

namespace emx {

// Counters for one divide-prune round.
struct IterationRecord {
  std::size_t j = 0;               // 1-based round number
  std::size_t r_j = 0;             // subset budget used this round
  std::size_t sigma_before = 0;    // points entering the round
  std::size_t sigma_after = 0;     // surviving points
  std::uint64_t queries_issued = 0;  // one corner query per nonempty subset
  std::uint64_t subsets_pruned = 0;
  std::uint64_t groups_touched = 0;  // oracle group consultations
};

struct TraceMetrics {
  std::vector<IterationRecord> iterations;
  std::uint64_t total_queries = 0;
  std::size_t duplicates_removed = 0;
  std::size_t output_size = 0;
};

struct PruneResult {
  PointSet survivors;  // original relative order preserved
  std::vector<std::vector<std::uint32_t>> kept_subsets;  // indices into the round input
  IterationRecord record;
};

struct MaximaResult {
  PointSet maxima;
  TraceMetrics trace;
};

// Subset budget for round j (j >= 1): min(2^(2^j), next power of two >= n).
std::size_t rj_schedule(std::size_t j, std::size_t n);

// One divide-prune round: partition s into r subsets, take the upper corner
// of each nonempty cell, and drop every subset whose corner is weakly
// dominated by a point of s other than the corner itself. The dominance
// oracle is a snapshot of s taken before any removal, so query order cannot
// change the outcome.
PruneResult prune_iteration(const PointSet& s, std::size_t r,
                            Exec ex = Exec::parallel);

// Pareto maxima by iterated divide-prune rounds with doubly-exponentially
// growing subset budgets. Input duplicates are removed up front; the rounds
// stop once every kept subset is a singleton.
MaximaResult compute_maxima(const PointSet& s, Exec ex = Exec::parallel);

}  // namespace emx
