#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emx/core.hpp"
#include "emx/exec.hpp"

namespace emx {

// Ground-truth maxima by pairwise comparison, O(n^2). Keeps input order.
// Equal duplicate points do not dominate each other, so both survive.
PointSet naive_maxima(const PointSet& s, Exec ex = Exec::parallel);

// 2D maxima by descending-x sweep with a running best y. Keeps input order
// and agrees with naive_maxima, duplicates included.
PointSet sweep_maxima_2d(const PointSet& s);

// Sizes (and optionally boxes) of a partition whose every non-singleton
// block is enclosed by a box lying below the maxima.
struct RespectfulPartitionSpec {
  std::size_t n = 0;
  std::vector<std::size_t> subset_sizes;
  std::vector<AxisBox> boxes;  // empty when only the sizes are known
};

enum class Family { balanced, cascade, uniform };

const char* family_name(Family f);

struct GeneratedInstance {
  PointSet points;
  Family family = Family::uniform;
  std::uint64_t seed = 0;
  std::size_t known_maxima_size = 0;
  std::optional<RespectfulPartitionSpec> known_partition;
  // Index lists matching known_partition's blocks, for verification.
  std::vector<std::vector<std::uint32_t>> partition_subsets;
};

// h staircase points (k, h+1-k, h, ..., h) plus n-h points drawn uniformly
// from the open unit box, all dominated by every staircase point. The known
// partition is the cluster block (enclosed by the closed unit box) plus one
// singleton per staircase point.
GeneratedInstance gen_cascade(std::size_t n, std::size_t h, std::size_t d,
                              std::uint64_t seed);

// h staircase corners p_k = (k, h+1-k, h, ..., h), each accompanied by
// n/h - 1 points drawn from the open box (p_k - 1, p_k). Requires h | n.
// The known partition is one block of n/h points per corner, enclosed by
// the closed box [p_k - 1, p_k].
GeneratedInstance gen_balanced(std::size_t n, std::size_t h, std::size_t d,
                               std::uint64_t seed);

// n points uniform in the unit box; the maxima count is measured, not known
// in advance, and no partition is recorded.
GeneratedInstance gen_uniform(std::size_t n, std::size_t d, std::uint64_t seed);

// Shannon-style partition entropy: sum over blocks of (n_k/n) log2(n/n_k).
double partition_entropy(const RespectfulPartitionSpec& spec);

// True iff every subset is a singleton or some point of s lies at or above
// the max corner of its box (componentwise, equality allowed). Throws when
// the subsets do not partition s or a box fails to enclose its subset.
bool respectful_verify(const PointSet& s, const std::vector<AxisBox>& boxes,
                       const std::vector<std::vector<std::uint32_t>>& subsets);

// Cost functional n + sum over blocks of n_k * (log2(n/n_k))^(d-2), with
// 0^0 = 1 so the d = 2 case degenerates to 2n.
double theoretical_cost(const RespectfulPartitionSpec& spec, std::size_t d);

// Checks sum n_k (log2(n/n_k))^(d-2) <= n (log2 h)^(d-2) up to a relative
// tolerance of 1e-9. Requires n/n_k >= 2^(d-1) for every block (the bound's
// concavity domain); violations throw rather than returning false.
bool gibbs_bound_check(const std::vector<std::size_t>& sizes, std::size_t n,
                       std::size_t d);

}  // namespace emx
