#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "skewkrr/errors.hpp"

namespace skewkrr {

enum class SlicingRule { fixed, scott, sturges, freedman_diaconis };

// Rule plus the slice count used when rule == fixed.
// Text forms: "fixed:L", "scott", "sturges", "fd".
struct SlicingChoice {
  SlicingRule rule = SlicingRule::scott;
  int fixed_l = 3;
};

SlicingChoice parse_slicing(const std::string& text);
std::string to_string(const SlicingChoice& choice);

// Number of response slices under the chosen rule, clamped to [1, n].
// Constant responses under a data-driven rule collapse to a single slice.
int slice_count(const Eigen::Ref<const Eigen::VectorXd>& y, const SlicingChoice& rule);

// l equally spaced response intervals; right-open except the last, closed.
struct SliceSpec {
  std::vector<double> boundaries;    // l+1, strictly ascending
  std::vector<std::int64_t> counts;  // per slice, sums to n
  SlicingChoice rule;

  int l() const { return static_cast<int>(counts.size()); }
  int slice_index(double value) const;
};

SliceSpec make_slices(const Eigen::Ref<const Eigen::VectorXd>& y, const SlicingChoice& rule);

// Total copies each member of a slice receives, given the largest slice
// count: max(1, floor(tau * count_max / count_j)).
std::int64_t copy_count(std::int64_t count_max, std::int64_t count_j, double tau);

// Per-node subsamples as original-sample indices, each node de-duplicated
// and sorted ascending.
struct PartitionPlan {
  std::vector<std::vector<std::int64_t>> node_assignments;
  int k = 0;
  std::uint64_t seed = 0;
  std::int64_t pre_dedup_total = 0;   // multiset size before de-duplication
  std::int64_t post_dedup_total = 0;  // sum of node sizes after

  void validate(std::int64_t n) const;
};

// Seeded random permutation dealt into k contiguous blocks; sizes differ by
// at most one, larger blocks first.
PartitionPlan classical_plan(std::int64_t n, int k, std::uint64_t seed);

// Replicates each slice copy_count times, shuffles the slice multiset, deals
// it round-robin over the k nodes (starting at node j mod k for slice j),
// then de-duplicates within every node.
PartitionPlan oversample_plan(const Eigen::Ref<const Eigen::VectorXd>& y, const SliceSpec& slices,
                              double tau, int k, std::uint64_t seed);

// {"k":..., "seed":..., "nodes":[[idx,...],...],
//  "pre_dedup_total":..., "post_dedup_total":...}
std::string plan_to_json(const PartitionPlan& plan);
PartitionPlan plan_from_json(const std::string& text);

}  // namespace skewkrr
