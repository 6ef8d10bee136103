#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "skewkrr/errors.hpp"
#include "skewkrr/partition.hpp"
#include "skewkrr/rng.hpp"

using namespace skewkrr;

namespace {

Eigen::VectorXd evenly_spaced(Eigen::Index n, double lo, double hi) {
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i)
    y(i) = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return y;
}

// Two well-separated response groups so a fixed(2) slicing lands exactly
// (low_count, high_count).
Eigen::VectorXd two_groups(Eigen::Index low_count, Eigen::Index high_count) {
  Eigen::VectorXd y(low_count + high_count);
  for (Eigen::Index i = 0; i < low_count; ++i) y(i) = 0.25;
  for (Eigen::Index i = 0; i < high_count; ++i) y(low_count + i) = 1.75;
  return y;
}

std::vector<std::int64_t> sorted_union(const PartitionPlan& plan) {
  std::vector<std::int64_t> all;
  for (const auto& node : plan.node_assignments) all.insert(all.end(), node.begin(), node.end());
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

TEST_SUITE("partition") {
  TEST_CASE("slice_count hand values") {
    CHECK(slice_count(evenly_spaced(100, 0, 1), SlicingChoice{SlicingRule::fixed, 3}) == 3);
    CHECK(slice_count(evenly_spaced(1024, 0, 1), SlicingChoice{SlicingRule::sturges, 3}) == 11);
    // Scott on 1000 evenly spaced points in [0,1]: width ~ 3.49*0.28897*1000^(-1/3)
    CHECK(slice_count(evenly_spaced(1000, 0, 1), SlicingChoice{SlicingRule::scott, 3}) == 10);
  }

  TEST_CASE("constant response collapses data-driven rules to one slice") {
    const Eigen::VectorXd y = Eigen::VectorXd::Constant(50, 2.5);
    CHECK(slice_count(y, SlicingChoice{SlicingRule::scott, 3}) == 1);
    CHECK(slice_count(y, SlicingChoice{SlicingRule::sturges, 3}) == 1);
    CHECK(slice_count(y, SlicingChoice{SlicingRule::freedman_diaconis, 3}) == 1);
    const SliceSpec slices = make_slices(y, SlicingChoice{SlicingRule::scott, 3});
    REQUIRE(slices.counts.size() == 1);
    CHECK(slices.counts[0] == 50);
  }

  TEST_CASE("slice_count is clamped to the sample size") {
    // two far-apart points: any width-based rule would want many bins
    Eigen::VectorXd y(2);
    y << 0.0, 1e6;
    const int l = slice_count(y, SlicingChoice{SlicingRule::freedman_diaconis, 3});
    CHECK(l >= 1);
    CHECK(l <= 2);
  }

  TEST_CASE("freedman-diaconis falls back to scott when the IQR is zero") {
    Eigen::VectorXd y(40);
    for (Eigen::Index i = 0; i < 36; ++i) y(i) = 1.0;  // IQR = 0
    for (Eigen::Index i = 36; i < 40; ++i) y(i) = static_cast<double>(i);
    CHECK(slice_count(y, SlicingChoice{SlicingRule::freedman_diaconis, 3}) ==
          slice_count(y, SlicingChoice{SlicingRule::scott, 3}));
  }

  TEST_CASE("make_slices hand binning") {
    Eigen::VectorXd y(4);
    y << 0, 1, 2, 3;
    const SliceSpec slices = make_slices(y, SlicingChoice{SlicingRule::fixed, 2});
    REQUIRE(slices.boundaries.size() == 3);
    CHECK(slices.boundaries[0] == doctest::Approx(0.0));
    CHECK(slices.boundaries[1] == doctest::Approx(1.5));
    CHECK(slices.boundaries[2] == doctest::Approx(3.0));
    REQUIRE(slices.counts.size() == 2);
    CHECK(slices.counts[0] == 2);
    CHECK(slices.counts[1] == 2);
  }

  TEST_CASE("slice counts always partition the sample") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd y(200);
      for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = rng.normal();
      const SliceSpec slices = make_slices(y, SlicingChoice{SlicingRule::scott, 3});
      std::int64_t total = 0;
      for (const auto count : slices.counts) total += count;
      CHECK(total == y.size());
    }
  }

  TEST_CASE("copy_count hand values") {
    CHECK(copy_count(100, 30, 1.0) == 3);
    CHECK(copy_count(100, 30, 0.5) == 1);
    CHECK(copy_count(64, 64, 0.3) == 1);
    CHECK(copy_count(64, 64, 1.0) == 1);
    CHECK_THROWS_AS(copy_count(100, 0, 1.0), InputError);
  }

  TEST_CASE("full-strength oversampling nearly levels every slice") {
    // c_j * floor(c_max/c_j) always lands in [c_max - c_j + 1, c_max]
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
      const auto c_max = static_cast<std::int64_t>(1 + rng.below(1000));
      const auto c_j = static_cast<std::int64_t>(1 + rng.below(static_cast<std::uint64_t>(c_max)));
      const std::int64_t leveled = c_j * copy_count(c_max, c_j, 1.0);
      CHECK(leveled >= c_max - c_j + 1);
      CHECK(leveled <= c_max);
    }
  }

  TEST_CASE("single-slice oversample plan is a plain partition") {
    Rng rng(43);
    Eigen::VectorXd y(97);
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = rng.normal();
    const SliceSpec one = make_slices(y, SlicingChoice{SlicingRule::fixed, 1});
    const PartitionPlan plan = oversample_plan(y, one, 0.7, 4, 99);
    CHECK(plan.pre_dedup_total == 97);
    CHECK(plan.post_dedup_total == 97);
    std::size_t smallest = 97, largest = 0;
    for (const auto& node : plan.node_assignments) {
      smallest = std::min(smallest, node.size());
      largest = std::max(largest, node.size());
    }
    CHECK(largest - smallest <= 1);
    const auto all = sorted_union(plan);
    for (std::int64_t i = 0; i < 97; ++i) CHECK(all[static_cast<std::size_t>(i)] == i);
  }

  TEST_CASE("one node absorbs every copy through de-duplication") {
    const Eigen::VectorXd y = two_groups(100, 30);
    const SliceSpec slices = make_slices(y, SlicingChoice{SlicingRule::fixed, 2});
    REQUIRE(slices.counts == std::vector<std::int64_t>{100, 30});
    const PartitionPlan plan = oversample_plan(y, slices, 1.0, 1, 5);
    REQUIRE(plan.k == 1);
    CHECK(plan.pre_dedup_total == 100 + 3 * 30);
    CHECK(plan.post_dedup_total == 130);
    CHECK(plan.node_assignments[0].size() == 130);
  }

  TEST_CASE("three-node deal balances the majority slice and bounds the minority") {
    const Eigen::VectorXd y = two_groups(90, 30);
    const SliceSpec slices = make_slices(y, SlicingChoice{SlicingRule::fixed, 2});
    const PartitionPlan plan = oversample_plan(y, slices, 1.0, 3, 12);
    CHECK(plan.pre_dedup_total == 90 + 3 * 30);
    for (const auto& node : plan.node_assignments) {
      std::int64_t majority = 0, minority = 0;
      for (const auto index : node) (index < 90 ? majority : minority) += 1;
      CHECK(majority == 30);        // 90 singles dealt evenly over 3 nodes
      CHECK(minority >= 10);        // 30 distinct indices, 3 copies each
      CHECK(minority <= 30);
    }
  }

  TEST_CASE("classical plan sizes follow the remainder rule") {
    const PartitionPlan plan = classical_plan(10, 3, 7);
    REQUIRE(plan.node_assignments.size() == 3);
    CHECK(plan.node_assignments[0].size() == 4);
    CHECK(plan.node_assignments[1].size() == 3);
    CHECK(plan.node_assignments[2].size() == 3);
    CHECK(plan.pre_dedup_total == 10);
    CHECK(plan.post_dedup_total == 10);
  }

  TEST_CASE("classical plan with one node holds everything") {
    const PartitionPlan plan = classical_plan(23, 1, 7);
    CHECK(plan.node_assignments[0].size() == 23);
  }

  TEST_CASE("classical plan covers each index exactly once") {
    const PartitionPlan plan = classical_plan(101, 7, 321);
    const auto all = sorted_union(plan);
    REQUIRE(all.size() == 101);
    for (std::int64_t i = 0; i < 101; ++i) CHECK(all[static_cast<std::size_t>(i)] == i);
  }

  TEST_CASE("classical plan rejects more nodes than rows") {
    CHECK_THROWS_AS(classical_plan(5, 6, 1), PlanError);
  }

  TEST_CASE("oversample plan rejects more nodes than pre-dedup entries") {
    Eigen::VectorXd y(4);
    y << 0.0, 0.1, 0.2, 0.3;
    const SliceSpec slices = make_slices(y, SlicingChoice{SlicingRule::fixed, 1});
    CHECK_THROWS_AS(oversample_plan(y, slices, 1.0, 5, 1), PlanError);
  }

  TEST_CASE("oversampled nodes never hold an index twice and always cover") {
    Rng rng(44);
    for (int trial = 0; trial < 30; ++trial) {
      Eigen::VectorXd y(150);
      for (Eigen::Index i = 0; i < y.size(); ++i)
        y(i) = rng.uniform01() < 0.8 ? rng.normal() * 0.1 : 2.0 + rng.uniform01();
      const SliceSpec slices = make_slices(y, SlicingChoice{SlicingRule::sturges, 3});
      const PartitionPlan plan = oversample_plan(y, slices, 0.9, 1 + static_cast<int>(rng.below(8)),
                                                 rng.next());
      std::set<std::int64_t> seen;
      for (const auto& node : plan.node_assignments) {
        std::set<std::int64_t> in_node(node.begin(), node.end());
        CHECK(in_node.size() == node.size());  // no duplicate within a node
        seen.insert(node.begin(), node.end());
      }
      CHECK(seen.size() == 150);  // coverage
      CHECK(plan.post_dedup_total <= plan.pre_dedup_total);
      CHECK(plan.pre_dedup_total <= static_cast<std::int64_t>(slices.l()) * 150);
      plan.validate(150);
    }
  }

  TEST_CASE("pre-dedup total is nondecreasing in tau") {
    Rng rng(45);
    Eigen::VectorXd y(300);
    for (Eigen::Index i = 0; i < y.size(); ++i)
      y(i) = rng.uniform01() < 0.9 ? rng.normal() * 0.1 : 3.0;
    const SliceSpec slices = make_slices(y, SlicingChoice{SlicingRule::scott, 3});
    std::int64_t previous = 0;
    for (const double tau : {0.1, 0.25, 0.5, 0.75, 1.0}) {
      const PartitionPlan plan = oversample_plan(y, slices, tau, 5, 2024);
      CHECK(plan.pre_dedup_total >= previous);
      previous = plan.pre_dedup_total;
    }
  }

  TEST_CASE("plans are bitwise deterministic in the seed") {
    const Eigen::VectorXd y = two_groups(80, 20);
    const SliceSpec slices = make_slices(y, SlicingChoice{SlicingRule::fixed, 2});
    const PartitionPlan a = oversample_plan(y, slices, 1.0, 4, 555);
    const PartitionPlan b = oversample_plan(y, slices, 1.0, 4, 555);
    const PartitionPlan c = oversample_plan(y, slices, 1.0, 4, 556);
    CHECK(a.node_assignments == b.node_assignments);
    CHECK(a.node_assignments != c.node_assignments);
    const PartitionPlan d = classical_plan(64, 4, 9);
    const PartitionPlan e = classical_plan(64, 4, 9);
    CHECK(d.node_assignments == e.node_assignments);
  }

  TEST_CASE("plan JSON round-trip preserves every field") {
    const Eigen::VectorXd y = two_groups(40, 10);
    const SliceSpec slices = make_slices(y, SlicingChoice{SlicingRule::fixed, 2});
    const PartitionPlan plan = oversample_plan(y, slices, 1.0, 3, 77);
    const PartitionPlan back = plan_from_json(plan_to_json(plan));
    CHECK(back.k == plan.k);
    CHECK(back.seed == plan.seed);
    CHECK(back.pre_dedup_total == plan.pre_dedup_total);
    CHECK(back.post_dedup_total == plan.post_dedup_total);
    CHECK(back.node_assignments == plan.node_assignments);
  }
}
