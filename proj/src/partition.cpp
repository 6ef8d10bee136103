#include "skewkrr/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "skewkrr/rng.hpp"

namespace skewkrr {

namespace {

double sample_sd(const Eigen::Ref<const Eigen::VectorXd>& y) {
  const auto n = static_cast<double>(y.size());
  const double mean = y.mean();
  return std::sqrt((y.array() - mean).square().sum() / (n - 1.0));
}

// linear-interpolation quantile on sorted values
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

int clamp_slices(double raw, std::int64_t n) {
  if (!std::isfinite(raw) || raw < 1.0) return 1;
  const double capped = std::min(raw, static_cast<double>(n));
  return static_cast<int>(capped);
}

int scott_count(const Eigen::Ref<const Eigen::VectorXd>& y) {
  const double range = y.maxCoeff() - y.minCoeff();
  if (range <= 0.0) return 1;
  const double sd = sample_sd(y);
  const double width = 3.49 * sd * std::pow(static_cast<double>(y.size()), -1.0 / 3.0);
  return clamp_slices(std::ceil(range / width), y.size());
}

}  // namespace

SlicingChoice parse_slicing(const std::string& text) {
  SlicingChoice choice;
  if (text == "scott") {
    choice.rule = SlicingRule::scott;
  } else if (text == "sturges") {
    choice.rule = SlicingRule::sturges;
  } else if (text == "fd" || text == "freedman_diaconis") {
    choice.rule = SlicingRule::freedman_diaconis;
  } else if (text.rfind("fixed:", 0) == 0) {
    choice.rule = SlicingRule::fixed;
    try {
      choice.fixed_l = std::stoi(text.substr(6));
    } catch (const std::exception&) {
      throw InputError("slicing: cannot parse slice count in '" + text + "'");
    }
    if (choice.fixed_l < 1) throw InputError("slicing: fixed slice count must be >= 1");
  } else {
    throw InputError("slicing: expected fixed:L, scott, sturges or fd, got '" + text + "'");
  }
  return choice;
}

std::string to_string(const SlicingChoice& choice) {
  switch (choice.rule) {
    case SlicingRule::fixed: return "fixed:" + std::to_string(choice.fixed_l);
    case SlicingRule::scott: return "scott";
    case SlicingRule::sturges: return "sturges";
    case SlicingRule::freedman_diaconis: return "fd";
  }
  return "unknown";
}

int slice_count(const Eigen::Ref<const Eigen::VectorXd>& y, const SlicingChoice& rule) {
  const std::int64_t n = y.size();
  if (rule.rule == SlicingRule::fixed) {
    if (rule.fixed_l < 1) throw InputError("slice_count: fixed slice count must be >= 1");
    return static_cast<int>(std::min<std::int64_t>(rule.fixed_l, std::max<std::int64_t>(n, 1)));
  }
  if (n < 2) throw InputError("slice_count: data-driven rules need at least two responses");
  const double range = y.maxCoeff() - y.minCoeff();
  if (range <= 0.0) return 1;

  switch (rule.rule) {
    case SlicingRule::scott:
      return scott_count(y);
    case SlicingRule::sturges:
      return clamp_slices(std::ceil(std::log2(static_cast<double>(n))) + 1.0, n);
    case SlicingRule::freedman_diaconis: {
      std::vector<double> sorted(y.data(), y.data() + n);
      std::sort(sorted.begin(), sorted.end());
      const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
      if (iqr <= 0.0) return scott_count(y);
      const double width = 2.0 * iqr * std::pow(static_cast<double>(n), -1.0 / 3.0);
      return clamp_slices(std::ceil(range / width), n);
    }
    default:
      throw InputError("slice_count: unknown rule");
  }
}

int SliceSpec::slice_index(double value) const {
  const int count = l();
  if (count == 1) return 0;
  const double lo = boundaries.front();
  const double hi = boundaries.back();
  const double width = (hi - lo) / static_cast<double>(count);
  const auto raw = static_cast<int>(std::floor((value - lo) / width));
  return std::clamp(raw, 0, count - 1);
}

SliceSpec make_slices(const Eigen::Ref<const Eigen::VectorXd>& y, const SlicingChoice& rule) {
  const std::int64_t n = y.size();
  if (n < 1) throw InputError("make_slices: empty response");

  SliceSpec spec;
  spec.rule = rule;
  const double lo = y.minCoeff();
  const double hi = y.maxCoeff();

  if (!(hi > lo)) {
    // constant response: one slice holding everything, synthetic unit width
    spec.boundaries = {lo - 0.5, lo + 0.5};
    spec.counts = {n};
    return spec;
  }

  const int l = slice_count(y, rule);
  spec.boundaries.resize(static_cast<std::size_t>(l) + 1);
  for (int i = 0; i <= l; ++i)
    spec.boundaries[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(l);
  spec.boundaries.back() = hi;

  spec.counts.assign(static_cast<std::size_t>(l), 0);
  for (std::int64_t i = 0; i < n; ++i)
    ++spec.counts[static_cast<std::size_t>(spec.slice_index(y(i)))];
  return spec;
}

std::int64_t copy_count(std::int64_t count_max, std::int64_t count_j, double tau) {
  if (count_j < 1) throw InputError("copy_count: slice count must be >= 1 (skip empty slices)");
  if (count_max < count_j) throw InputError("copy_count: count_max must be the largest count");
  if (!(tau > 0.0 && tau <= 1.0)) throw InputError("copy_count: tau must be in (0,1]");
  // small epsilon so binary representations of rational tau hit exact ratios
  const double ratio = tau * static_cast<double>(count_max) / static_cast<double>(count_j);
  const auto copies = static_cast<std::int64_t>(std::floor(ratio + 1e-9));
  return std::max<std::int64_t>(1, copies);
}

void PartitionPlan::validate(std::int64_t n) const {
  if (static_cast<int>(node_assignments.size()) != k)
    throw PlanError("plan: node count mismatch");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::int64_t total = 0;
  for (const auto& node : node_assignments) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      const std::int64_t idx = node[i];
      if (idx < 0 || idx >= n) throw PlanError("plan: index out of range");
      if (i > 0 && node[i - 1] >= idx) throw PlanError("plan: node indices not ascending/distinct");
      seen[static_cast<std::size_t>(idx)] = 1;
    }
    total += static_cast<std::int64_t>(node.size());
  }
  if (total != post_dedup_total) throw PlanError("plan: post_dedup_total mismatch");
  if (post_dedup_total > pre_dedup_total) throw PlanError("plan: dedup total exceeds pre total");
  for (std::int64_t i = 0; i < n; ++i)
    if (!seen[static_cast<std::size_t>(i)]) throw PlanError("plan: index missing from all nodes");
}

PartitionPlan classical_plan(std::int64_t n, int k, std::uint64_t seed) {
  if (n < 1) throw InputError("classical_plan: n must be positive");
  if (k < 1) throw InputError("classical_plan: k must be positive");
  if (static_cast<std::int64_t>(k) > n)
    throw PlanError("classical_plan: k = " + std::to_string(k) + " exceeds n = " +
                    std::to_string(n));

  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  PartitionPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.pre_dedup_total = n;
  plan.post_dedup_total = n;
  plan.node_assignments.resize(static_cast<std::size_t>(k));

  const std::int64_t base = n / k;
  const std::int64_t remainder = n % k;
  std::size_t cursor = 0;
  for (int node = 0; node < k; ++node) {
    const std::int64_t size = base + (node < remainder ? 1 : 0);
    auto& slot = plan.node_assignments[static_cast<std::size_t>(node)];
    slot.assign(order.begin() + static_cast<std::ptrdiff_t>(cursor),
                order.begin() + static_cast<std::ptrdiff_t>(cursor + static_cast<std::size_t>(size)));
    std::sort(slot.begin(), slot.end());
    cursor += static_cast<std::size_t>(size);
  }
  return plan;
}

PartitionPlan oversample_plan(const Eigen::Ref<const Eigen::VectorXd>& y, const SliceSpec& slices,
                              double tau, int k, std::uint64_t seed) {
  const std::int64_t n = y.size();
  if (n < 1) throw InputError("oversample_plan: empty response");
  if (k < 1) throw InputError("oversample_plan: k must be positive");
  if (!(tau > 0.0 && tau <= 1.0)) throw InputError("oversample_plan: tau must be in (0,1]");
  const int l = slices.l();
  if (std::accumulate(slices.counts.begin(), slices.counts.end(), std::int64_t{0}) != n)
    throw InputError("oversample_plan: slices inconsistent with response length");

  std::vector<std::vector<std::int64_t>> members(static_cast<std::size_t>(l));
  for (std::int64_t i = 0; i < n; ++i)
    members[static_cast<std::size_t>(slices.slice_index(y(i)))].push_back(i);

  std::int64_t count_max = 0;
  for (const auto& slice : members)
    count_max = std::max(count_max, static_cast<std::int64_t>(slice.size()));

  std::int64_t pre_total = 0;
  std::vector<std::int64_t> copies(static_cast<std::size_t>(l), 0);
  for (int j = 0; j < l; ++j) {
    const auto count = static_cast<std::int64_t>(members[static_cast<std::size_t>(j)].size());
    if (count == 0) continue;  // nothing to copy from an empty slice
    copies[static_cast<std::size_t>(j)] = copy_count(count_max, count, tau);
    pre_total += copies[static_cast<std::size_t>(j)] * count;
  }

  if (static_cast<std::int64_t>(k) > pre_total)
    throw PlanError("oversample_plan: k = " + std::to_string(k) +
                    " exceeds the oversampled total " + std::to_string(pre_total) +
                    "; some node would be empty");

  std::vector<std::vector<std::int64_t>> raw_nodes(static_cast<std::size_t>(k));
  for (int j = 0; j < l; ++j) {
    const auto& slice = members[static_cast<std::size_t>(j)];
    if (slice.empty()) continue;
    std::vector<std::int64_t> multiset;
    multiset.reserve(slice.size() * static_cast<std::size_t>(copies[static_cast<std::size_t>(j)]));
    for (std::int64_t copy = 0; copy < copies[static_cast<std::size_t>(j)]; ++copy)
      multiset.insert(multiset.end(), slice.begin(), slice.end());

    Rng rng(derive_seed(seed, {stream::partition, static_cast<std::uint64_t>(j)}));
    rng.shuffle(multiset);

    // round-robin deal, offset so small slices do not pile onto node 0
    const int start = j % k;
    for (std::size_t t = 0; t < multiset.size(); ++t) {
      const auto node = static_cast<std::size_t>(
          (start + static_cast<std::int64_t>(t)) % static_cast<std::int64_t>(k));
      raw_nodes[node].push_back(multiset[t]);
    }
  }

  PartitionPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.pre_dedup_total = pre_total;
  plan.node_assignments.resize(static_cast<std::size_t>(k));
  for (int node = 0; node < k; ++node) {
    auto& slot = plan.node_assignments[static_cast<std::size_t>(node)];
    slot = std::move(raw_nodes[static_cast<std::size_t>(node)]);
    std::sort(slot.begin(), slot.end());
    slot.erase(std::unique(slot.begin(), slot.end()), slot.end());
    if (slot.empty())
      throw PlanError("oversample_plan: node " + std::to_string(node) +
                      " received no observations");
    plan.post_dedup_total += static_cast<std::int64_t>(slot.size());
  }
  return plan;
}

std::string plan_to_json(const PartitionPlan& plan) {
  nlohmann::json doc;
  doc["k"] = plan.k;
  doc["seed"] = plan.seed;
  doc["nodes"] = plan.node_assignments;
  doc["pre_dedup_total"] = plan.pre_dedup_total;
  doc["post_dedup_total"] = plan.post_dedup_total;
  return doc.dump(2);
}

PartitionPlan plan_from_json(const std::string& text) {
  PartitionPlan plan;
  try {
    const auto doc = nlohmann::json::parse(text);
    plan.k = doc.at("k").get<int>();
    plan.seed = doc.at("seed").get<std::uint64_t>();
    plan.node_assignments = doc.at("nodes").get<std::vector<std::vector<std::int64_t>>>();
    plan.pre_dedup_total = doc.at("pre_dedup_total").get<std::int64_t>();
    plan.post_dedup_total = doc.at("post_dedup_total").get<std::int64_t>();
  } catch (const nlohmann::json::exception& err) {
    throw DataError(std::string("plan_from_json: ") + err.what());
  }
  return plan;
}

}  // namespace skewkrr
