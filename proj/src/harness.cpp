#include "skewkrr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "parallel.hpp"
#include "skewkrr/csv.hpp"
#include "skewkrr/rng.hpp"

namespace skewkrr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Top-level purpose tags for seed derivation. Tasks append their grid
// coordinates, so every replicate draws from its own streams and the whole
// report is a pure function of the master seed.
constexpr std::uint64_t kSeedData = 11;
constexpr std::uint64_t kSeedBandwidth = 12;
constexpr std::uint64_t kSeedLambdaProbe = 13;
constexpr std::uint64_t kSeedLambdaSearch = 14;
constexpr std::uint64_t kSeedTestGrid = 15;
constexpr std::uint64_t kSeedPartition = 16;
constexpr std::uint64_t kSeedSplit = 17;

constexpr std::int64_t kBandwidthProbe = 1000;
constexpr std::int64_t kLambdaProbe = 4000;
constexpr double kHoldoutFraction = 0.2;

std::uint64_t estimator_tag(Estimator estimator) { return static_cast<std::uint64_t>(estimator); }

// Test rows drawn per stratum; shared by stratified_split and the train-size
// computation so the two can never disagree.
std::int64_t stratum_take(std::int64_t count, double fraction) {
  if (count == 0) return 0;
  auto take = static_cast<std::int64_t>(std::floor(fraction * static_cast<double>(count)));
  if (take == 0 && count >= 2) take = 1;  // singletons stay in train
  return take;
}

// One replicate of one grid cell.
struct Slot {
  double mse = kNaN;
  double seconds = kNaN;
  std::int64_t pre = 0;
  std::int64_t post = 0;
  std::int64_t slices = 0;
  std::int64_t node_min = 0;
  std::int64_t node_max = 0;
  std::string error;
};

struct CellKey {
  Estimator estimator = Estimator::full;
  std::size_t n_idx = 0;
  std::size_t d_idx = 0;
  std::int64_t n = 0;
  int d = 0;
  int k = 0;        // 0 when the estimator takes no node count
  double tau = 0.0;  // 0 when the estimator takes no tau
  std::size_t k_idx = 0;
  std::size_t tau_idx = 0;
};

// Fit one estimator on `train`, timed (plan construction included, prediction
// excluded), then score predictions on the evaluation set. Throws on failure;
// the caller owns error capture.
Slot fit_cell(const Dataset& train, const CellKey& key, const KernelSpec& spec, double lambda,
              const SlicingChoice& slicing, std::uint64_t partition_seed,
              const Eigen::MatrixXd& Xeval, const Eigen::VectorXd& target) {
  Slot slot;
  Eigen::VectorXd predictions;
  const auto start = std::chrono::steady_clock::now();
  if (key.estimator == Estimator::full) {
    const KrrModel model = fit(train, spec, lambda);
    slot.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    slot.pre = train.n();
    slot.post = train.n();
    slot.node_min = train.n();
    slot.node_max = train.n();
    predictions = predict(model, Xeval);
  } else {
    PartitionPlan plan;
    if (key.estimator == Estimator::classical_dac) {
      plan = classical_plan(train.n(), key.k, partition_seed);
    } else {
      const SliceSpec slices = make_slices(train.y, slicing);
      slot.slices = slices.l();
      plan = oversample_plan(train.y, slices, key.tau, key.k, partition_seed);
      if (plan.pre_dedup_total > slot.slices * train.n())
        throw PlanError("oversampled total exceeds the l*n bound");
    }
    // Node fits stay serial here; the harness parallelizes across replicates.
    const DacModel model = fit_dac(train, plan, spec, lambda, 1);
    slot.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    slot.pre = plan.pre_dedup_total;
    slot.post = plan.post_dedup_total;
    std::int64_t lo = train.n();
    std::int64_t hi = 0;
    for (const auto& node : plan.node_assignments) {
      const auto size = static_cast<std::int64_t>(node.size());
      lo = std::min(lo, size);
      hi = std::max(hi, size);
    }
    slot.node_min = lo;
    slot.node_max = hi;
    predictions = predict_dac(model, Xeval);
  }
  slot.mse = mse_against_truth(predictions, target);
  return slot;
}

// Kernel spec for one replicate: sigma comes from the override when present,
// otherwise from the median heuristic (gaussian only; other families ignore
// sigma entirely).
KernelSpec resolve_kernel(const KernelSpec& base, const std::optional<double>& sigma_override,
                          const Eigen::MatrixXd& X, std::uint64_t bandwidth_seed) {
  KernelSpec spec = base;
  if (sigma_override)
    spec.sigma = *sigma_override;
  else if (spec.family == KernelFamily::gaussian)
    spec.sigma = median_bandwidth(X, kBandwidthProbe, bandwidth_seed);
  return spec;
}

// Lambda for one replicate: override, or seeded holdout selection on the
// training sample (a probe of at most kLambdaProbe rows when it is larger),
// with the ridge always interpreted at scale global_n.
double resolve_lambda(const std::optional<double>& lambda_override, const Dataset& train,
                      const KernelSpec& spec, std::int64_t global_n, std::uint64_t probe_seed,
                      std::uint64_t search_seed) {
  if (lambda_override) return *lambda_override;
  if (train.n() <= kLambdaProbe)
    return select_lambda(train, spec, default_lambda_grid(), global_n, kHoldoutFraction,
                         search_seed);
  Rng rng(probe_seed);
  const Dataset probe = train.subset(rng.sample_without_replacement(train.n(), kLambdaProbe));
  return select_lambda(probe, spec, default_lambda_grid(), global_n, kHoldoutFraction, search_seed);
}

std::vector<CellResult> assemble(const std::vector<CellKey>& keys,
                                 const std::vector<std::vector<Slot>>& slots) {
  std::vector<CellResult> cells;
  cells.reserve(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) {
    CellResult cell;
    cell.estimator = keys[c].estimator;
    cell.n = keys[c].n;
    cell.d = keys[c].d;
    cell.k = keys[c].k;
    cell.tau = keys[c].tau;
    for (const Slot& slot : slots[c]) {
      cell.mse.push_back(slot.mse);
      cell.fit_seconds.push_back(slot.seconds);
      cell.pre_dedup_totals.push_back(slot.pre);
      cell.post_dedup_totals.push_back(slot.post);
      cell.slice_counts.push_back(slot.slices);
      cell.node_size_min.push_back(slot.node_min);
      cell.node_size_max.push_back(slot.node_max);
    }
    for (std::size_t rep = 0; rep < slots[c].size(); ++rep) {
      if (!slots[c][rep].error.empty()) {
        cell.error = "replicate " + std::to_string(rep) + ": " + slots[c][rep].error;
        break;
      }
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

nlohmann::json names_of(const std::vector<Estimator>& estimators) {
  auto out = nlohmann::json::array();
  for (const auto estimator : estimators) out.push_back(to_string(estimator));
  return out;
}

nlohmann::json kernel_echo(const KernelSpec& spec, const std::optional<double>& sigma,
                           const std::optional<double>& lambda) {
  nlohmann::json out;
  out["family"] = to_string(spec.family);
  if (spec.family == KernelFamily::polynomial) out["degree"] = spec.degree;
  out["sigma"] = sigma ? nlohmann::json(*sigma) : nlohmann::json(nullptr);
  out["lambda"] = lambda ? nlohmann::json(*lambda) : nlohmann::json(nullptr);
  return out;
}

double mean_or_nan(const std::vector<double>& values) {
  if (values.empty()) return kNaN;
  double total = 0.0;
  for (const auto value : values) total += value;
  return total / static_cast<double>(values.size());
}

double mean_of(const std::vector<std::int64_t>& values) {
  if (values.empty()) return kNaN;
  double total = 0.0;
  for (const auto value : values) total += static_cast<double>(value);
  return total / static_cast<double>(values.size());
}

}  // namespace

const char* to_string(Estimator estimator) {
  switch (estimator) {
    case Estimator::full: return "full";
    case Estimator::classical_dac: return "dac";
    case Estimator::oversampled_dac: return "odac";
  }
  throw InputError("unknown estimator value");
}

Estimator estimator_from_string(const std::string& name) {
  if (name == "full") return Estimator::full;
  if (name == "dac") return Estimator::classical_dac;
  if (name == "odac") return Estimator::oversampled_dac;
  throw InputError("unknown estimator '" + name + "' (expected full, dac, or odac)");
}

double mse_against_truth(const Eigen::Ref<const Eigen::VectorXd>& predictions,
                         const Eigen::Ref<const Eigen::VectorXd>& truth) {
  if (predictions.size() != truth.size())
    throw InputError("mse: prediction and truth lengths differ");
  if (predictions.size() == 0) throw InputError("mse: empty evaluation set");
  return (predictions - truth).squaredNorm() / static_cast<double>(predictions.size());
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& data, double test_fraction,
                                             const SliceSpec& strata, std::uint64_t seed) {
  data.validate();
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw InputError("stratified_split: test_fraction must lie in (0, 1)");

  std::vector<std::vector<std::int64_t>> members(static_cast<std::size_t>(strata.l()));
  for (std::int64_t i = 0; i < data.n(); ++i)
    members[static_cast<std::size_t>(strata.slice_index(data.y(i)))].push_back(i);

  std::vector<char> in_test(static_cast<std::size_t>(data.n()), 0);
  for (std::size_t j = 0; j < members.size(); ++j) {
    const auto& rows = members[j];
    const auto take = stratum_take(static_cast<std::int64_t>(rows.size()), test_fraction);
    if (take == 0) continue;
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(j)}));
    for (const auto pick :
         rng.sample_without_replacement(static_cast<std::int64_t>(rows.size()), take))
      in_test[static_cast<std::size_t>(rows[static_cast<std::size_t>(pick)])] = 1;
  }

  std::vector<std::int64_t> train_rows;
  std::vector<std::int64_t> test_rows;
  for (std::int64_t i = 0; i < data.n(); ++i)
    (in_test[static_cast<std::size_t>(i)] ? test_rows : train_rows).push_back(i);
  if (test_rows.empty())
    throw DataError("stratified_split: no stratum is large enough to give up a test row");
  if (train_rows.empty()) throw DataError("stratified_split: no rows left for training");
  return {data.subset(train_rows), data.subset(test_rows)};
}

void ExperimentConfig::validate() const {
  if (estimators.empty()) throw InputError("experiment: estimators must be nonempty");
  if (n_values.empty()) throw InputError("experiment: n_values must be nonempty");
  if (d_values.empty()) throw InputError("experiment: d_values must be nonempty");
  if (k_values.empty()) throw InputError("experiment: k_values must be nonempty");
  if (tau_values.empty()) throw InputError("experiment: tau_values must be nonempty");
  for (const auto n : n_values)
    if (n < 1) throw InputError("experiment: sample sizes must be positive");
  for (const auto d : d_values) {
    if (d < 1) throw InputError("experiment: dimensions must be positive");
    if (d > 1 && kernel.family == KernelFamily::min)
      throw InputError("experiment: the min kernel handles d = 1 only");
  }
  for (const auto k : k_values) {
    if (k < 1) throw InputError("experiment: node counts must be positive");
    for (const auto n : n_values)
      if (k > n) throw InputError("experiment: every node count must be <= every sample size");
  }
  for (const auto tau : tau_values)
    if (!(tau > 0.0 && tau <= 1.0)) throw InputError("experiment: tau must lie in (0, 1]");
  if (replicates < 1) throw InputError("experiment: replicates must be >= 1");
  if (test_grid_size < 1) throw InputError("experiment: test_grid_size must be >= 1");
  if (noise_sd < 0.0) throw InputError("experiment: noise_sd must be nonnegative");
  kernel.validate();
  if (sigma && !(*sigma > 0.0)) throw InputError("experiment: sigma override must be positive");
  if (lambda && !(*lambda > 0.0)) throw InputError("experiment: lambda override must be positive");
}

void CsvExperimentConfig::validate() const {
  if (estimators.empty()) throw InputError("experiment: estimators must be nonempty");
  if (k_values.empty()) throw InputError("experiment: k_values must be nonempty");
  if (tau_values.empty()) throw InputError("experiment: tau_values must be nonempty");
  for (const auto k : k_values)
    if (k < 1) throw InputError("experiment: node counts must be positive");
  for (const auto tau : tau_values)
    if (!(tau > 0.0 && tau <= 1.0)) throw InputError("experiment: tau must lie in (0, 1]");
  if (replicates < 1) throw InputError("experiment: replicates must be >= 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw InputError("experiment: test_fraction must lie in (0, 1)");
  kernel.validate();
  if (sigma && !(*sigma > 0.0)) throw InputError("experiment: sigma override must be positive");
  if (lambda && !(*lambda > 0.0)) throw InputError("experiment: lambda override must be positive");
}

double CellResult::mean_mse() const { return mean_or_nan(mse); }

double CellResult::se_mse() const {
  const auto count = mse.size();
  if (count < 2) return 0.0;
  const double mean = mean_or_nan(mse);
  double ss = 0.0;
  for (const auto value : mse) ss += (value - mean) * (value - mean);
  return std::sqrt(ss / static_cast<double>(count - 1)) / std::sqrt(static_cast<double>(count));
}

double CellResult::mean_fit_seconds() const { return mean_or_nan(fit_seconds); }

ExperimentReport run_experiment(const ExperimentConfig& config, int workers) {
  config.validate();

  std::vector<CellKey> keys;
  for (const auto estimator : config.estimators) {
    for (std::size_t n_idx = 0; n_idx < config.n_values.size(); ++n_idx) {
      for (std::size_t d_idx = 0; d_idx < config.d_values.size(); ++d_idx) {
        CellKey key;
        key.estimator = estimator;
        key.n_idx = n_idx;
        key.d_idx = d_idx;
        key.n = config.n_values[n_idx];
        key.d = config.d_values[d_idx];
        if (estimator == Estimator::full) {
          keys.push_back(key);
          continue;
        }
        for (std::size_t k_idx = 0; k_idx < config.k_values.size(); ++k_idx) {
          key.k_idx = k_idx;
          key.k = config.k_values[k_idx];
          if (estimator == Estimator::classical_dac) {
            keys.push_back(key);
            continue;
          }
          for (std::size_t tau_idx = 0; tau_idx < config.tau_values.size(); ++tau_idx) {
            key.tau_idx = tau_idx;
            key.tau = config.tau_values[tau_idx];
            keys.push_back(key);
          }
        }
      }
    }
  }

  const auto replicates = static_cast<std::size_t>(config.replicates);
  std::vector<std::vector<Slot>> slots(keys.size(), std::vector<Slot>(replicates));

  // One task per (n, d, replicate): data, bandwidth, lambda, and evaluation
  // grid are computed once and shared by every estimator cell, so replicate r
  // compares estimators on identical inputs.
  const std::size_t task_count = config.n_values.size() * config.d_values.size() * replicates;
  detail::parallel_for(task_count, workers, [&](std::size_t task) {
    const std::size_t rep = task % replicates;
    const std::size_t d_idx = (task / replicates) % config.d_values.size();
    const std::size_t n_idx = task / (replicates * config.d_values.size());
    const std::int64_t n = config.n_values[n_idx];
    const int d = config.d_values[d_idx];

    SynthSpec synth;
    synth.shape = config.shape;
    synth.n = n;
    synth.d = d;
    synth.noise_sd = config.noise_sd;
    synth.seed = derive_seed(config.master_seed, {kSeedData, n_idx, d_idx, rep});
    const SynthResult sample = generate(synth);

    const KernelSpec spec =
        resolve_kernel(config.kernel, config.sigma, sample.data.X,
                       derive_seed(config.master_seed, {kSeedBandwidth, n_idx, d_idx, rep}));
    const double lambda = resolve_lambda(
        config.lambda, sample.data, spec, n,
        derive_seed(config.master_seed, {kSeedLambdaProbe, n_idx, d_idx, rep}),
        derive_seed(config.master_seed, {kSeedLambdaSearch, n_idx, d_idx, rep}));

    // Fixed evaluation grid per dimension: a lattice in d = 1, a seeded
    // uniform sample otherwise. It depends on d only, so cells with
    // different n are scored on the same points.
    const auto q = config.test_grid_size;
    Eigen::MatrixXd Xeval(q, d);
    if (d == 1) {
      for (std::int64_t i = 0; i < q; ++i)
        Xeval(i, 0) = q == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(q - 1);
    } else {
      Rng grid_rng(derive_seed(config.master_seed, {kSeedTestGrid, d_idx}));
      for (std::int64_t i = 0; i < q; ++i)
        for (int j = 0; j < d; ++j) Xeval(i, j) = grid_rng.uniform01();
    }
    Eigen::VectorXd target(q);
    for (std::int64_t i = 0; i < q; ++i) target(i) = sample.truth(Xeval.row(i).transpose());

    for (std::size_t c = 0; c < keys.size(); ++c) {
      const CellKey& key = keys[c];
      if (key.n_idx != n_idx || key.d_idx != d_idx) continue;
      try {
        const auto partition_seed =
            derive_seed(config.master_seed, {kSeedPartition, n_idx, d_idx, rep,
                                             estimator_tag(key.estimator), key.k_idx, key.tau_idx});
        slots[c][rep] =
            fit_cell(sample.data, key, spec, lambda, config.slicing, partition_seed, Xeval, target);
      } catch (const std::exception& failure) {
        slots[c][rep].error = failure.what();
      }
    }
  });

  ExperimentReport report;
  auto& echo = report.config_echo;
  echo["mode"] = "synthetic";
  echo["estimators"] = names_of(config.estimators);
  echo["n_values"] = config.n_values;
  echo["d_values"] = config.d_values;
  echo["k_values"] = config.k_values;
  echo["tau_values"] = config.tau_values;
  echo["slicing"] = to_string(config.slicing);
  echo["replicates"] = config.replicates;
  echo["master_seed"] = config.master_seed;
  echo["test_grid_size"] = config.test_grid_size;
  echo["noise_sd"] = config.noise_sd;
  echo["shape"] = to_string(config.shape);
  echo["kernel"] = kernel_echo(config.kernel, config.sigma, config.lambda);
  report.cells = assemble(keys, slots);
  return report;
}

ExperimentReport run_csv_experiment(const Dataset& data, const CsvExperimentConfig& config,
                                    int workers) {
  data.validate();
  config.validate();

  // The strata and per-stratum test counts are fixed, so the train size is
  // the same for every replicate; only which rows land in test varies.
  const SliceSpec strata = make_slices(data.y, config.slicing);
  std::int64_t test_n = 0;
  for (const auto count : strata.counts) test_n += stratum_take(count, config.test_fraction);
  const std::int64_t train_n = data.n() - test_n;

  std::vector<CellKey> keys;
  for (const auto estimator : config.estimators) {
    CellKey key;
    key.estimator = estimator;
    key.n = train_n;
    key.d = static_cast<int>(data.dim());
    if (estimator == Estimator::full) {
      keys.push_back(key);
      continue;
    }
    for (std::size_t k_idx = 0; k_idx < config.k_values.size(); ++k_idx) {
      key.k_idx = k_idx;
      key.k = config.k_values[k_idx];
      if (estimator == Estimator::classical_dac) {
        keys.push_back(key);
        continue;
      }
      for (std::size_t tau_idx = 0; tau_idx < config.tau_values.size(); ++tau_idx) {
        key.tau_idx = tau_idx;
        key.tau = config.tau_values[tau_idx];
        keys.push_back(key);
      }
    }
  }

  const auto replicates = static_cast<std::size_t>(config.replicates);
  std::vector<std::vector<Slot>> slots(keys.size(), std::vector<Slot>(replicates));

  detail::parallel_for(replicates, workers, [&](std::size_t rep) {
    const auto split = stratified_split(data, config.test_fraction, strata,
                                        derive_seed(config.master_seed, {kSeedSplit, rep}));
    const Dataset& train = split.first;
    const Dataset& test = split.second;

    const KernelSpec spec =
        resolve_kernel(config.kernel, config.sigma, train.X,
                       derive_seed(config.master_seed, {kSeedBandwidth, rep}));
    const double lambda =
        resolve_lambda(config.lambda, train, spec, train.n(),
                       derive_seed(config.master_seed, {kSeedLambdaProbe, rep}),
                       derive_seed(config.master_seed, {kSeedLambdaSearch, rep}));

    for (std::size_t c = 0; c < keys.size(); ++c) {
      const CellKey& key = keys[c];
      try {
        const auto partition_seed = derive_seed(
            config.master_seed,
            {kSeedPartition, rep, estimator_tag(key.estimator), key.k_idx, key.tau_idx});
        slots[c][rep] =
            fit_cell(train, key, spec, lambda, config.slicing, partition_seed, test.X, test.y);
      } catch (const std::exception& failure) {
        slots[c][rep].error = failure.what();
      }
    }
  });

  ExperimentReport report;
  auto& echo = report.config_echo;
  echo["mode"] = "csv";
  echo["estimators"] = names_of(config.estimators);
  echo["n_rows"] = data.n();
  echo["train_rows"] = train_n;
  echo["d"] = data.dim();
  echo["k_values"] = config.k_values;
  echo["tau_values"] = config.tau_values;
  echo["slicing"] = to_string(config.slicing);
  echo["replicates"] = config.replicates;
  echo["master_seed"] = config.master_seed;
  echo["test_fraction"] = config.test_fraction;
  echo["kernel"] = kernel_echo(config.kernel, config.sigma, config.lambda);
  report.cells = assemble(keys, slots);
  return report;
}

std::string report_to_json(const ExperimentReport& report) {
  nlohmann::json out;
  out["config"] = report.config_echo;
  auto cells = nlohmann::json::array();
  for (const CellResult& cell : report.cells) {
    nlohmann::json row;
    row["estimator"] = to_string(cell.estimator);
    row["n"] = cell.n;
    row["d"] = cell.d;
    row["k"] = cell.k > 0 ? nlohmann::json(cell.k) : nlohmann::json(nullptr);
    row["tau"] = cell.tau > 0.0 ? nlohmann::json(cell.tau) : nlohmann::json(nullptr);
    row["replicates"] = cell.mse.size();
    row["mse"] = cell.mse;
    row["mean_mse"] = cell.mean_mse();
    row["se_mse"] = cell.se_mse();
    row["fit_seconds"] = cell.fit_seconds;
    row["mean_fit_seconds"] = cell.mean_fit_seconds();
    row["pre_dedup_total"] = cell.pre_dedup_totals;
    row["post_dedup_total"] = cell.post_dedup_totals;
    row["slices"] = cell.slice_counts;
    row["node_size_min"] = cell.node_size_min;
    row["node_size_max"] = cell.node_size_max;
    row["error"] = cell.error.empty() ? nlohmann::json(nullptr) : nlohmann::json(cell.error);
    cells.push_back(std::move(row));
  }
  out["cells"] = std::move(cells);
  return out.dump(2) + "\n";
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "estimator,n,d,k,tau,replicates,mean_mse,se_mse,mean_fit_seconds,"
         "mean_pre_dedup_total,mean_post_dedup_total,mean_slices,"
         "node_size_min,node_size_max,error\n";
  for (const CellResult& cell : report.cells) {
    out << to_string(cell.estimator) << ',' << cell.n << ',' << cell.d << ',';
    if (cell.k > 0) out << cell.k;
    out << ',';
    if (cell.tau > 0.0) out << format_double(cell.tau);
    out << ',' << cell.mse.size() << ',' << format_double(cell.mean_mse()) << ','
        << format_double(cell.se_mse()) << ',' << format_double(cell.mean_fit_seconds()) << ','
        << format_double(mean_of(cell.pre_dedup_totals)) << ','
        << format_double(mean_of(cell.post_dedup_totals)) << ','
        << format_double(mean_of(cell.slice_counts)) << ',';
    if (!cell.node_size_min.empty())
      out << *std::min_element(cell.node_size_min.begin(), cell.node_size_min.end());
    out << ',';
    if (!cell.node_size_max.empty())
      out << *std::max_element(cell.node_size_max.begin(), cell.node_size_max.end());
    out << ',';
    // column count must stay fixed, so commas in error text become semicolons
    std::string error = cell.error;
    std::replace(error.begin(), error.end(), ',', ';');
    out << error << '\n';
  }
  return out.str();
}

}  // namespace skewkrr
