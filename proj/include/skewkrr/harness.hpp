#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "skewkrr/dac.hpp"
#include "skewkrr/synthdata.hpp"

namespace skewkrr {

enum class Estimator { full, classical_dac, oversampled_dac };

const char* to_string(Estimator estimator);
Estimator estimator_from_string(const std::string& name);  // full | dac | odac

// Mean squared difference over the evaluation points.
double mse_against_truth(const Eigen::Ref<const Eigen::VectorXd>& predictions,
                         const Eigen::Ref<const Eigen::VectorXd>& truth);

// Draws floor(fraction * count) test rows from every nonempty response
// stratum (at least one whenever the stratum has two or more members;
// singletons stay in train). Deterministic given the seed.
std::pair<Dataset, Dataset> stratified_split(const Dataset& data, double test_fraction,
                                             const SliceSpec& strata, std::uint64_t seed);

struct ExperimentConfig {
  std::vector<Estimator> estimators{Estimator::full, Estimator::classical_dac,
                                    Estimator::oversampled_dac};
  std::vector<std::int64_t> n_values{2000};
  std::vector<int> d_values{1};
  std::vector<int> k_values{20};
  std::vector<double> tau_values{1.0};
  SlicingChoice slicing{};
  int replicates = 20;
  std::uint64_t master_seed = 0;
  std::int64_t test_grid_size = 2000;
  double noise_sd = 0.1;
  SurfaceShape shape = SurfaceShape::uni_peak;
  KernelSpec kernel{};
  std::optional<double> sigma;   // absent: median heuristic per replicate
  std::optional<double> lambda;  // absent: seeded holdout grid selection

  void validate() const;
};

// Sweep over (estimator, k, tau) on a fixed dataset: per replicate, a
// seeded stratified split feeds the fits and the held-out MSE.
struct CsvExperimentConfig {
  std::vector<Estimator> estimators{Estimator::classical_dac, Estimator::oversampled_dac};
  std::vector<int> k_values{10};
  std::vector<double> tau_values{1.0};
  SlicingChoice slicing{};
  int replicates = 10;
  std::uint64_t master_seed = 0;
  double test_fraction = 0.1;
  KernelSpec kernel{};
  std::optional<double> sigma;
  std::optional<double> lambda;

  void validate() const;
};

// One grid cell; replicate-level values are kept so paired comparisons and
// standard errors can be computed downstream.
struct CellResult {
  Estimator estimator = Estimator::full;
  std::int64_t n = 0;
  int d = 0;
  int k = 0;        // 0 when the estimator takes no node count
  double tau = 0.0;  // 0 when the estimator takes no tau
  std::vector<double> mse;
  std::vector<double> fit_seconds;  // wall clock; the only nondeterministic fields
  std::vector<std::int64_t> pre_dedup_totals;
  std::vector<std::int64_t> post_dedup_totals;
  std::vector<std::int64_t> slice_counts;  // 0 for estimators without slicing
  std::vector<std::int64_t> node_size_min;
  std::vector<std::int64_t> node_size_max;
  std::string error;  // nonempty when any replicate of the cell failed

  double mean_mse() const;
  double se_mse() const;  // sample sd / sqrt(replicates)
  double mean_fit_seconds() const;
};

struct ExperimentReport {
  nlohmann::json config_echo;  // excludes worker count: reports are worker-independent
  std::vector<CellResult> cells;
};

ExperimentReport run_experiment(const ExperimentConfig& config, int workers = 1);
ExperimentReport run_csv_experiment(const Dataset& data, const CsvExperimentConfig& config,
                                    int workers = 1);

std::string report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);

}  // namespace skewkrr
