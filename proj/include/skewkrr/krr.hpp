#pragma once

#include <cstdint>
#include <vector>

#include "skewkrr/dataset.hpp"
#include "skewkrr/kernel.hpp"

namespace skewkrr {

struct KrrModel {
  Eigen::MatrixXd centers;       // the fitting predictors
  Eigen::VectorXd coefficients;  // solves (K + m*lambda I) beta = y
  KernelSpec spec;
  double lambda = 0.0;
};

// Closed-form fit: coefficients = (gram(X) + n*lambda I)^-1 y, centers = X.
KrrModel fit(const Dataset& data, const KernelSpec& spec, double lambda);

// Same solve with the linear-system ridge given directly. Divide-and-conquer
// nodes share a global-scale ridge instead of n_local * lambda; the stored
// lambda becomes ridge / n_local.
KrrModel fit_with_ridge(const Dataset& data, const KernelSpec& spec, double ridge);

// yhat[j] = sum_i coefficients[i] * K(centers[i], Xnew[j])
Eigen::VectorXd predict(const KrrModel& model, const Eigen::Ref<const Eigen::MatrixXd>& Xnew);

// Median of pairwise Euclidean distances over a seeded probe of up to
// probe_size rows. A zero median falls back to the smallest nonzero distance;
// all-identical predictors are an error.
double median_bandwidth(const Eigen::Ref<const Eigen::MatrixXd>& X, std::int64_t probe_size,
                        std::uint64_t seed);

// Seeded holdout search over an ascending grid of candidate lambdas, each
// interpreted at global scale: the selection fit solves with
// ridge = global_n * lambda. Ties break toward the larger lambda.
double select_lambda(const Dataset& data, const KernelSpec& spec, const std::vector<double>& grid,
                     std::int64_t global_n, double holdout_fraction, std::uint64_t seed);

// 20 log-spaced values in [1e-8, 1]
std::vector<double> default_lambda_grid();

}  // namespace skewkrr
