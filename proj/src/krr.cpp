#include "skewkrr/krr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "skewkrr/rng.hpp"

namespace skewkrr {

KrrModel fit(const Dataset& data, const KernelSpec& spec, double lambda) {
  if (!(lambda > 0.0)) throw InputError("fit: lambda must be positive");
  return fit_with_ridge(data, spec, static_cast<double>(data.n()) * lambda);
}

KrrModel fit_with_ridge(const Dataset& data, const KernelSpec& spec, double ridge) {
  data.validate();
  spec.validate();
  if (!(ridge > 0.0)) throw InputError("fit_with_ridge: ridge must be positive");
  KrrModel model;
  model.centers = data.X;
  model.coefficients = regularized_solve(gram(spec, data.X), data.y, ridge);
  model.spec = spec;
  model.lambda = ridge / static_cast<double>(data.n());
  return model;
}

Eigen::VectorXd predict(const KrrModel& model, const Eigen::Ref<const Eigen::MatrixXd>& Xnew) {
  if (Xnew.cols() != model.centers.cols())
    throw InputError("predict: query dimension " + std::to_string(Xnew.cols()) +
                     " does not match model dimension " + std::to_string(model.centers.cols()));
  return cross_gram(model.spec, Xnew, model.centers) * model.coefficients;
}

double median_bandwidth(const Eigen::Ref<const Eigen::MatrixXd>& X, std::int64_t probe_size,
                        std::uint64_t seed) {
  const std::int64_t n = X.rows();
  if (n < 2) throw InputError("median_bandwidth: need at least two rows");
  if (probe_size < 2) throw InputError("median_bandwidth: probe_size must be at least 2");

  Rng rng(seed);
  const std::int64_t m = std::min(probe_size, n);
  const std::vector<std::int64_t> rows = rng.sample_without_replacement(n, m);

  std::vector<double> distances;
  distances.reserve(static_cast<std::size_t>(m * (m - 1) / 2));
  for (std::int64_t a = 0; a < m; ++a)
    for (std::int64_t b = a + 1; b < m; ++b)
      distances.push_back((X.row(rows[static_cast<std::size_t>(a)]) -
                           X.row(rows[static_cast<std::size_t>(b)]))
                              .norm());

  std::sort(distances.begin(), distances.end());
  const std::size_t count = distances.size();
  double median = (count % 2 == 1)
                      ? distances[count / 2]
                      : 0.5 * (distances[count / 2 - 1] + distances[count / 2]);
  if (median > 0.0) return median;

  // ties at zero: take the smallest nonzero distance instead
  for (double dist : distances)
    if (dist > 0.0) return dist;
  throw DataError("median_bandwidth: all probed predictors are identical");
}

double select_lambda(const Dataset& data, const KernelSpec& spec, const std::vector<double>& grid,
                     std::int64_t global_n, double holdout_fraction, std::uint64_t seed) {
  data.validate();
  spec.validate();
  if (grid.empty()) throw InputError("select_lambda: empty grid");
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0))
    throw InputError("select_lambda: holdout_fraction must be in (0,1)");
  if (global_n < 1) throw InputError("select_lambda: global_n must be positive");

  std::vector<double> candidates = grid;
  for (double lambda : candidates)
    if (!(lambda > 0.0)) throw InputError("select_lambda: grid values must be positive");
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const std::int64_t n = data.n();
  const auto holdout_count = static_cast<std::int64_t>(
      std::floor(holdout_fraction * static_cast<double>(n)));
  if (holdout_count < 1) throw InputError("select_lambda: holdout contains no points");
  if (n - holdout_count < 1) throw InputError("select_lambda: no rows left to fit on");

  Rng rng(seed);
  const std::vector<std::int64_t> holdout_rows = rng.sample_without_replacement(n, holdout_count);
  std::vector<char> is_holdout(static_cast<std::size_t>(n), 0);
  for (std::int64_t row : holdout_rows) is_holdout[static_cast<std::size_t>(row)] = 1;
  std::vector<std::int64_t> train_rows;
  train_rows.reserve(static_cast<std::size_t>(n - holdout_count));
  for (std::int64_t row = 0; row < n; ++row)
    if (!is_holdout[static_cast<std::size_t>(row)]) train_rows.push_back(row);

  const Dataset train = data.subset(train_rows);
  const Dataset holdout = data.subset(holdout_rows);

  // The Gram and cross matrices do not depend on lambda; factor per candidate.
  const Eigen::MatrixXd K = gram(spec, train.X);
  const Eigen::MatrixXd Kcross = cross_gram(spec, holdout.X, train.X);

  double best_lambda = candidates.front();
  double best_error = std::numeric_limits<double>::infinity();
  for (double lambda : candidates) {
    const double ridge = static_cast<double>(global_n) * lambda;
    const Eigen::VectorXd beta = regularized_solve(K, train.y, ridge);
    const double error = (Kcross * beta - holdout.y).squaredNorm() /
                         static_cast<double>(holdout.n());
    // ascending iteration + <= keeps the larger lambda on ties
    if (error <= best_error) {
      best_error = error;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

std::vector<double> default_lambda_grid() {
  constexpr int count = 20;
  std::vector<double> grid(count);
  const double lo = std::log10(1e-8);
  const double hi = std::log10(1.0);
  for (int i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] =
        std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / (count - 1));
  return grid;
}

}  // namespace skewkrr
