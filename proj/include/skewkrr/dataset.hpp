#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "skewkrr/errors.hpp"

namespace skewkrr {

// Predictors, responses, and the original-sample index each row came from.
// origin_ids survive subsetting and oversampling, so duplicate tracking keys
// on sample identity rather than floating-point value equality.
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  std::vector<std::int64_t> origin_ids;

  std::int64_t n() const { return X.rows(); }
  std::int64_t dim() const { return X.cols(); }

  void validate() const;

  Dataset subset(const std::vector<std::int64_t>& rows) const;
};

// origin_ids default to row order 0..n-1
Dataset make_dataset(Eigen::MatrixXd X, Eigen::VectorXd y);

}  // namespace skewkrr
