#include "skewkrr/dataset.hpp"

#include <cmath>
#include <string>

namespace skewkrr {

void Dataset::validate() const {
  if (X.rows() < 1) throw InputError("Dataset: need at least one row");
  if (y.size() != X.rows()) throw InputError("Dataset: response length must match predictor rows");
  if (origin_ids.size() != static_cast<std::size_t>(X.rows()))
    throw InputError("Dataset: origin_ids length must match predictor rows");
  if (!X.allFinite() || !y.allFinite()) throw InputError("Dataset: non-finite entries");
  for (std::int64_t id : origin_ids)
    if (id < 0) throw InputError("Dataset: negative origin id");
}

Dataset Dataset::subset(const std::vector<std::int64_t>& rows) const {
  Dataset out;
  out.X.resize(static_cast<Eigen::Index>(rows.size()), X.cols());
  out.y.resize(static_cast<Eigen::Index>(rows.size()));
  out.origin_ids.reserve(rows.size());
  Eigen::Index dest = 0;
  for (std::int64_t row : rows) {
    if (row < 0 || row >= n())
      throw InputError("Dataset::subset: row " + std::to_string(row) + " out of range");
    out.X.row(dest) = X.row(row);
    out.y(dest) = y(row);
    out.origin_ids.push_back(origin_ids[static_cast<std::size_t>(row)]);
    ++dest;
  }
  return out;
}

Dataset make_dataset(Eigen::MatrixXd X, Eigen::VectorXd y) {
  Dataset data;
  data.X = std::move(X);
  data.y = std::move(y);
  data.origin_ids.resize(static_cast<std::size_t>(data.X.rows()));
  for (std::size_t i = 0; i < data.origin_ids.size(); ++i)
    data.origin_ids[i] = static_cast<std::int64_t>(i);
  data.validate();
  return data;
}

}  // namespace skewkrr
