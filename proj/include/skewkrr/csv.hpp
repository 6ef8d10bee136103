#pragma once

#include <string>
#include <vector>

#include "skewkrr/dataset.hpp"

namespace skewkrr {

// Comma-separated, header row required, '.' decimal point, no quoting of
// numeric fields. Parse failures name the 1-based data row and the column.

std::vector<std::string> csv_columns(const std::string& path);

// Shortest decimal string that round-trips back to the same double.
std::string format_double(double value);

Dataset load_csv(const std::string& path, const std::string& response_column,
                 const std::vector<std::string>& feature_columns);

// Feature matrix only, for prediction inputs that carry no response. An
// empty name list takes every column in file order.
Eigen::MatrixXd load_csv_features(const std::string& path,
                                  const std::vector<std::string>& feature_columns);

// Values are written in shortest round-trip form, so export -> load is exact.
void write_dataset_csv(const Dataset& data, const std::vector<std::string>& feature_columns,
                       const std::string& response_column, const std::string& path);

void write_predictions_csv(const Eigen::VectorXd& predictions, const std::string& path);

}  // namespace skewkrr
