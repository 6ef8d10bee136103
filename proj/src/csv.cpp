#include "skewkrr/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace skewkrr {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

double parse_cell(const std::string& raw, std::int64_t data_row, const std::string& column) {
  const std::string cell = trim(raw);
  double value = 0.0;
  const auto* begin = cell.data();
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || cell.empty() || !std::isfinite(value))
    throw DataError("csv: cannot parse '" + cell + "' at data row " + std::to_string(data_row) +
                    ", column '" + column + "'");
  return value;
}

std::vector<std::string> read_header(std::ifstream& in, const std::string& path) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("csv: empty file " + path);
  auto fields = split_line(line);
  for (auto& field : fields) field = trim(field);
  return fields;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name,
                         const std::string& path) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw DataError("csv: column '" + name + "' not found in " + path);
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::vector<std::string> csv_columns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot open " + path);
  return read_header(in, path);
}

Dataset load_csv(const std::string& path, const std::string& response_column,
                 const std::vector<std::string>& feature_columns) {
  if (feature_columns.empty()) throw InputError("load_csv: no feature columns given");
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot open " + path);

  const auto header = read_header(in, path);
  const std::size_t y_col = column_index(header, response_column, path);
  std::vector<std::size_t> x_cols;
  x_cols.reserve(feature_columns.size());
  for (const auto& name : feature_columns) x_cols.push_back(column_index(header, name, path));

  std::vector<std::vector<double>> rows;
  std::string line;
  std::int64_t data_row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++data_row;
    const auto fields = split_line(line);
    if (fields.size() != header.size())
      throw DataError("csv: data row " + std::to_string(data_row) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(header.size()));
    std::vector<double> parsed;
    parsed.reserve(x_cols.size() + 1);
    for (std::size_t f = 0; f < x_cols.size(); ++f)
      parsed.push_back(parse_cell(fields[x_cols[f]], data_row, feature_columns[f]));
    parsed.push_back(parse_cell(fields[y_col], data_row, response_column));
    rows.push_back(std::move(parsed));
  }
  if (rows.empty()) throw DataError("csv: no data rows in " + path);

  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto d = static_cast<Eigen::Index>(feature_columns.size());
  Eigen::MatrixXd X(n, d);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j)
      X(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    y(i) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
  }
  return make_dataset(std::move(X), std::move(y));
}

Eigen::MatrixXd load_csv_features(const std::string& path,
                                  const std::vector<std::string>& feature_columns) {
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot open " + path);

  const auto header = read_header(in, path);
  const auto names = feature_columns.empty() ? header : feature_columns;
  std::vector<std::size_t> x_cols;
  x_cols.reserve(names.size());
  for (const auto& name : names) x_cols.push_back(column_index(header, name, path));

  std::vector<std::vector<double>> rows;
  std::string line;
  std::int64_t data_row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++data_row;
    const auto fields = split_line(line);
    if (fields.size() != header.size())
      throw DataError("csv: data row " + std::to_string(data_row) + " has " +
                      std::to_string(fields.size()) + " fields, header has " +
                      std::to_string(header.size()));
    std::vector<double> parsed;
    parsed.reserve(x_cols.size());
    for (std::size_t f = 0; f < x_cols.size(); ++f)
      parsed.push_back(parse_cell(fields[x_cols[f]], data_row, names[f]));
    rows.push_back(std::move(parsed));
  }
  if (rows.empty()) throw DataError("csv: no data rows in " + path);

  Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(names.size()));
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j)
      X(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return X;
}

void write_dataset_csv(const Dataset& data, const std::vector<std::string>& feature_columns,
                       const std::string& response_column, const std::string& path) {
  if (static_cast<Eigen::Index>(feature_columns.size()) != data.dim())
    throw InputError("write_dataset_csv: feature name count must match dimension");
  std::ofstream out(path);
  if (!out) throw DataError("csv: cannot open " + path + " for writing");
  for (const auto& name : feature_columns) out << name << ',';
  out << response_column << '\n';
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    for (Eigen::Index j = 0; j < data.dim(); ++j) out << format_double(data.X(i, j)) << ',';
    out << format_double(data.y(i)) << '\n';
  }
  if (!out) throw DataError("csv: write failed for " + path);
}

void write_predictions_csv(const Eigen::VectorXd& predictions, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("csv: cannot open " + path + " for writing");
  out << "prediction\n";
  for (Eigen::Index i = 0; i < predictions.size(); ++i)
    out << format_double(predictions(i)) << '\n';
  if (!out) throw DataError("csv: write failed for " + path);
}

}  // namespace skewkrr
