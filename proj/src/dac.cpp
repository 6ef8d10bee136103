#include "skewkrr/dac.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "parallel.hpp"

namespace skewkrr {

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r > 0 ? static_cast<Eigen::Index>(rows.at(0).size()) : 0;
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j)
      m(i, j) = rows.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)).get<double>();
  return m;
}

}  // namespace

DacModel fit_dac(const Dataset& data, const PartitionPlan& plan, const KernelSpec& spec,
                 double lambda_global, int workers) {
  data.validate();
  spec.validate();
  if (!(lambda_global > 0.0)) throw InputError("fit_dac: lambda_global must be positive");
  plan.validate(data.n());

  DacModel model;
  model.plan = plan;
  model.spec = spec;
  model.lambda_global = lambda_global;
  model.locals.resize(plan.node_assignments.size());

  // a failing node aborts everything; a partial average would be silently biased
  const double ridge = static_cast<double>(plan.post_dedup_total) * lambda_global;
  detail::parallel_for(plan.node_assignments.size(), workers, [&](std::size_t node) {
    try {
      const Dataset local = data.subset(plan.node_assignments[node]);
      model.locals[node] = fit_with_ridge(local, spec, ridge);
    } catch (const std::exception& err) {
      throw NumericalError("fit_dac: node " + std::to_string(node) + " failed: " + err.what(),
                           0.0);
    }
  });
  return model;
}

Eigen::VectorXd predict_dac(const DacModel& model, const Eigen::Ref<const Eigen::MatrixXd>& Xnew) {
  if (model.locals.empty()) throw InputError("predict_dac: model has no local fits");
  Eigen::VectorXd total = Eigen::VectorXd::Zero(Xnew.rows());
  for (const KrrModel& local : model.locals) total += predict(local, Xnew);
  return total / static_cast<double>(model.locals.size());
}

std::string model_to_json(const DacModel& model) {
  nlohmann::json doc;
  doc["kernel"] = {{"family", to_string(model.spec.family)},
                   {"sigma", model.spec.sigma},
                   {"degree", model.spec.degree}};
  doc["lambda_global"] = model.lambda_global;
  doc["plan"] = {{"k", model.plan.k},
                 {"seed", model.plan.seed},
                 {"pre_dedup_total", model.plan.pre_dedup_total},
                 {"post_dedup_total", model.plan.post_dedup_total}};
  if (!model.feature_names.empty()) doc["feature_columns"] = model.feature_names;
  nlohmann::json locals = nlohmann::json::array();
  for (const KrrModel& local : model.locals) {
    nlohmann::json entry;
    entry["lambda"] = local.lambda;
    entry["centers"] = matrix_to_json(local.centers);
    entry["coefficients"] = std::vector<double>(
        local.coefficients.data(), local.coefficients.data() + local.coefficients.size());
    locals.push_back(std::move(entry));
  }
  doc["locals"] = std::move(locals);
  return doc.dump(2);
}

DacModel model_from_json(const std::string& text) {
  DacModel model;
  try {
    const auto doc = nlohmann::json::parse(text);
    const auto& kernel = doc.at("kernel");
    model.spec.family = kernel_family_from_string(kernel.at("family").get<std::string>());
    model.spec.sigma = kernel.at("sigma").get<double>();
    model.spec.degree = kernel.at("degree").get<int>();
    model.lambda_global = doc.at("lambda_global").get<double>();
    const auto& plan = doc.at("plan");
    model.plan.k = plan.at("k").get<int>();
    model.plan.seed = plan.at("seed").get<std::uint64_t>();
    model.plan.pre_dedup_total = plan.at("pre_dedup_total").get<std::int64_t>();
    model.plan.post_dedup_total = plan.at("post_dedup_total").get<std::int64_t>();
    if (doc.contains("feature_columns"))
      model.feature_names = doc.at("feature_columns").get<std::vector<std::string>>();
    for (const auto& entry : doc.at("locals")) {
      KrrModel local;
      local.spec = model.spec;
      local.lambda = entry.at("lambda").get<double>();
      local.centers = matrix_from_json(entry.at("centers"));
      const auto coef = entry.at("coefficients").get<std::vector<double>>();
      local.coefficients =
          Eigen::Map<const Eigen::VectorXd>(coef.data(), static_cast<Eigen::Index>(coef.size()));
      model.locals.push_back(std::move(local));
    }
  } catch (const nlohmann::json::exception& err) {
    throw DataError(std::string("model_from_json: ") + err.what());
  }
  return model;
}

void save_model(const DacModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("save_model: cannot open " + path);
  out << model_to_json(model) << '\n';
  if (!out) throw DataError("save_model: write failed for " + path);
}

DacModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("load_model: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace skewkrr
