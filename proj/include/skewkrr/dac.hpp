#pragma once

#include <string>
#include <vector>

#include "skewkrr/krr.hpp"
#include "skewkrr/partition.hpp"

namespace skewkrr {

// k local models plus the plan that produced them; predictions are the
// uniform average over locals.
struct DacModel {
  std::vector<KrrModel> locals;
  PartitionPlan plan;  // node_assignments may be empty after deserialization
  KernelSpec spec;
  double lambda_global = 0.0;
  std::vector<std::string> feature_names;  // optional CSV provenance

  int k() const { return static_cast<int>(locals.size()); }
};

// One KRR fit per node. Every node solves with the global-scale ridge
// post_dedup_total * lambda_global rather than a per-node n*lambda. Node
// fits are independent and may run on up to `workers` threads; the fitted
// model is bitwise identical for any worker count. A failing node aborts
// the whole fit and reports its index.
DacModel fit_dac(const Dataset& data, const PartitionPlan& plan, const KernelSpec& spec,
                 double lambda_global, int workers = 1);

// (1/k) sum of local predictions, accumulated in node order 0..k-1.
Eigen::VectorXd predict_dac(const DacModel& model, const Eigen::Ref<const Eigen::MatrixXd>& Xnew);

// JSON round trip; the plan travels as seed and totals, not index lists.
// Reloaded models reproduce predictions exactly.
std::string model_to_json(const DacModel& model);
DacModel model_from_json(const std::string& text);

void save_model(const DacModel& model, const std::string& path);
DacModel load_model(const std::string& path);

}  // namespace skewkrr
