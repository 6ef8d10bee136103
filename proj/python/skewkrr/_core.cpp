// Python bindings for the main operations: data generation, full and
// divide-and-conquer fitting, prediction, slicing/plan inspection, and the
// spectrum diagnostic. Mirrors the CLI's seed-stream conventions so a fit
// from Python with the same seed matches `skewkrr fit`.

#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skewkrr/dac.hpp"
#include "skewkrr/harness.hpp"
#include "skewkrr/kernel.hpp"
#include "skewkrr/krr.hpp"
#include "skewkrr/partition.hpp"
#include "skewkrr/rng.hpp"
#include "skewkrr/synthdata.hpp"

namespace py = pybind11;
using namespace skewkrr;

namespace {

KernelSpec resolve_kernel(const Dataset& data, const std::string& family, int degree,
                          std::optional<double> sigma, std::uint64_t seed) {
  KernelSpec spec;
  spec.family = kernel_family_from_string(family);
  spec.degree = degree;
  if (spec.family == KernelFamily::gaussian)
    spec.sigma = sigma ? *sigma
                       : median_bandwidth(data.X, 1000, derive_seed(seed, {stream::bandwidth}));
  spec.validate();
  return spec;
}

double resolve_lambda(const Dataset& data, const KernelSpec& spec, std::optional<double> lambda,
                      std::uint64_t seed) {
  if (lambda) return *lambda;
  Dataset probe = data;
  if (data.n() > 4000) {
    Rng rng(derive_seed(seed, {stream::lambda_search, 1}));
    probe = data.subset(rng.sample_without_replacement(data.n(), 4000));
  }
  return select_lambda(probe, spec, default_lambda_grid(), data.n(), 0.2,
                       derive_seed(seed, {stream::lambda_search}));
}

DacModel fit_any(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const std::string& estimator,
                 int nodes, const std::string& slicing, double tau, const std::string& kernel,
                 int degree, std::optional<double> sigma, std::optional<double> lambda,
                 std::uint64_t seed, int workers) {
  const Dataset data = make_dataset(X, y);
  const KernelSpec spec = resolve_kernel(data, kernel, degree, sigma, seed);
  const double lambda_global = resolve_lambda(data, spec, lambda, seed);
  const auto which = estimator_from_string(estimator);
  const std::uint64_t plan_seed = derive_seed(seed, {stream::partition});

  PartitionPlan plan;
  if (which == Estimator::full) {
    plan = classical_plan(data.n(), 1, plan_seed);
  } else if (which == Estimator::classical_dac) {
    plan = classical_plan(data.n(), nodes, plan_seed);
  } else {
    const SliceSpec slices = make_slices(data.y, parse_slicing(slicing));
    plan = oversample_plan(data.y, slices, tau, nodes, plan_seed);
  }
  return fit_dac(data, plan, spec, lambda_global, workers);
}

py::dict plan_summary(const PartitionPlan& plan) {
  py::dict out;
  out["k"] = plan.k;
  out["seed"] = plan.seed;
  out["pre_dedup_total"] = plan.pre_dedup_total;
  out["post_dedup_total"] = plan.post_dedup_total;
  std::vector<std::int64_t> sizes;
  sizes.reserve(plan.node_assignments.size());
  for (const auto& node : plan.node_assignments)
    sizes.push_back(static_cast<std::int64_t>(node.size()));
  out["node_sizes"] = sizes;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, module) {
  module.doc() = "Kernel ridge regression with response-oversampled divide and conquer";

  py::class_<DacModel>(module, "Model")
      .def_property_readonly("k", &DacModel::k)
      .def_property_readonly("lambda_", [](const DacModel& m) { return m.lambda_global; })
      .def_property_readonly("kernel",
                             [](const DacModel& m) { return std::string(to_string(m.spec.family)); })
      .def_property_readonly("sigma", [](const DacModel& m) { return m.spec.sigma; })
      .def_property_readonly("feature_names",
                             [](const DacModel& m) { return m.feature_names; })
      .def_property_readonly("plan", [](const DacModel& m) { return plan_summary(m.plan); })
      .def("predict",
           [](const DacModel& m, const Eigen::MatrixXd& Xnew) { return predict_dac(m, Xnew); },
           py::arg("X"))
      .def("to_json", [](const DacModel& m) { return model_to_json(m); })
      .def("save", [](const DacModel& m, const std::string& path) { save_model(m, path); },
           py::arg("path"));

  module.def(
      "generate",
      [](const std::string& shape, std::int64_t n, int d, double noise_sd, std::uint64_t seed) {
        SynthSpec spec;
        spec.shape = shape_from_string(shape);
        spec.n = n;
        spec.d = d;
        spec.noise_sd = noise_sd;
        spec.seed = seed;
        const SynthResult result = generate(spec);
        return py::make_tuple(result.data.X, result.data.y);
      },
      py::arg("shape") = "uni_peak", py::arg("n") = 1000, py::arg("d") = 1,
      py::arg("noise_sd") = 0.1, py::arg("seed") = 0,
      "Draw (X, y) from the synthetic peak surfaces with seeded noise.");

  module.def(
      "truth",
      [](const std::string& shape, const Eigen::MatrixXd& X) {
        const TrueFunction eta = true_function(shape_from_string(shape), static_cast<int>(X.cols()));
        Eigen::VectorXd values(X.rows());
        for (Eigen::Index i = 0; i < X.rows(); ++i) values(i) = eta(X.row(i).transpose());
        return values;
      },
      py::arg("shape"), py::arg("X"), "Noiseless surface values at the given rows.");

  module.def("fit", &fit_any, py::arg("X"), py::arg("y"), py::arg("estimator") = "odac",
             py::arg("nodes") = 20, py::arg("slicing") = "scott", py::arg("tau") = 1.0,
             py::arg("kernel") = "gaussian", py::arg("degree") = 2,
             py::arg("sigma") = py::none(), py::arg("lambda_") = py::none(), py::arg("seed") = 0,
             py::arg("workers") = 1,
             "Fit full KRR ('full'), classical ('dac'), or oversampled ('odac').");

  module.def("load", &load_model, py::arg("path"), "Load a model saved with Model.save().");
  module.def(
      "from_json", [](const std::string& text) { return model_from_json(text); }, py::arg("text"));

  module.def(
      "median_bandwidth",
      [](const Eigen::MatrixXd& X, std::int64_t probe, std::uint64_t seed) {
        return median_bandwidth(X, probe, seed);
      },
      py::arg("X"), py::arg("probe") = 1000, py::arg("seed") = 0);

  module.def(
      "slices",
      [](const Eigen::VectorXd& y, const std::string& rule) {
        const SliceSpec spec = make_slices(y, parse_slicing(rule));
        py::dict out;
        out["boundaries"] = spec.boundaries;
        out["counts"] = spec.counts;
        return out;
      },
      py::arg("y"), py::arg("rule") = "scott",
      "Equal-width response slices: boundaries and per-slice counts.");

  module.def(
      "oversample_plan",
      [](const Eigen::VectorXd& y, const std::string& rule, double tau, int nodes,
         std::uint64_t seed) {
        const SliceSpec slices = make_slices(y, parse_slicing(rule));
        return plan_summary(oversample_plan(y, slices, tau, nodes, seed));
      },
      py::arg("y"), py::arg("rule") = "scott", py::arg("tau") = 1.0, py::arg("nodes") = 20,
      py::arg("seed") = 0, "Plan totals and node sizes without fitting anything.");

  module.def(
      "effective_dimension",
      [](const std::vector<double>& eigenvalues, double lambda) {
        return effective_dimension(eigenvalues, lambda);
      },
      py::arg("eigenvalues"), py::arg("lambda_"));

  module.def(
      "spectrum",
      [](const Eigen::MatrixXd& X, const std::string& kernel, double sigma, int degree,
         double lambda) {
        KernelSpec spec;
        spec.family = kernel_family_from_string(kernel);
        spec.sigma = sigma;
        spec.degree = degree;
        const SpectrumDiagnostic diag = spectrum_diagnostic(gram(spec, X), lambda);
        py::dict out;
        out["eigenvalues"] = diag.eigenvalues;
        out["d_lambda"] = diag.d_lambda;
        return out;
      },
      py::arg("X"), py::arg("kernel") = "gaussian", py::arg("sigma") = 1.0, py::arg("degree") = 2,
      py::arg("lambda_") = 1e-3, "Empirical kernel spectrum and d_lambda at the given ridge.");

  module.def(
      "mse",
      [](const Eigen::VectorXd& predictions, const Eigen::VectorXd& truth) {
        return mse_against_truth(predictions, truth);
      },
      py::arg("predictions"), py::arg("truth"));

  module.attr("__version__") = "0.1.0";
}
