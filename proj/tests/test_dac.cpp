#include <algorithm>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "skewkrr/dac.hpp"
#include "skewkrr/krr.hpp"
#include "skewkrr/rng.hpp"

using namespace skewkrr;

namespace {

Dataset random_dataset(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd X(n, d);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) X(i, j) = rng.uniform01();
    y(i) = rng.normal();
  }
  return make_dataset(std::move(X), std::move(y));
}

Eigen::MatrixXd random_grid(Eigen::Index q, Eigen::Index d, std::uint64_t seed) {
  return random_dataset(q, d, seed).X;
}

}  // namespace

TEST_SUITE("dac") {
  TEST_CASE("one-node fit reproduces the full fit bitwise") {
    const Dataset data = random_dataset(40, 2, 51);
    KernelSpec spec;
    spec.sigma = 0.5;
    const double lambda = 0.01;
    const DacModel dac = fit_dac(data, classical_plan(data.n(), 1, 3), spec, lambda);
    const KrrModel full = fit(data, spec, lambda);
    REQUIRE(dac.k() == 1);
    REQUIRE(dac.locals[0].coefficients.size() == full.coefficients.size());
    for (Eigen::Index i = 0; i < full.coefficients.size(); ++i)
      CHECK(dac.locals[0].coefficients(i) == full.coefficients(i));
  }

  TEST_CASE("zero response zeroes every local model") {
    Dataset data = random_dataset(30, 1, 52);
    data.y.setZero();
    KernelSpec spec;
    const DacModel dac = fit_dac(data, classical_plan(data.n(), 3, 4), spec, 0.1);
    for (const auto& local : dac.locals)
      CHECK(local.coefficients.cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("locals match an independent per-node refit") {
    const Dataset data = random_dataset(30, 2, 53);
    KernelSpec spec;
    spec.sigma = 0.4;
    const double lambda = 0.05;
    const PartitionPlan plan = classical_plan(data.n(), 3, 5);
    const DacModel dac = fit_dac(data, plan, spec, lambda);
    for (int node = 0; node < 3; ++node) {
      const Dataset rows = data.subset(plan.node_assignments[static_cast<std::size_t>(node)]);
      // same global-scale ridge the engine applies: post_dedup_total * lambda
      const KrrModel refit = fit_with_ridge(
          rows, spec, static_cast<double>(plan.post_dedup_total) * lambda);
      REQUIRE(refit.coefficients.size() ==
              dac.locals[static_cast<std::size_t>(node)].coefficients.size());
      for (Eigen::Index i = 0; i < refit.coefficients.size(); ++i)
        CHECK(dac.locals[static_cast<std::size_t>(node)].coefficients(i) ==
              doctest::Approx(refit.coefficients(i)).epsilon(1e-12));
    }
  }

  TEST_CASE("single-node prediction equals the local prediction") {
    const Dataset data = random_dataset(20, 1, 54);
    KernelSpec spec;
    const DacModel dac = fit_dac(data, classical_plan(data.n(), 1, 6), spec, 0.1);
    const Eigen::MatrixXd grid = random_grid(7, 1, 55);
    const Eigen::VectorXd combined = predict_dac(dac, grid);
    const Eigen::VectorXd local = predict(dac.locals[0], grid);
    for (Eigen::Index i = 0; i < combined.size(); ++i) CHECK(combined(i) == local(i));
  }

  TEST_CASE("prediction is the plain mean of the local predictions") {
    const Dataset data = random_dataset(48, 2, 56);
    KernelSpec spec;
    spec.sigma = 0.6;
    const DacModel dac = fit_dac(data, classical_plan(data.n(), 4, 7), spec, 0.02);
    const Eigen::MatrixXd grid = random_grid(7, 2, 57);
    Eigen::VectorXd manual = Eigen::VectorXd::Zero(grid.rows());
    for (const auto& local : dac.locals) manual += predict(local, grid);
    manual /= 4.0;
    const Eigen::VectorXd combined = predict_dac(dac, grid);
    for (Eigen::Index i = 0; i < combined.size(); ++i)
      CHECK(combined(i) == doctest::Approx(manual(i)).epsilon(1e-12));
  }

  TEST_CASE("node order barely moves the averaged prediction") {
    const Dataset data = random_dataset(60, 1, 58);
    KernelSpec spec;
    spec.sigma = 0.5;
    DacModel dac = fit_dac(data, classical_plan(data.n(), 5, 8), spec, 0.01);
    const Eigen::MatrixXd grid = random_grid(11, 1, 59);
    const Eigen::VectorXd before = predict_dac(dac, grid);
    std::reverse(dac.locals.begin(), dac.locals.end());
    const Eigen::VectorXd after = predict_dac(dac, grid);
    CHECK((before - after).cwiseAbs().maxCoeff() <= 1e-10);
  }

  TEST_CASE("worker count never changes the fitted model") {
    const Dataset data = random_dataset(90, 2, 60);
    KernelSpec spec;
    spec.sigma = 0.5;
    const SliceSpec slices = make_slices(data.y, SlicingChoice{SlicingRule::sturges, 3});
    const PartitionPlan plan = oversample_plan(data.y, slices, 1.0, 6, 61);
    const DacModel serial = fit_dac(data, plan, spec, 0.01, 1);
    const DacModel threaded = fit_dac(data, plan, spec, 0.01, 4);
    REQUIRE(serial.k() == threaded.k());
    for (std::size_t node = 0; node < static_cast<std::size_t>(serial.k()); ++node)
      for (Eigen::Index i = 0; i < serial.locals[node].coefficients.size(); ++i)
        CHECK(serial.locals[node].coefficients(i) == threaded.locals[node].coefficients(i));
  }

  TEST_CASE("JSON round-trip preserves predictions") {
    const Dataset data = random_dataset(35, 2, 62);
    KernelSpec spec;
    spec.sigma = 0.45;
    DacModel dac = fit_dac(data, classical_plan(data.n(), 3, 9), spec, 0.03);
    dac.feature_names = {"a", "b"};
    const DacModel back = model_from_json(model_to_json(dac));
    CHECK(back.feature_names == dac.feature_names);
    CHECK(back.lambda_global == dac.lambda_global);
    const Eigen::MatrixXd grid = random_grid(9, 2, 63);
    const Eigen::VectorXd before = predict_dac(dac, grid);
    const Eigen::VectorXd after = predict_dac(back, grid);
    for (Eigen::Index i = 0; i < before.size(); ++i)
      CHECK(after(i) == doctest::Approx(before(i)).epsilon(1e-12));
  }

  TEST_CASE("file round-trip through save and load") {
    namespace fs = std::filesystem;
    const Dataset data = random_dataset(25, 1, 64);
    KernelSpec spec;
    const DacModel dac = fit_dac(data, classical_plan(data.n(), 2, 10), spec, 0.05);
    const fs::path path = fs::temp_directory_path() / "skewkrr_test_model.json";
    save_model(dac, path.string());
    const DacModel back = load_model(path.string());
    fs::remove(path);
    const Eigen::MatrixXd grid = random_grid(6, 1, 65);
    CHECK((predict_dac(back, grid) - predict_dac(dac, grid)).cwiseAbs().maxCoeff() <= 1e-12);
  }
}
