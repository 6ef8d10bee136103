#include "skewkrr/synthdata.hpp"

#include <cmath>
#include <numbers>

#include "skewkrr/rng.hpp"

namespace skewkrr {

const char* to_string(SurfaceShape shape) {
  return shape == SurfaceShape::uni_peak ? "uni_peak" : "double_peak";
}

SurfaceShape shape_from_string(const std::string& name) {
  if (name == "uni_peak") return SurfaceShape::uni_peak;
  if (name == "double_peak") return SurfaceShape::double_peak;
  throw InputError("unknown shape: " + name + " (expected uni_peak or double_peak)");
}

void SynthSpec::validate() const {
  if (n < 1) throw InputError("SynthSpec: n must be positive");
  if (d < 1) throw InputError("SynthSpec: d must be positive");
  if (noise_sd < 0.0) throw InputError("SynthSpec: noise_sd must be nonnegative");
}

double peak(const Eigen::Ref<const Eigen::VectorXd>& x,
            const Eigen::Ref<const Eigen::VectorXd>& c) {
  if (x.size() != c.size()) throw InputError("peak: dimension mismatch");
  const double denom = (x - c).norm() + 0.05;
  return 0.1 / denom * std::sin(0.01 * std::numbers::pi / denom);
}

TrueFunction true_function(SurfaceShape shape, int d) {
  if (d < 1) throw InputError("true_function: d must be positive");
  const Eigen::VectorXd center1 = Eigen::VectorXd::Constant(d, 0.4);
  if (shape == SurfaceShape::uni_peak)
    return [center1](const Eigen::Ref<const Eigen::VectorXd>& x) { return peak(x, center1); };
  const Eigen::VectorXd center2 = Eigen::VectorXd::Constant(d, 0.7);
  return [center1, center2](const Eigen::Ref<const Eigen::VectorXd>& x) {
    return peak(x, center1) + 0.4 * peak(x, center2);
  };
}

SynthResult generate(const SynthSpec& spec) {
  spec.validate();
  SynthResult out;
  out.truth = true_function(spec.shape, spec.d);

  Rng x_rng(derive_seed(spec.seed, {stream::predictors}));
  Eigen::MatrixXd X(spec.n, spec.d);
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) = x_rng.uniform01();

  Rng noise_rng(derive_seed(spec.seed, {stream::noise}));
  Eigen::VectorXd y(spec.n);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y(i) = out.truth(X.row(i).transpose());
    if (spec.noise_sd > 0.0) y(i) += spec.noise_sd * noise_rng.normal();
  }

  out.data = make_dataset(std::move(X), std::move(y));
  return out;
}

}  // namespace skewkrr
