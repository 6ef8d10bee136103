#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "skewkrr/dataset.hpp"

namespace skewkrr {

enum class SurfaceShape { uni_peak, double_peak };

const char* to_string(SurfaceShape shape);
SurfaceShape shape_from_string(const std::string& name);

struct SynthSpec {
  SurfaceShape shape = SurfaceShape::uni_peak;
  std::int64_t n = 1000;
  int d = 1;
  double noise_sd = 0.1;
  std::uint64_t seed = 0;

  void validate() const;
};

// g(x,c) = 0.1/(|x-c| + 0.05) * sin(0.01 pi / (|x-c| + 0.05)),
// a sharp bounded peak at c (|g| <= 2); responses away from the peak pile up
// near zero, which is what makes the generated data skewed.
double peak(const Eigen::Ref<const Eigen::VectorXd>& x,
            const Eigen::Ref<const Eigen::VectorXd>& c);

using TrueFunction = std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>;

// uni_peak:    x -> g(x, 0.4 * 1_d)
// double_peak: x -> g(x, 0.4 * 1_d) + 0.4 * g(x, 0.7 * 1_d)
TrueFunction true_function(SurfaceShape shape, int d);

struct SynthResult {
  Dataset data;
  TrueFunction truth;  // the noiseless surface, for MSE evaluation
};

// X uniform on [0,1]^d, y = truth(x) + Normal(0, noise_sd^2). Predictors and
// noise draw from independent streams derived from the seed.
SynthResult generate(const SynthSpec& spec);

}  // namespace skewkrr
