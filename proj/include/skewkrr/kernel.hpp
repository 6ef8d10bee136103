#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "skewkrr/errors.hpp"

namespace skewkrr {

enum class KernelFamily { gaussian, polynomial, min };

const char* to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

struct KernelSpec {
  KernelFamily family = KernelFamily::gaussian;
  double sigma = 1.0;  // gaussian scale, same units as predictor distances
  int degree = 2;      // polynomial order

  void validate() const;
};

// K(x, z):
//   gaussian    exp(-|x-z|^2 / sigma^2)
//   polynomial  (1 + x.z)^degree
//   min         1 + min(x, z), scalars only
double eval_kernel(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& z);

// Dense symmetric kernel matrix over the rows of X. The upper triangle is
// computed once and mirrored, so entries(i,j) == entries(j,i) exactly.
Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::Ref<const Eigen::MatrixXd>& X);

// Rectangular kernel matrix: entry (i,j) = K(A row i, B row j).
Eigen::MatrixXd cross_gram(const KernelSpec& spec, const Eigen::Ref<const Eigen::MatrixXd>& A,
                           const Eigen::Ref<const Eigen::MatrixXd>& B);

// Solves (K + ridge I) beta = y via Cholesky. If the factorization fails,
// retries with a diagonal jitter of 1e-10 tr(K)/n, doubled up to 8 times;
// throws NumericalError carrying the last jitter tried.
Eigen::VectorXd regularized_solve(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                                  double ridge);

// d_lambda = sum_j (1 + lambda/mu_j)^-1; zero eigenvalues contribute 0.
double effective_dimension(const std::vector<double>& eigenvalues, double lambda);

struct SpectrumDiagnostic {
  std::vector<double> eigenvalues;  // eigenvalues of K/n, nonincreasing, clamped at 0
  double d_lambda = 0.0;
};

// Empirical spectrum of K/n standing in for the population kernel eigenvalues.
SpectrumDiagnostic spectrum_diagnostic(const Eigen::MatrixXd& K, double lambda);

}  // namespace skewkrr
