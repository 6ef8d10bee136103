#include "skewkrr/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace skewkrr {

const char* to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::gaussian: return "gaussian";
    case KernelFamily::polynomial: return "polynomial";
    case KernelFamily::min: return "min";
  }
  return "unknown";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "gaussian") return KernelFamily::gaussian;
  if (name == "polynomial") return KernelFamily::polynomial;
  if (name == "min") return KernelFamily::min;
  throw InputError("unknown kernel family: " + name);
}

void KernelSpec::validate() const {
  if (family == KernelFamily::gaussian && !(sigma > 0.0))
    throw InputError("gaussian kernel requires sigma > 0");
  if (family == KernelFamily::polynomial && degree < 1)
    throw InputError("polynomial kernel requires degree >= 1");
}

double eval_kernel(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& z) {
  spec.validate();
  if (x.size() != z.size())
    throw InputError("eval_kernel: dimension mismatch (" + std::to_string(x.size()) + " vs " +
                     std::to_string(z.size()) + ")");
  switch (spec.family) {
    case KernelFamily::gaussian: {
      const double sq = (x - z).squaredNorm();
      return std::exp(-sq / (spec.sigma * spec.sigma));
    }
    case KernelFamily::polynomial:
      return std::pow(1.0 + x.dot(z), spec.degree);
    case KernelFamily::min:
      if (x.size() != 1)
        throw InputError("min kernel is defined for 1-dimensional predictors only");
      return 1.0 + std::min(x(0), z(0));
  }
  throw InputError("eval_kernel: unreachable kernel family");
}

Eigen::MatrixXd gram(const KernelSpec& spec, const Eigen::Ref<const Eigen::MatrixXd>& X) {
  const Eigen::Index n = X.rows();
  if (n < 1) throw InputError("gram: need at least one row");
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double value = eval_kernel(spec, X.row(i).transpose(), X.row(j).transpose());
      K(i, j) = value;
      K(j, i) = value;
    }
  }
  return K;
}

Eigen::MatrixXd cross_gram(const KernelSpec& spec, const Eigen::Ref<const Eigen::MatrixXd>& A,
                           const Eigen::Ref<const Eigen::MatrixXd>& B) {
  Eigen::MatrixXd K(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.rows(); ++j)
      K(i, j) = eval_kernel(spec, A.row(i).transpose(), B.row(j).transpose());
  return K;
}

Eigen::VectorXd regularized_solve(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                                  double ridge) {
  const Eigen::Index n = K.rows();
  if (K.cols() != n) throw InputError("regularized_solve: K must be square");
  if (y.size() != n) throw InputError("regularized_solve: y length must match K");
  if (!(ridge > 0.0)) throw InputError("regularized_solve: ridge must be positive");

  Eigen::MatrixXd system = K;
  system.diagonal().array() += ridge;

  Eigen::LLT<Eigen::MatrixXd> llt(system);
  if (llt.info() == Eigen::Success) return llt.solve(y);

  // Gram matrices from duplicated-then-deduplicated data can sit at the edge
  // of positive definiteness; nudge the diagonal and retry.
  double jitter = 1e-10 * K.trace() / static_cast<double>(n);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::MatrixXd retry = system;
    retry.diagonal().array() += jitter;
    llt.compute(retry);
    if (llt.info() == Eigen::Success) return llt.solve(y);
    jitter *= 2.0;
  }
  throw NumericalError("regularized_solve: Cholesky failed after jitter retries", jitter / 2.0);
}

double effective_dimension(const std::vector<double>& eigenvalues, double lambda) {
  if (!(lambda > 0.0)) throw InputError("effective_dimension: lambda must be positive");
  double total = 0.0;
  for (double mu : eigenvalues) {
    if (mu < 0.0) throw InputError("effective_dimension: negative eigenvalue");
    if (mu > 0.0) total += 1.0 / (1.0 + lambda / mu);
  }
  return total;
}

SpectrumDiagnostic spectrum_diagnostic(const Eigen::MatrixXd& K, double lambda) {
  const Eigen::Index n = K.rows();
  if (n < 1) throw InputError("spectrum_diagnostic: empty matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(K / static_cast<double>(n),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("spectrum_diagnostic: eigendecomposition failed", 0.0);

  SpectrumDiagnostic diag;
  diag.eigenvalues.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    // ascending from Eigen; store nonincreasing, clamp tiny negatives
    diag.eigenvalues[static_cast<std::size_t>(n - 1 - i)] =
        std::max(0.0, solver.eigenvalues()(i));
  }
  diag.d_lambda = effective_dimension(diag.eigenvalues, lambda);
  return diag;
}

}  // namespace skewkrr
