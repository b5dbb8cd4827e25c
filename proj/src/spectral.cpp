#include "dftlab/spectral.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/SVD>

namespace dftlab {

NormResult spectral_norm_dense(const DenseComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {0.0, NormMethod::dense_svd, 0, 0.0};
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return {svd.singularValues()(0), NormMethod::dense_svd, 0, 0.0};
}

NormResult spectral_norm_power(const DenseComplexMatrix& m, double tol) {
  if (tol <= 0) throw std::domain_error("spectral_norm: tol must be positive");
  if (m.rows() == 0 || m.cols() == 0) return {0.0, NormMethod::power_iteration, 0, 0.0};

  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(m.cols());
  v /= std::sqrt(static_cast<double>(m.cols()));
  Eigen::VectorXcd u = m * v;
  double sigma = u.norm();
  if (sigma == 0.0) {
    // All-ones start lies in the kernel; fall back to the first basis vector
    // (never zero for a DFT submatrix, whose columns have no zero entries).
    v = Eigen::VectorXcd::Zero(m.cols());
    v(0) = 1.0;
    u = m * v;
    sigma = u.norm();
    if (sigma == 0.0) return {0.0, NormMethod::power_iteration, 0, 0.0};
  }

  double residual = std::numeric_limits<double>::infinity();
  std::int64_t k = 0;
  while (k < kPowerMaxIterations) {
    ++k;
    Eigen::VectorXcd w = m.adjoint() * u;  // one round of M* M applied to v
    const double wn = w.norm();
    if (wn == 0.0) {
      residual = sigma;
      sigma = 0.0;
      break;
    }
    v = w / wn;
    u = m * v;
    const double next = u.norm();  // = sqrt(v* M*M v), the Rayleigh estimate
    residual = std::abs(next - sigma);
    sigma = next;
    if (residual <= tol) break;
  }
  // After the iteration cap this reports the last iterate with its residual
  // rather than failing; near-degenerate leading pairs converge slowly.
  return {sigma, NormMethod::power_iteration, k, residual};
}

NormResult spectral_norm(const DenseComplexMatrix& m, double tol) {
  if (tol <= 0) throw std::domain_error("spectral_norm: tol must be positive");
  const std::int64_t min_dim = std::min(m.rows(), m.cols());
  if (min_dim <= kDenseSvdMaxDim) return spectral_norm_dense(m);
  return spectral_norm_power(m, tol);
}

double frobenius_norm(const DenseComplexMatrix& m) { return m.norm(); }

double condition_number(double sigma) {
  // Measured norms of unitary submatrices can poke above 1 by a few ulps, so
  // a 1e-10 grace band is accepted and treated as exactly 1.
  if (sigma < 0.0 || sigma > 1.0 + 1e-10)
    throw std::domain_error("condition_number: sigma must lie in [0, 1]");
  if (sigma >= 1.0 - 1e-12) return std::numeric_limits<double>::infinity();
  return (1.0 + sigma) / (1.0 - sigma);
}

}  // namespace dftlab
