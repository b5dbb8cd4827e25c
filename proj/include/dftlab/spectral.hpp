#pragma once

#include <cstdint>

#include "dftlab/matrix_core.hpp"

namespace dftlab {

enum class NormMethod { dense_svd, power_iteration };

struct NormResult {
  double value = 0.0;
  NormMethod method = NormMethod::dense_svd;
  std::int64_t iterations = 0;  // 0 for the dense path
  double residual = 0.0;        // last singular-value increment (power path)
};

inline constexpr double kDefaultNormTol = 1e-10;

// Min-dimension cutoff for the dense SVD path.  Measured on this hardware:
// divide-and-conquer SVD beats power iteration at tol 1e-10 from roughly
// min-dim 230 up (the iteration count blows up as the top singular pair
// degenerates near delta = 1/2), and stays under ~0.25 s at 512.
inline constexpr std::int64_t kDenseSvdMaxDim = 512;

inline constexpr std::int64_t kPowerMaxIterations = 10000;

/// Largest singular value.  Dispatches on min(rows, cols): dense SVD up to
/// kDenseSvdMaxDim, power iteration on M* M above it.  Empty matrices have
/// norm 0.
NormResult spectral_norm(const DenseComplexMatrix& m, double tol = kDefaultNormTol);

/// Forced dense path (divide-and-conquer SVD), any size.
NormResult spectral_norm_dense(const DenseComplexMatrix& m);

/// Forced power-iteration path.  Starts from the all-ones vector (falls back
/// to e_1 if that lies in the kernel), iterates the normal matrix, and stops
/// when successive singular-value estimates differ by at most tol or after
/// kPowerMaxIterations rounds.
NormResult spectral_norm_power(const DenseComplexMatrix& m, double tol = kDefaultNormTol);

double frobenius_norm(const DenseComplexMatrix& m);

/// Condition number (1 + sigma) / (1 - sigma) of the two-block Gram matrix
/// whose off-diagonal norm is sigma.  Returns +infinity once sigma reaches
/// 1 - 1e-12, where the dictionary is numerically dependent.
double condition_number(double sigma);

}  // namespace dftlab
