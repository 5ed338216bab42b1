#pragma once

#include <cstddef>
#include <vector>

#include "hardy/matrix.hpp"
#include "hardy/special.hpp"

namespace hardy {

/// Eigenvalues of a real symmetric matrix, ascending, together with a
/// residual diagnostic from a sampled verification pass.
struct Spectrum {
  std::vector<double> values;
  double residual_bound = 0.0;

  double trace() const;
  double sum_squares() const;
  double max_abs() const;
  /// Number of eigenvalues strictly greater than lambda.
  std::size_t count_above(double lambda) const;
};

/// All eigenvalues of a symmetric matrix: Householder tridiagonalization
/// followed by implicit-shift QL. Deterministic; input symmetry is checked
/// against 1e-12 * max|entry|.
Spectrum eigh(const Matrix& a);

/// Singular values, descending. Symmetric input goes through |eigh|;
/// rectangular input through the smaller-side Gram matrix. Values below
/// 1e-12 * sigma_max are clamped to zero.
std::vector<double> singular_values(const Matrix& a);

/// Sum of singular values.
double trace_norm(const Matrix& a);

/// Largest singular value.
double operator_norm(const Matrix& a);

}  // namespace hardy
