#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hardy/matrix.hpp"
#include "hardy/symbol.hpp"

namespace hardy {

/// Dense symmetric kernel matrix with its provenance tag.
struct KernelMatrix {
  SymbolId symbol;
  std::size_t n = 0;
  Matrix entries;
};

/// Symmetrized Nystrom discretization of the Wiener-Hopf operator with
/// kernel hat(u - v) on (0, log n_param).
struct NystromOperator {
  SymbolId symbol;
  double n_param = 0.0;
  double length = 0.0;  // log(n_param)
  std::vector<double> grid;
  std::vector<double> weights;
  Matrix entries;  // sqrt(w_i w_j) hat(u_i - u_j)
  double quad_error_bound = 0.0;
  bool bandwidth_warning = false;
};

/// Dimension cap for dense matrices (default 20000); the environment
/// variable HARDY_SPECTRA_MAX_N overrides it.
std::size_t max_matrix_dim();

/// K_N: entries hat(log((i+1)/(j+1))) / sqrt((i+1)(j+1)), exactly symmetric.
KernelMatrix build_K(const Symbol& sym, std::size_t n);

/// Default node count for build_T: max(512, ceil(64 log n_param)).
std::size_t default_t_nodes(double n_param);

/// Uniform-trapezoid Nystrom matrix on [0, log n_param]; n_param >= 2,
/// m_nodes >= 2. The result carries a trapezoid error estimate and a warning
/// flag when the grid step exceeds a quarter of the kernel bandwidth.
NystromOperator build_T(const Symbol& sym, double n_param, std::size_t m_nodes);

/// The diagonal comparison matrix diag(hat_zero / j), j = 1..n.
KernelMatrix build_diagonal_limit(const Symbol& sym, std::size_t n);

/// Pochhammer comparison matrix b(n,m) = sqrt((n)_{a-1} (m)_{a-1}) / (n+m-1)_a
/// with rising factorials evaluated in log space; integer alpha >= 1.
KernelMatrix build_pochhammer(std::int64_t alpha, std::size_t n);

/// sum_{n,m} k(n,m) a_n a_m.
double quadratic_form(const KernelMatrix& mat, const std::vector<double>& a);

/// (1/2pi) integral of phi(t) |sum_n a_n n^{-1/2-it}|^2 dt by direct
/// quadrature; independent cross-check of quadratic_form.
double dirichlet_form_oracle(const Symbol& sym, const std::vector<double>& a, double tol);

/// Binary dump: magic "HKM1", little-endian u64 dimension, then n*n
/// float64 entries row-major.
void write_matrix_dump(const std::string& path, const Matrix& m);
Matrix read_matrix_dump(const std::string& path);

}  // namespace hardy
