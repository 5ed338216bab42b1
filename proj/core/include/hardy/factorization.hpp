#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "hardy/matrix.hpp"
#include "hardy/symbol.hpp"

namespace hardy {

/// Discrete (zeta) vs continuous (eta) side of the Gram comparison.
enum class GramMode { kZeta, kEta };

/// Partial zeta sum at 1 + i tau: sum_{k<=n} k^{-1} e^{-i tau log k}.
std::complex<double> zeta_n(double tau, std::size_t n);

/// (1 - n^{-i tau}) / (i tau); log n at tau = 0, series branch for small tau.
/// Identically zero for n = 1.
std::complex<double> eta_n(double tau, std::size_t n);

/// Quadrature discretization of a Gram operator with kernel
/// (1/2pi) sqrt(phi(t) phi(t')) F_n(1 + i(t - t')).
///
/// The grid is symmetric about 0 and the Hermitian kernel is folded into the
/// even/odd real basis {(e_t + e_{-t})/sqrt2, i(e_t - e_{-t})/sqrt2}, so
/// `matrix` is real symmetric with exactly the eigenvalues of the complex
/// Hermitian discretization (imaginary parts are carried in the cross block,
/// not discarded).
struct GramDiscretization {
  SymbolId symbol;
  GramMode mode = GramMode::kZeta;
  std::size_t n_param = 0;
  double r_cut = 0.0;
  std::vector<double> t_grid;     // full symmetric grid, ascending
  std::vector<double> t_weights;  // matching positive weights
  Matrix matrix;                  // folded form, t_grid.size() square
  /// Worst sampled deviation of the assembled entries from the kernel values
  /// recomputed via zeta_n / eta_n, relative to the largest entry.
  double fold_residual = 0.0;
};

/// Default total node count for build_gram (512).
std::size_t default_gram_nodes();

/// r_cut = 0 selects the symbol's default truncation radius; a positive
/// r_cut must satisfy the 1e-8 relative tail-mass bound or TruncationError
/// is thrown. m_nodes = 0 selects default_gram_nodes().
GramDiscretization build_gram(const Symbol& sym, std::size_t n, GramMode mode,
                              double r_cut = 0.0, std::size_t m_nodes = 0);

/// Trace norm of (zeta-mode matrix - eta-mode matrix) on the shared grid.
double dn_trace_norm(const Symbol& sym, std::size_t n, double r_cut = 0.0,
                     std::size_t m_nodes = 0);

/// (operator norm of the zeta-mode Gram, operator norm of the eta-mode Gram).
std::pair<double, double> gram_operator_norms(const Symbol& sym, std::size_t n,
                                              double r_cut = 0.0,
                                              std::size_t m_nodes = 0);

/// One row of the trace-norm convergence study.
struct DnRow {
  std::size_t n = 0;
  std::size_t m_nodes = 0;
  double r_cut = 0.0;
  double dn_trace_norm = 0.0;
  double zeta_norm = 0.0;
  double eta_norm = 0.0;
  double trace_dn = 0.0;
};

DnRow dn_study_row(const Symbol& sym, std::size_t n, double r_cut = 0.0,
                   std::size_t m_nodes = 0);

}  // namespace hardy
