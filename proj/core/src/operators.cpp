#include "hardy/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>

#include "hardy/errors.hpp"
#include "hardy/quadrature.hpp"
#include "internal.hpp"

namespace hardy {

std::size_t max_matrix_dim() {
  const char* env = std::getenv("HARDY_SPECTRA_MAX_N");
  if (env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 20000;
}

namespace {

void check_dim(const char* op, std::size_t n) {
  if (n == 0) throw DimensionError(std::string(op) + ": dimension must be >= 1");
  if (n > max_matrix_dim())
    throw ResourceError(std::string(op) + ": dimension " + std::to_string(n) +
                        " exceeds the configured cap " + std::to_string(max_matrix_dim()));
}

}  // namespace

KernelMatrix build_K(const Symbol& sym, std::size_t n) {
  check_dim("build_K", n);
  KernelMatrix km{sym.id(), n, Matrix(n, n)};
  std::vector<double> logs(n), roots(n);
  for (std::size_t i = 0; i < n; ++i) {
    logs[i] = std::log(static_cast<double>(i + 1));
    roots[i] = std::sqrt(static_cast<double>(i + 1));
  }
  const double h0 = sym.hat_closed(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    km.entries(i, i) = h0 / static_cast<double>(i + 1);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = sym.hat_closed(logs[j] - logs[i]) / (roots[i] * roots[j]);
      km.entries(i, j) = v;
      km.entries(j, i) = v;
    }
  }
  return km;
}

std::size_t default_t_nodes(double n_param) {
  return std::max<std::size_t>(512, static_cast<std::size_t>(std::ceil(64.0 * std::log(n_param))));
}

namespace {

/// Largest |second derivative| of hat on [0, min(length, 40)], sampled.
double hat_curvature(const Symbol& sym, double length) {
  const double hi = std::min(length, 40.0);
  const double step = 1e-3;
  double m2 = 0.0;
  for (int i = 0; i <= 256; ++i) {
    const double u = hi * i / 256.0;
    const double d2 =
        (sym.hat_closed(u + step) - 2.0 * sym.hat_closed(u) + sym.hat_closed(u - step)) /
        (step * step);
    m2 = std::max(m2, std::abs(d2));
  }
  return m2;
}

/// Smallest dyadic u with |hat(u)| < 0.1 |hat(0)| (kernel bandwidth scale).
double hat_bandwidth(const Symbol& sym) {
  const double target = 0.1 * std::abs(sym.hat_zero());
  double u = 1e-3;
  for (int i = 0; i < 80 && std::abs(sym.hat_closed(u)) >= target; ++i) u *= 2.0;
  return u;
}

}  // namespace

NystromOperator build_T(const Symbol& sym, double n_param, std::size_t m_nodes) {
  if (!(n_param >= 2.0)) throw DomainError("build_T: n_param must be >= 2");
  if (m_nodes < 2) throw DomainError("build_T: m_nodes must be >= 2");
  check_dim("build_T", m_nodes);

  NystromOperator op;
  op.symbol = sym.id();
  op.n_param = n_param;
  op.length = std::log(n_param);
  const std::size_t m = m_nodes;
  const double h = op.length / static_cast<double>(m - 1);

  op.grid.resize(m);
  op.weights.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    op.grid[i] = h * static_cast<double>(i);
    op.weights[i] = (i == 0 || i == m - 1) ? 0.5 * h : h;
  }

  std::vector<double> hval(m), wroot(m);
  for (std::size_t d = 0; d < m; ++d) hval[d] = sym.hat_closed(h * static_cast<double>(d));
  for (std::size_t i = 0; i < m; ++i) wroot[i] = std::sqrt(op.weights[i]);

  op.entries = Matrix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const double v = wroot[i] * wroot[j] * hval[j - i];
      op.entries(i, j) = v;
      op.entries(j, i) = v;
    }

  op.quad_error_bound = op.length * h * h * hat_curvature(sym, op.length) / 12.0;
  op.bandwidth_warning = h > 0.25 * hat_bandwidth(sym);
  return op;
}

KernelMatrix build_diagonal_limit(const Symbol& sym, std::size_t n) {
  check_dim("build_diagonal_limit", n);
  KernelMatrix km{sym.id(), n, Matrix(n, n)};
  const double h0 = sym.hat_zero();
  for (std::size_t j = 0; j < n; ++j) km.entries(j, j) = h0 / static_cast<double>(j + 1);
  return km;
}

KernelMatrix build_pochhammer(std::int64_t alpha, std::size_t n) {
  if (alpha < 1) throw DomainError("build_pochhammer: alpha must be a positive integer");
  check_dim("build_pochhammer", n);
  KernelMatrix km{SymbolId{"pochhammer", static_cast<double>(alpha), 1.0}, n, Matrix(n, n)};
  // log (x)_k = lgamma(x + k) - lgamma(x)
  std::vector<double> half_log_rising(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i + 1);
    half_log_rising[i] =
        0.5 * (std::lgamma(x + static_cast<double>(alpha - 1)) - std::lgamma(x));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double s = static_cast<double>(i + j + 1);  // n + m - 1
      const double log_den = std::lgamma(s + static_cast<double>(alpha)) - std::lgamma(s);
      const double v = std::exp(half_log_rising[i] + half_log_rising[j] - log_den);
      km.entries(i, j) = v;
      km.entries(j, i) = v;
    }
  return km;
}

double quadratic_form(const KernelMatrix& mat, const std::vector<double>& a) {
  if (a.size() != mat.n) throw DimensionError("quadratic_form: vector length != matrix dimension");
  double s = 0.0;
  for (std::size_t i = 0; i < mat.n; ++i) {
    const double* row = mat.entries.row(i);
    double ri = 0.0;
    for (std::size_t j = 0; j < mat.n; ++j) ri += row[j] * a[j];
    s += a[i] * ri;
  }
  return s;
}

double dirichlet_form_oracle(const Symbol& sym, const std::vector<double>& a, double tol) {
  if (!(tol > 0.0)) throw DomainError("dirichlet_form_oracle: tol must be > 0");
  const std::size_t n = a.size();
  for (double v : a)
    if (!std::isfinite(v)) throw DomainError("dirichlet_form_oracle: vector must be finite");
  if (n == 0) return 0.0;

  constexpr double pi = 3.14159265358979323846;
  std::vector<double> logs(n), inv_root(n);
  double weight_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    logs[k] = std::log(static_cast<double>(k + 1));
    inv_root[k] = 1.0 / std::sqrt(static_cast<double>(k + 1));
    weight_sum += std::abs(a[k]) * inv_root[k];
  }

  if (sym.algebraic_tail()) {
    // Slow tail: expand |sum|^2 into cosines and transform each frequency.
    if (weight_sum == 0.0) return 0.0;
    const double tol_term = 0.9 * tol * pi / (weight_sum * weight_sum);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (a[k] == 0.0) continue;
      total += a[k] * a[k] / static_cast<double>(k + 1) *
               detail::cos_transform(sym, 0.0, tol_term);
      for (std::size_t l = k + 1; l < n; ++l) {
        if (a[l] == 0.0) continue;
        total += 2.0 * a[k] * a[l] * inv_root[k] * inv_root[l] *
                 detail::cos_transform(sym, logs[l] - logs[k], tol_term);
      }
    }
    return total / pi;
  }

  auto f = [&](double t) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      re += a[k] * inv_root[k] * std::cos(t * logs[k]);
      im -= a[k] * inv_root[k] * std::sin(t * logs[k]);
    }
    return sym.eval(t) * (re * re + im * im);
  };
  HalfLineOptions opt;
  opt.tol = 0.9 * tol * pi;
  opt.osc_freq = 2.0 * logs[n - 1];
  opt.support_end = sym.support_end();
  opt.tail_bound = [&sym, weight_sum](double T) {
    return sym.tail_mass_bound(T) * weight_sum * weight_sum;
  };
  return integrate_half_line(f, opt).value / pi;
}

namespace {

void put_u64_le(std::ofstream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64_le(std::ifstream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void write_matrix_dump(const std::string& path, const Matrix& m) {
  if (!m.is_square()) throw DimensionError("write_matrix_dump: matrix must be square");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ResourceError("write_matrix_dump: cannot open " + path);
  os.write("HKM1", 4);
  put_u64_le(os, m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      put_u64_le(os, std::bit_cast<std::uint64_t>(m(i, j)));
  if (!os) throw ResourceError("write_matrix_dump: write failed for " + path);
}

Matrix read_matrix_dump(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ResourceError("read_matrix_dump: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "HKM1", 4) != 0)
    throw DomainError("read_matrix_dump: bad magic in " + path);
  const std::uint64_t n = get_u64_le(is);
  if (n > max_matrix_dim()) throw ResourceError("read_matrix_dump: dimension exceeds cap");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = std::bit_cast<double>(get_u64_le(is));
  if (!is) throw DomainError("read_matrix_dump: truncated file " + path);
  return m;
}

}  // namespace hardy
