#include "hardy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardy/errors.hpp"

namespace hardy {

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* brow = b.row(k);
      double* crow = c.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  return c;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
  if (a.cols() != x.size()) throw DimensionError("matvec: dimensions differ");
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* arow = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += arow[j] * x[j];
    y[i] = s;
  }
  return y;
}

double Spectrum::trace() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double Spectrum::sum_squares() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return s;
}

double Spectrum::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

std::size_t Spectrum::count_above(double lambda) const {
  return values.end() - std::upper_bound(values.begin(), values.end(), lambda);
}

namespace {

/// Householder reduction of the lower triangle to tridiagonal (d, e);
/// eigenvalues-only variant, destroys z.
void tridiagonalize(Matrix& z, std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(z.rows());
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::abs(z(i, k));
      if (scale == 0.0) {
        e[i] = z(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          z(i, k) /= scale;
          h += z(i, k) * z(i, k);
        }
        double f = z(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        z(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
          for (int k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
          e[j] = g / h;
          f += e[j] * z(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = z(i, j);
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k) z(j, k) -= f * e[k] + g * z(i, k);
        }
      }
    } else {
      e[i] = z(i, l);
    }
    d[i] = h;
  }
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) d[i] = z(i, i);
}

/// Implicit-shift QL with Wilkinson shifts on a tridiagonal (d, e);
/// e[i] holds the subdiagonal entry below d[i] on entry (e[n-1] unused).
void ql_implicit(std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  const double eps = std::numeric_limits<double>::epsilon();
  // Absolute deflation floor at eps * ||T||: couplings below the backward
  // error of the reduction would otherwise keep rank-deficient noise blocks
  // (d and e both ~ eps * norm) iterating forever under the relative test.
  double anorm = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = std::abs(d[i]);
    if (i > 0) row += std::abs(e[i - 1]);
    if (i < n - 1) row += std::abs(e[i]);
    anorm = std::max(anorm, row);
  }
  if (anorm == 0.0) return;
  const double tiny = eps * anorm;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::max(eps * dd, tiny)) break;
      }
      if (m != l) {
        if (iter++ == 30) throw SolverError("eigh: QL sweep limit exceeded");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          e[i + 1] = r = std::hypot(f, g);
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          d[i + 1] = g + (p = s * r);
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

/// One step of inverse iteration on the shifted tridiagonal (Thomas solve
/// with partial pivoting); used only for the sampled residual diagnostic.
bool tridiag_solve_shifted(const std::vector<double>& d, const std::vector<double>& e,
                           double shift, std::vector<double>& x) {
  const int n = static_cast<int>(d.size());
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), c2(n, 0.0);
  for (int i = 0; i < n; ++i) {
    b[i] = d[i] - shift;
    if (i > 0) a[i] = e[i - 1];
    if (i < n - 1) c[i] = e[i];
  }
  const double tiny = 1e-300;
  for (int i = 0; i < n - 1; ++i) {
    if (std::abs(b[i]) < std::abs(a[i + 1])) {
      std::swap(b[i], a[i + 1]);
      std::swap(c[i], b[i + 1]);
      std::swap(c2[i], c[i + 1]);
      std::swap(x[i], x[i + 1]);
    }
    if (std::abs(b[i]) < tiny) b[i] = tiny;
    const double m = a[i + 1] / b[i];
    b[i + 1] -= m * c[i];
    c[i + 1] -= m * c2[i];
    x[i + 1] -= m * x[i];
  }
  if (std::abs(b[n - 1]) < tiny) b[n - 1] = tiny;
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    if (i < n - 1) s -= c[i] * x[i + 1];
    if (i < n - 2) s -= c2[i] * x[i + 2];
    x[i] = s / b[i];
  }
  double norm = 0.0;
  for (double v : x) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 0.0) || !std::isfinite(norm)) return false;
  for (double& v : x) v /= norm;
  return true;
}

double sampled_residual(const std::vector<double>& d, const std::vector<double>& e,
                        const std::vector<double>& lambdas) {
  const int n = static_cast<int>(d.size());
  double scale = 0.0;
  for (double v : lambdas) scale = std::max(scale, std::abs(v));
  if (scale == 0.0 || n == 1) return 0.0;

  double worst = 0.0;
  const int samples = std::min(10, n);
  for (int s = 0; s < samples; ++s) {
    const std::size_t j = samples == 1 ? 0 : s * (lambdas.size() - 1) / (samples - 1);
    const double lam = lambdas[j];
    const double shift = lam * (1.0 + 2e-15) + (lam == 0.0 ? 1e-300 : 0.0);
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    bool ok = true;
    for (int it = 0; it < 3 && ok; ++it) ok = tridiag_solve_shifted(d, e, shift, x);
    if (!ok) continue;
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
      double ti = d[i] * x[i] - lam * x[i];
      if (i > 0) ti += e[i - 1] * x[i - 1];
      if (i < n - 1) ti += e[i] * x[i + 1];
      res += ti * ti;
    }
    worst = std::max(worst, std::sqrt(res) / scale);
  }
  return worst;
}

}  // namespace

Spectrum eigh(const Matrix& a) {
  if (!a.is_square()) throw DimensionError("eigh: matrix must be square");
  const std::size_t n = a.rows();
  if (n == 0) return Spectrum{};
  if (a.max_asymmetry() > 1e-12 * std::max(a.max_abs(), 1e-300))
    throw DomainError("eigh: input is not symmetric within tolerance");

  Matrix work = a;
  std::vector<double> d, e;
  tridiagonalize(work, d, e);
  const std::vector<double> td = d;
  std::vector<double> te(e.begin() + 1, e.end());  // subdiagonal below td[i]
  te.push_back(0.0);

  ql_implicit(d, te);
  // ql_implicit consumed the shifted copy; keep original (td, sub) for residuals.
  std::vector<double> sub(e.begin() + 1, e.end());

  Spectrum out;
  out.values = d;
  std::sort(out.values.begin(), out.values.end());
  out.residual_bound = sampled_residual(td, sub, out.values);
  return out;
}

std::vector<double> singular_values(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  std::vector<double> sv;
  if (a.is_square() && a.max_asymmetry() <= 1e-12 * std::max(a.max_abs(), 1e-300)) {
    Spectrum s = eigh(a);
    sv = s.values;
    for (double& v : sv) v = std::abs(v);
  } else {
    const bool tall = a.rows() >= a.cols();
    const Matrix& g = tall ? a : a.transposed();
    // Gram of the smaller side.
    const std::size_t n = g.cols();
    Matrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < g.rows(); ++k) s += g(k, i) * g(k, j);
        gram(i, j) = gram(j, i) = s;
      }
    Spectrum s = eigh(gram);
    sv = s.values;
    for (double& v : sv) v = std::sqrt(std::max(v, 0.0));
  }
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  const double clamp = sv.empty() ? 0.0 : 1e-12 * sv.front();
  for (double& v : sv)
    if (v < clamp) v = 0.0;
  return sv;
}

double trace_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : singular_values(a)) s += v;
  return s;
}

double operator_norm(const Matrix& a) {
  std::vector<double> sv = singular_values(a);
  return sv.empty() ? 0.0 : sv.front();
}

}  // namespace hardy
