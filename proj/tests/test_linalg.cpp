#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/linalg.hpp"
#include "hardy/matrix.hpp"
#include "hardy/operators.hpp"
#include "hardy/symbol.hpp"

using namespace hardy;

namespace {

// Cyclic Jacobi sweep oracle, independent of the Householder+QL path.
std::vector<double> jacobi_eigenvalues(Matrix a) {
  const std::size_t n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-28) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = 0.5 * (a(q, q) - a(p, p)) / a(p, q);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a(i, i);
  std::sort(v.begin(), v.end());
  return v;
}

Matrix random_symmetric(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = dist(rng);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

}  // namespace

TEST_CASE("eigh matches a Jacobi oracle on random symmetric matrices") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<std::size_t> size_dist(2, 64);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = size_dist(rng);
    const Matrix m = random_symmetric(rng, n);
    const Spectrum spec = eigh(m);
    const std::vector<double> oracle = jacobi_eigenvalues(m);
    REQUIRE(spec.values.size() == n);
    double scale = 1.0;
    for (double v : oracle) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i) {
      CAPTURE(trial);
      CAPTURE(i);
      CHECK(std::abs(spec.values[i] - oracle[i]) <= 1e-10 * scale);
    }
    CHECK(std::is_sorted(spec.values.begin(), spec.values.end()));
    CHECK(std::abs(spec.trace() - m.trace()) <= 1e-10 * static_cast<double>(n) * scale);
  }
}

TEST_CASE("exact small spectra") {
  const Spectrum id5 = eigh(Matrix::identity(5));
  for (double v : id5.values) CHECK(std::abs(v - 1.0) <= 1e-15);

  Matrix d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  const Spectrum ds = eigh(d);
  CHECK(std::abs(ds.values[0] - 1.0) <= 1e-14);
  CHECK(std::abs(ds.values[1] - 2.0) <= 1e-14);
  CHECK(std::abs(ds.values[2] - 3.0) <= 1e-14);

  Matrix h(2, 2);
  h(0, 0) = 0.5;
  h(0, 1) = h(1, 0) = 1.0 / 3.0;
  h(1, 1) = 0.25;
  const Spectrum hs = eigh(h);
  CHECK(std::abs(hs.values[0] - 0.018999843945102868) <= 1e-13);
  CHECK(std::abs(hs.values[1] - 0.731000156054897132) <= 1e-13);
  CHECK(std::abs(hs.trace() - 0.75) <= 1e-14);
  CHECK(hs.count_above(0.5) == 1);
  CHECK(hs.count_above(0.01) == 2);
  CHECK(hs.count_above(1.0) == 0);
  CHECK(std::abs(hs.max_abs() - hs.values[1]) <= 1e-15);
  CHECK(std::abs(hs.sum_squares() -
                 (hs.values[0] * hs.values[0] + hs.values[1] * hs.values[1])) <= 1e-15);
}

TEST_CASE("PSD perturbations move eigenvalues up, bounded by the trace") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 24;
    const Matrix a = random_symmetric(rng, n);
    const Matrix b = random_symmetric(rng, n);
    Matrix e = matmul(b.transposed(), b);
    e *= 0.01;
    const Spectrum sa = eigh(a);
    const Spectrum sae = eigh(a + e);
    const double shift = e.trace();
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(sae.values[i] >= sa.values[i] - 1e-11);
      CHECK(sae.values[i] <= sa.values[i] + shift + 1e-11);
    }
  }
}

TEST_CASE("singular values") {
  // Rank-one rectangular matrix: one nonzero singular value.
  const std::vector<double> u = {1.0, -2.0, 0.5, 3.0, 1.5, -0.25, 2.0};
  const std::vector<double> v = {2.0, 0.5, -1.0, 4.0};
  Matrix a(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) a(i, j) = u[i] * v[j];
  double nu = 0.0, nv = 0.0;
  for (double x : u) nu += x * x;
  for (double x : v) nv += x * x;
  const double sigma = std::sqrt(nu * nv);

  const std::vector<double> sv = singular_values(a);
  REQUIRE(sv.size() == v.size());
  CHECK(std::abs(sv[0] - sigma) <= 1e-12 * sigma);
  for (std::size_t i = 1; i < sv.size(); ++i) CHECK(sv[i] == 0.0);

  const std::vector<double> svt = singular_values(a.transposed());
  REQUIRE(svt.size() == v.size());
  for (std::size_t i = 0; i < sv.size(); ++i) CHECK(std::abs(sv[i] - svt[i]) <= 1e-12 * sigma);

  Matrix d(2, 2);
  d(0, 0) = -3.0;
  d(1, 1) = 2.0;
  CHECK(std::abs(trace_norm(d) - 5.0) <= 1e-14);
  CHECK(std::abs(operator_norm(d) - 3.0) <= 1e-14);

  std::mt19937 rng(99);
  const Matrix r = random_symmetric(rng, 12);
  CHECK(trace_norm(r) >= operator_norm(r) - 1e-12);
  CHECK(std::abs(trace_norm(r) - trace_norm(r.transposed())) <= 1e-10);
}

TEST_CASE("spectrum residual diagnostic stays small on kernel matrices") {
  const Spectrum s = eigh(build_K(catalog_symbol("hilbert", 1.0), 64).entries);
  CHECK(s.residual_bound >= 0.0);
  CHECK(s.residual_bound <= 1e-8 * std::max(1.0, s.max_abs()));
}

TEST_CASE("shape and symmetry errors") {
  CHECK_THROWS_AS(eigh(Matrix(2, 3)), DimensionError);
  Matrix bad(2, 2);
  bad(0, 1) = 1.0;
  bad(1, 0) = 0.5;
  CHECK_THROWS_AS(eigh(bad), DomainError);

  CHECK_THROWS_AS(matmul(Matrix(2, 3), Matrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(matvec(Matrix(2, 3), std::vector<double>(2)), DimensionError);
  CHECK_THROWS_AS(Matrix(2, 3).trace(), DimensionError);

  const Matrix ab = matmul(Matrix::identity(3), Matrix(3, 4));
  CHECK(ab.rows() == 3);
  CHECK(ab.cols() == 4);
}
