#include "hardy/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "hardy/errors.hpp"
#include "hardy/linalg.hpp"
#include "hardy/quadrature.hpp"

namespace hardy {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::size_t kMaxGramN = 16384;

struct Panel {
  double a, b, mass;
};

double probe_mass(const Symbol& sym, double a, double b) {
  const GaussLegendre& gl = gauss_legendre(8);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i)
    acc += gl.weights[i] * sym.eval(mid + half * gl.nodes[i]);
  return acc * half;
}

struct SideGrid {
  std::vector<double> nodes;    // ascending, positive
  std::vector<double> weights;
};

// Gauss-Legendre panels on [0, R]: unit panel, then octaves, near panels
// halved; orders follow the mass distribution of phi.
SideGrid build_side_grid(const Symbol& sym, double r, std::size_t budget) {
  std::vector<Panel> panels;
  auto push = [&](double a, double b) {
    if (a < 8.0 && b - a > 1.0) {
      double mid = 0.5 * (a + b);
      panels.push_back({a, mid, 0.0});
      panels.push_back({mid, b, 0.0});
    } else {
      panels.push_back({a, b, 0.0});
    }
  };
  double lo = 0.0, hi = std::min(1.0, r);
  push(lo, hi);
  for (lo = hi; lo < r; lo = hi) {
    hi = std::min(2.0 * lo, r);
    push(lo, hi);
  }
  if (budget < 2 * panels.size())
    throw DomainError("build_gram: m_nodes too small for the truncation radius");
  for (Panel& p : panels) p.mass = probe_mass(sym, p.a, p.b);
  while (32 * panels.size() < budget) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].mass > panels[best].mass) best = i;
    Panel p = panels[best];
    double mid = 0.5 * (p.a + p.b);
    Panel left{p.a, mid, probe_mass(sym, p.a, mid)};
    Panel right{mid, p.b, probe_mass(sym, mid, p.b)};
    panels[best] = left;
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(best) + 1, right);
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });

  // Greedy equal-error allocation: a Gauss-Legendre rule of order m on a
  // panel carrying mass w contributes an error of roughly w * 16^{-m}.
  const std::size_t np = panels.size();
  const std::size_t floor_order = std::min<std::size_t>(4, budget / np);
  std::vector<std::size_t> alloc(np, floor_order);
  std::vector<double> err(np);
  for (std::size_t i = 0; i < np; ++i)
    err[i] = panels[i].mass * std::pow(16.0, -static_cast<double>(floor_order));
  std::size_t leftover = budget - floor_order * np;
  while (leftover > 0) {
    std::size_t best = np;
    for (std::size_t i = 0; i < np; ++i) {
      if (alloc[i] >= 32) continue;
      if (best == np || err[i] > err[best]) best = i;
    }
    if (best == np) break;
    ++alloc[best];
    err[best] /= 16.0;
    --leftover;
  }

  SideGrid g;
  g.nodes.reserve(budget);
  g.weights.reserve(budget);
  for (std::size_t i = 0; i < np; ++i) {
    const GaussLegendre& gl = gauss_legendre(alloc[i]);
    const double mid = 0.5 * (panels[i].a + panels[i].b);
    const double half = 0.5 * (panels[i].b - panels[i].a);
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      g.nodes.push_back(mid + half * gl.nodes[k]);
      g.weights.push_back(half * gl.weights[k]);
    }
  }
  return g;
}

double eta_re(double tau, double log_n) {
  if (std::abs(tau) < 1e-6) {
    const double l3 = log_n * log_n * log_n;
    return log_n - tau * tau * l3 / 6.0;
  }
  return std::sin(tau * log_n) / tau;
}

double eta_im(double tau, double log_n) {
  if (std::abs(tau) < 1e-6) {
    const double l2 = log_n * log_n;
    return -0.5 * tau * l2 + tau * tau * tau * l2 * l2 / 24.0;
  }
  const double s = std::sin(0.5 * tau * log_n);
  return -2.0 * s * s / tau;
}

}  // namespace

std::complex<double> zeta_n(double tau, std::size_t n) {
  if (n == 0) throw DomainError("zeta_n: n must be >= 1");
  double re = 0.0, im = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double inv = 1.0 / static_cast<double>(k);
    const double x = tau * std::log(static_cast<double>(k));
    re += inv * std::cos(x);
    im -= inv * std::sin(x);
  }
  return {re, im};
}

std::complex<double> eta_n(double tau, std::size_t n) {
  if (n == 0) throw DomainError("eta_n: n must be >= 1");
  const double log_n = std::log(static_cast<double>(n));
  return {eta_re(tau, log_n), eta_im(tau, log_n)};
}

std::size_t default_gram_nodes() { return 512; }

GramDiscretization build_gram(const Symbol& sym, std::size_t n, GramMode mode,
                              double r_cut, std::size_t m_nodes) {
  if (n == 0) throw DomainError("build_gram: n must be >= 1");
  if (n > kMaxGramN)
    throw ResourceError("build_gram: n exceeds the direct-summation budget (16384)");
  if (!sym.nonnegative())
    throw DomainError("build_gram: symbol must be nonnegative");
  if (m_nodes == 0) m_nodes = default_gram_nodes();
  if (m_nodes < 16) throw DomainError("build_gram: m_nodes must be >= 16");
  double r = r_cut;
  if (r == 0.0) {
    r = sym.default_r_cut();
  } else {
    if (!(r > 0.0)) throw DomainError("build_gram: r_cut must be positive");
    if (sym.tail_mass_bound(r) > 1e-8 * sym.l1_norm())
      throw TruncationError("build_gram: tail mass above 1e-8 of l1 at r_cut",
                            sym.default_r_cut());
  }

  SideGrid side = build_side_grid(sym, r, m_nodes / 2);
  const std::size_t p_count = side.nodes.size();
  const std::size_t dim = 2 * p_count;

  GramDiscretization out;
  out.symbol = sym.id();
  out.mode = mode;
  out.n_param = n;
  out.r_cut = r;
  out.t_grid.resize(dim);
  out.t_weights.resize(dim);
  for (std::size_t p = 0; p < p_count; ++p) {
    out.t_grid[p_count - 1 - p] = -side.nodes[p];
    out.t_weights[p_count - 1 - p] = side.weights[p];
    out.t_grid[p_count + p] = side.nodes[p];
    out.t_weights[p_count + p] = side.weights[p];
  }

  std::vector<double> d(p_count);
  for (std::size_t p = 0; p < p_count; ++p)
    d[p] = std::sqrt(side.weights[p] * sym.eval(side.nodes[p]) / (2.0 * kPi));

  Matrix h(dim, dim);
  if (mode == GramMode::kZeta) {
    const double sqrt2 = std::sqrt(2.0);
    std::vector<double> gamma(dim);
    for (std::size_t k = 1; k <= n; ++k) {
      const double u = std::log(static_cast<double>(k));
      const double c = 1.0 / static_cast<double>(k);
      for (std::size_t p = 0; p < p_count; ++p) {
        const double x = side.nodes[p] * u;
        gamma[p] = sqrt2 * d[p] * std::cos(x);
        gamma[p_count + p] = -sqrt2 * d[p] * std::sin(x);
      }
      for (std::size_t i = 0; i < dim; ++i) {
        const double gi = c * gamma[i];
        if (gi == 0.0) continue;
        for (std::size_t j = i; j < dim; ++j) h(i, j) += gi * gamma[j];
      }
    }
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < i; ++j) h(i, j) = h(j, i);
  } else {
    const double log_n = std::log(static_cast<double>(n));
    for (std::size_t p = 0; p < p_count; ++p) {
      for (std::size_t q = p; q < p_count; ++q) {
        const double dd = d[p] * d[q];
        const double tm = side.nodes[p] - side.nodes[q];
        const double tp = side.nodes[p] + side.nodes[q];
        const double am = eta_re(tm, log_n), ap = eta_re(tp, log_n);
        const double bm = eta_im(tm, log_n), bp = eta_im(tp, log_n);
        h(p, q) = h(q, p) = dd * (am + ap);
        h(p_count + p, p_count + q) = h(p_count + q, p_count + p) = dd * (am - ap);
        // Cross block: b is odd, so the (q, p) entry flips the bm sign.
        h(p, p_count + q) = h(p_count + q, p) = dd * (bp - bm);
        h(q, p_count + p) = h(p_count + p, q) = dd * (bp + bm);
      }
    }
  }

  double max_entry = h.max_abs();
  double resid = 0.0;
  if (p_count > 1 && max_entry > 0.0) {
    for (int s = 0; s < 16; ++s) {
      const std::size_t p = static_cast<std::size_t>(s) * (p_count - 1) / 15;
      const std::size_t q =
          (static_cast<std::size_t>(s) * 7 + 3) % 16 * (p_count - 1) / 15;
      const double dd = d[p] * d[q];
      const double tm = side.nodes[p] - side.nodes[q];
      const double tp = side.nodes[p] + side.nodes[q];
      std::complex<double> fm, fp;
      if (mode == GramMode::kZeta) {
        fm = zeta_n(tm, n);
        fp = zeta_n(tp, n);
      } else {
        fm = eta_n(tm, n);
        fp = eta_n(tp, n);
      }
      resid = std::max(resid, std::abs(h(p, q) - dd * (fm.real() + fp.real())));
      resid = std::max(resid, std::abs(h(p_count + p, p_count + q) -
                                       dd * (fm.real() - fp.real())));
      resid = std::max(resid, std::abs(h(p, p_count + q) -
                                       dd * (fp.imag() - fm.imag())));
    }
    resid /= max_entry;
  }
  out.fold_residual = resid;
  out.matrix = std::move(h);
  return out;
}

double dn_trace_norm(const Symbol& sym, std::size_t n, double r_cut,
                     std::size_t m_nodes) {
  GramDiscretization z = build_gram(sym, n, GramMode::kZeta, r_cut, m_nodes);
  GramDiscretization e = build_gram(sym, n, GramMode::kEta, r_cut, m_nodes);
  return trace_norm(z.matrix - e.matrix);
}

std::pair<double, double> gram_operator_norms(const Symbol& sym, std::size_t n,
                                              double r_cut, std::size_t m_nodes) {
  GramDiscretization z = build_gram(sym, n, GramMode::kZeta, r_cut, m_nodes);
  GramDiscretization e = build_gram(sym, n, GramMode::kEta, r_cut, m_nodes);
  return {operator_norm(z.matrix), operator_norm(e.matrix)};
}

DnRow dn_study_row(const Symbol& sym, std::size_t n, double r_cut,
                   std::size_t m_nodes) {
  GramDiscretization z = build_gram(sym, n, GramMode::kZeta, r_cut, m_nodes);
  GramDiscretization e = build_gram(sym, n, GramMode::kEta, r_cut, m_nodes);
  Matrix diff = z.matrix - e.matrix;
  DnRow row;
  row.n = n;
  row.m_nodes = z.t_grid.size();
  row.r_cut = z.r_cut;
  row.dn_trace_norm = trace_norm(diff);
  row.zeta_norm = operator_norm(z.matrix);
  row.eta_norm = operator_norm(e.matrix);
  row.trace_dn = diff.trace();
  return row;
}

}  // namespace hardy
