#include "hardy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

GaussLegendre make_rule(int n) {
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double pi = 3.14159265358979323846;
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int order) {
  if (order < 2 || order > 64) throw DomainError("gauss_legendre: order must be in [2, 64]");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

double integrate_panel(const std::function<double(double)>& f, double a, double b,
                       int order) {
  const GaussLegendre& rule = gauss_legendre(order);
  const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + rad * rule.nodes[i]);
  return rad * sum;
}

double integrate_oscillatory_panel(const std::function<double(double)>& f, double a,
                                   double b, int order, double osc_freq) {
  const double phase = (b - a) * std::abs(osc_freq);
  const int n_sub = std::max(1, static_cast<int>(std::ceil(phase / 6.0)));
  const double h = (b - a) / n_sub;
  double sum = 0.0;
  for (int s = 0; s < n_sub; ++s) sum += integrate_panel(f, a + s * h, a + (s + 1) * h, order);
  return sum;
}

IntegralResult integrate_half_line(const std::function<double(double)>& f,
                                   const HalfLineOptions& opt) {
  IntegralResult out;
  const double end = opt.support_end;

  std::vector<double> edges = opt.breakpoints;
  std::sort(edges.begin(), edges.end());

  auto piece = [&](double a, double b) {
    double sum = 0.0;
    for (double e : edges)
      if (e > a && e < b) {
        sum += integrate_oscillatory_panel(f, a, e, opt.order, opt.osc_freq);
        a = e;
      }
    return sum + integrate_oscillatory_panel(f, a, b, opt.order, opt.osc_freq);
  };

  if (end <= 1.0) {
    out.value = end > 0.0 ? piece(0.0, end) : 0.0;
    return out;
  }
  out.value = piece(0.0, 1.0);

  double prev_abs = std::numeric_limits<double>::infinity();
  int flat_streak = 0;
  double tail_estimate = std::numeric_limits<double>::infinity();
  for (int k = 0; k < opt.max_octaves; ++k) {
    const double a = std::ldexp(1.0, k);
    const double b = std::min(std::ldexp(1.0, k + 1), end);
    const double c = piece(a, b);
    out.value += c;
    if (b >= end) return out;
    if (opt.tail_bound && opt.tail_bound(b) <= opt.tol * 0.1) return out;

    if (!opt.tail_bound) {
      const double ca = std::abs(c);
      if (k >= 4) {
        if (ca == 0.0 && prev_abs == 0.0) return out;
        if (prev_abs > 0.0) {
          const double r = ca / prev_abs;
          // Contributions neither decaying nor in a transient growth hump:
          // the octave sums have stopped decreasing.
          if (r >= 0.95 && r <= 1.25) {
            if (++flat_streak >= 3) {
              if (ca <= opt.tol) return out;
              out.divergent = true;
              return out;
            }
          } else {
            flat_streak = 0;
            if (r < 0.95) {
              tail_estimate = ca * r / (1.0 - r);
              if (ca < opt.tol * 0.5 && tail_estimate < opt.tol * 0.5) return out;
            }
          }
        }
      }
      prev_abs = ca;
    }
  }
  if (opt.tail_bound)
    throw ConvergenceError("integrate_half_line: tail bound not met within octave budget",
                           opt.tail_bound(std::ldexp(1.0, opt.max_octaves)));
  throw ConvergenceError("integrate_half_line: tolerance not reached within octave budget",
                         tail_estimate);
}

}  // namespace hardy
