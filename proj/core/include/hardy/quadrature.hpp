#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace hardy {

/// Nodes and weights of a Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule of the given order (2..64).
const GaussLegendre& gauss_legendre(int order);

/// Integral of f over [a, b] with a single rule of the given order.
double integrate_panel(const std::function<double(double)>& f, double a, double b,
                       int order);

/// Integral of f over [a, b], split so each sub-panel spans at most ~6 radians
/// of a factor oscillating at osc_freq (rad per unit).
double integrate_oscillatory_panel(const std::function<double(double)>& f, double a,
                                   double b, int order, double osc_freq);

/// Value of an improper integral together with an in-band divergence marker.
struct IntegralResult {
  double value = 0.0;
  bool divergent = false;
};

struct HalfLineOptions {
  double tol = 1e-10;        // absolute error target
  double osc_freq = 0.0;     // frequency of an oscillatory factor inside f
  std::vector<double> breakpoints;  // forced panel edges (kinks, support ends)
  /// Optional bound on |integral of f over [T, inf)|; enables early stopping.
  std::function<double(double)> tail_bound;
  double support_end = std::numeric_limits<double>::infinity();
  int order = 16;
  int max_octaves = 64;
};

/// Adaptive integral of f over [0, inf): a unit panel followed by dyadic
/// octaves [2^k, 2^{k+1}]. Without a tail bound, octave contributions that
/// stop decreasing raise the divergence marker; a geometric tail estimate
/// otherwise decides convergence.
IntegralResult integrate_half_line(const std::function<double(double)>& f,
                                   const HalfLineOptions& opt);

}  // namespace hardy
