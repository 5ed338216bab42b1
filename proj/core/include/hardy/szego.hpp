#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hardy/linalg.hpp"
#include "hardy/symbol.hpp"

namespace hardy {

/// Lipschitz test function g with g(0) = 0.
class TestFunction {
 public:
  /// g(x) = x^m, m >= 1. domain_bound sets the reported Lipschitz radius.
  static TestFunction power(int m, double domain_bound = 8.0);
  /// Piecewise-linear ramp: 0 up to lambda0, 1 from lambda0 + width on.
  static TestFunction clipped_ramp(double lambda0, double width);
  /// Piecewise-linear interpolant through (x, y) points; must vanish at 0.
  static TestFunction from_table(std::vector<std::pair<double, double>> pts);

  double operator()(double x) const;
  double lipschitz_constant() const { return lipschitz_on(domain_bound_); }
  /// Lipschitz constant valid on [-radius, radius].
  double lipschitz_on(double radius) const;
  double domain_bound() const { return domain_bound_; }
  const std::string& name() const { return name_; }
  /// Degree for the power kind, 0 otherwise.
  int power_degree() const { return kind_ == Kind::kPower ? degree_ : 0; }
  bool is_ramp() const { return kind_ == Kind::kRamp; }
  double ramp_start() const { return lambda0_; }
  double ramp_width() const { return width_; }

 private:
  enum class Kind { kPower, kRamp, kTable };
  TestFunction() = default;
  Kind kind_ = Kind::kPower;
  int degree_ = 1;
  double lambda0_ = 0.0, width_ = 1.0;
  double domain_bound_ = 8.0;
  std::vector<std::pair<double, double>> table_;
  std::string name_;
};

/// sum_j g(lambda_j).
double trace_functional(const Spectrum& spec, const TestFunction& g);

/// (log n)^{-1} Tr g(K_n): builds and solves the kernel matrix.
double szego_ratio(const Symbol& sym, const TestFunction& g, std::size_t n);
/// Same, reusing an already computed spectrum of K_n.
double szego_ratio(const Spectrum& spec, const TestFunction& g, std::size_t n);

/// (1/2pi) integral of g(phi(t)) dt to absolute error tol.
double szego_limit(const Symbol& sym, const TestFunction& g, double tol);

/// (log n)^{-1} #{j: lambda_j > lambda}.
double counting_ratio(const Spectrum& spec, double lambda, std::size_t n);

struct CountingLimit {
  double value = 0.0;
  /// Set when phi has a plateau at lambda (the level set has positive measure).
  bool ambiguous = false;
};

/// superlevel_measure / (2pi), with a plateau ambiguity flag.
CountingLimit counting_limit(const Symbol& sym, double lambda);

/// (trace from the entry formula, hat_zero * H_n); the two agree to 1e-12.
std::pair<double, double> trace_identity(const Symbol& sym, std::size_t n);

/// Tr K_n^m - Tr T_n^m. For m = 1 the T-trace is hat_zero * log n exactly;
/// m_nodes = 0 selects default_t_nodes(n).
double moment_gap(const Symbol& sym, int m, std::size_t n, std::size_t m_nodes = 0);

/// max_{j <= j_max} |lambda_(j) - hat_zero/j| over the top descending
/// eigenvalues of K_n applied to the dilated symbol (scale alpha).
double eigen13_deviation(const Symbol& sym, double alpha, std::size_t n, int j_max);

struct DensityReport {
  SymbolId symbol;
  std::string g_name;
  struct Row {
    std::size_t n;
    double m_n;
    double abs_err;
  };
  std::vector<Row> rows;
  double predicted_limit = 0.0;
  double extrapolated_limit = 0.0;
};

/// Szego sweep over strictly increasing matrix sizes.
DensityReport density_report(const Symbol& sym, const TestFunction& g,
                             const std::vector<std::size_t>& ns, double tol = 1e-8);

/// Quadratic extrapolation in x = 1/log n through the last three points,
/// evaluated at x = 0.
double richardson_loglimit(const std::vector<std::size_t>& ns,
                           const std::vector<double>& values);

}  // namespace hardy
