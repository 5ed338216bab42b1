#include "hardy/szego.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hardy/errors.hpp"
#include "hardy/operators.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/special.hpp"

namespace hardy {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double int_pow(double x, int m) {
  double acc = 1.0;
  for (int i = 0; i < m; ++i) acc *= x;
  return acc;
}

}  // namespace

TestFunction TestFunction::power(int m, double domain_bound) {
  if (m < 1) throw DomainError("TestFunction::power: degree must be >= 1");
  if (!(domain_bound > 0.0)) throw DomainError("TestFunction::power: domain_bound must be positive");
  TestFunction g;
  g.kind_ = Kind::kPower;
  g.degree_ = m;
  g.domain_bound_ = domain_bound;
  if (m == 1) {
    g.name_ = "identity";
  } else if (m == 2) {
    g.name_ = "square";
  } else {
    g.name_ = "power" + std::to_string(m);
  }
  return g;
}

TestFunction TestFunction::clipped_ramp(double lambda0, double width) {
  if (!(lambda0 >= 0.0)) throw DomainError("TestFunction::clipped_ramp: lambda0 must be >= 0");
  if (!(width > 0.0)) throw DomainError("TestFunction::clipped_ramp: width must be positive");
  TestFunction g;
  g.kind_ = Kind::kRamp;
  g.lambda0_ = lambda0;
  g.width_ = width;
  g.domain_bound_ = lambda0 + width;
  g.name_ = "ramp:" + format_shortest(lambda0) + ":" + format_shortest(width);
  return g;
}

TestFunction TestFunction::from_table(std::vector<std::pair<double, double>> pts) {
  if (pts.size() < 2) throw DomainError("TestFunction::from_table: need at least two points");
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!(pts[i].first > pts[i - 1].first))
      throw DomainError("TestFunction::from_table: abscissae must be distinct");
  }
  TestFunction g;
  g.kind_ = Kind::kTable;
  g.table_ = std::move(pts);
  g.domain_bound_ = std::max(std::abs(g.table_.front().first), std::abs(g.table_.back().first));
  g.name_ = "table";
  if (g(0.0) != 0.0) throw DomainError("TestFunction::from_table: must vanish at zero");
  return g;
}

double TestFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::kPower:
      return int_pow(x, degree_);
    case Kind::kRamp: {
      double u = (x - lambda0_) / width_;
      return std::clamp(u, 0.0, 1.0);
    }
    case Kind::kTable: {
      if (x <= table_.front().first) return table_.front().second;
      if (x >= table_.back().first) return table_.back().second;
      auto it = std::upper_bound(table_.begin(), table_.end(), x,
                                 [](double v, const std::pair<double, double>& p) { return v < p.first; });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      double w = (x - lo.first) / (hi.first - lo.first);
      return lo.second + w * (hi.second - lo.second);
    }
  }
  return 0.0;
}

double TestFunction::lipschitz_on(double radius) const {
  switch (kind_) {
    case Kind::kPower:
      return degree_ * int_pow(std::abs(radius), degree_ - 1);
    case Kind::kRamp:
      return 1.0 / width_;
    case Kind::kTable: {
      double slope = 0.0;
      for (std::size_t i = 1; i < table_.size(); ++i) {
        double s = std::abs(table_[i].second - table_[i - 1].second) /
                   (table_[i].first - table_[i - 1].first);
        slope = std::max(slope, s);
      }
      return slope;
    }
  }
  return 0.0;
}

double trace_functional(const Spectrum& spec, const TestFunction& g) {
  double acc = 0.0;
  for (double v : spec.values) acc += g(v);
  return acc;
}

double szego_ratio(const Symbol& sym, const TestFunction& g, std::size_t n) {
  if (n < 2) throw DomainError("szego_ratio: n must be >= 2");
  Spectrum spec = eigh(build_K(sym, n).entries);
  return szego_ratio(spec, g, n);
}

double szego_ratio(const Spectrum& spec, const TestFunction& g, std::size_t n) {
  if (n < 2) throw DomainError("szego_ratio: n must be >= 2");
  return trace_functional(spec, g) / std::log(static_cast<double>(n));
}

double szego_limit(const Symbol& sym, const TestFunction& g, double tol) {
  if (!(tol > 0.0)) throw DomainError("szego_limit: tol must be positive");
  const double sup = sym.sup_norm();
  HalfLineOptions opts;
  opts.tol = 0.9 * tol * kPi;
  opts.support_end = sym.support_end();
  const double lip = g.lipschitz_on(sup);
  opts.tail_bound = [&sym, lip](double t) { return 0.5 * lip * sym.tail_mass_bound(t); };
  if (g.is_ramp()) {
    const double lo = g.ramp_start();
    const double hi = lo + g.ramp_width();
    if (lo >= sup) return 0.0;
    if (lo > 0.0) {
      // g(phi(t)) vanishes once phi drops below the ramp start.
      opts.support_end = std::min(opts.support_end, 0.5 * superlevel_measure(sym, lo));
    }
    if (hi < sup) opts.breakpoints.push_back(0.5 * superlevel_measure(sym, hi));
  }
  auto integrand = [&sym, &g](double t) { return g(sym.eval(t)); };
  IntegralResult r = integrate_half_line(integrand, opts);
  return r.value / kPi;
}

double counting_ratio(const Spectrum& spec, double lambda, std::size_t n) {
  if (!(lambda > 0.0)) throw DomainError("counting_ratio: lambda must be positive");
  if (n < 2) throw DomainError("counting_ratio: n must be >= 2");
  return static_cast<double>(spec.count_above(lambda)) / std::log(static_cast<double>(n));
}

CountingLimit counting_limit(const Symbol& sym, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("counting_limit: lambda must be positive");
  CountingLimit out;
  out.value = superlevel_measure(sym, lambda) / (2.0 * kPi);
  const double eps = 1e-9;
  double jump = superlevel_measure(sym, lambda * (1.0 - eps)) -
                superlevel_measure(sym, lambda * (1.0 + eps));
  out.ambiguous = jump > 1e-6;
  return out;
}

std::pair<double, double> trace_identity(const Symbol& sym, std::size_t n) {
  if (n == 0) throw DomainError("trace_identity: n must be >= 1");
  const double h0 = sym.hat_zero();
  double entry_sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) entry_sum += h0 / static_cast<double>(k);
  return {entry_sum, h0 * harmonic_number(static_cast<std::int64_t>(n))};
}

double moment_gap(const Symbol& sym, int m, std::size_t n, std::size_t m_nodes) {
  if (m < 1) throw DomainError("moment_gap: m must be >= 1");
  if (n < 2) throw DomainError("moment_gap: n must be >= 2");
  const double logn = std::log(static_cast<double>(n));
  if (m == 1) {
    return sym.hat_zero() * (harmonic_number(static_cast<std::int64_t>(n)) - logn);
  }
  Spectrum ks = eigh(build_K(sym, n).entries);
  const double np = static_cast<double>(n);
  std::size_t nodes = m_nodes != 0 ? m_nodes : default_t_nodes(np);
  Spectrum ts = eigh(build_T(sym, np, nodes).entries);
  double k_moment = 0.0;
  for (double v : ks.values) k_moment += int_pow(v, m);
  double t_moment = 0.0;
  for (double v : ts.values) t_moment += int_pow(v, m);
  return k_moment - t_moment;
}

double eigen13_deviation(const Symbol& sym, double alpha, std::size_t n, int j_max) {
  if (!(alpha >= 1.0)) throw DomainError("eigen13_deviation: alpha must be >= 1");
  if (j_max < 1 || j_max > 10) throw DomainError("eigen13_deviation: j_max must be in [1, 10]");
  if (n < static_cast<std::size_t>(j_max))
    throw DomainError("eigen13_deviation: n must be >= j_max");
  Symbol scaled = scale_symbol(sym, alpha);
  Spectrum spec = eigh(build_K(scaled, n).entries);
  const double h0 = scaled.hat_zero();
  double dev = 0.0;
  for (int j = 1; j <= j_max; ++j) {
    double lam = spec.values[n - static_cast<std::size_t>(j)];
    dev = std::max(dev, std::abs(lam - h0 / j));
  }
  return dev;
}

double richardson_loglimit(const std::vector<std::size_t>& ns,
                           const std::vector<double>& values) {
  if (ns.size() != values.size())
    throw DimensionError("richardson_loglimit: size mismatch");
  if (ns.size() < 3) throw DomainError("richardson_loglimit: need at least three points");
  const std::size_t off = ns.size() - 3;
  double x[3], y[3];
  for (int i = 0; i < 3; ++i) {
    std::size_t n = ns[off + i];
    if (n < 2) throw DomainError("richardson_loglimit: sizes must be >= 2");
    x[i] = 1.0 / std::log(static_cast<double>(n));
    y[i] = values[off + i];
  }
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    double term = y[i];
    for (int j = 0; j < 3; ++j) {
      if (j == i) continue;
      term *= x[j] / (x[j] - x[i]);
    }
    acc += term;
  }
  return acc;
}

DensityReport density_report(const Symbol& sym, const TestFunction& g,
                             const std::vector<std::size_t>& ns, double tol) {
  if (ns.empty()) throw DomainError("density_report: need at least one size");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 2) throw DomainError("density_report: sizes must be >= 2");
    if (i > 0 && ns[i] <= ns[i - 1])
      throw DomainError("density_report: sizes must be strictly increasing");
  }
  DensityReport rep;
  rep.symbol = sym.id();
  rep.g_name = g.name();
  rep.predicted_limit = szego_limit(sym, g, tol);
  std::vector<double> ratios;
  ratios.reserve(ns.size());
  for (std::size_t n : ns) {
    double m_n = szego_ratio(sym, g, n);
    ratios.push_back(m_n);
    rep.rows.push_back({n, m_n, std::abs(m_n - rep.predicted_limit)});
  }
  rep.extrapolated_limit = ns.size() >= 3 ? richardson_loglimit(ns, ratios) : ratios.back();
  return rep;
}

}  // namespace hardy
