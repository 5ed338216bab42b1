#include "hardy/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hardy/errors.hpp"
#include "hardy/special.hpp"
#include "internal.hpp"

namespace hardy {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct FamilyOps {
  const char* name;
  bool uses_alpha;
  bool algebraic;
  void (*check_alpha)(double a);
  double (*eval)(double a, double t);
  double (*hat)(double a, double u);   // evaluated at |u| by the caller
  double (*hat0)(double a);
  double (*sup)(double a);
  double (*l1)(double a);
  double (*tail)(double a, double T);  // bound on the two-sided tail mass
  double (*superlevel)(double a, double l);  // nullptr: bisection fallback
  double (*support)(double a);
};

void require_positive_alpha(double a) {
  if (!(a > 0.0)) throw DomainError("catalog_symbol: alpha must be > 0");
}
void ignore_alpha(double) {}
void check_sinhratio_alpha(double a) {
  if (!(a > 0.0 && a < 0.5))
    throw DomainError("catalog_symbol: sinhratio requires 0 < alpha < 1/2");
}

double inf_support(double) { return kInf; }

// hilbert: phi = (pi/a) sech(pi t / a), hat = 1/(2 cosh(a u / 2))
double hilbert_eval(double a, double t) { return (kPi / a) * 2.0 * inv_two_cosh(kPi * t / a); }
double hilbert_hat(double a, double u) { return inv_two_cosh(0.5 * a * u); }
double hilbert_hat0(double) { return 0.5; }
double hilbert_sup(double a) { return kPi / a; }
double hilbert_l1(double) { return kPi; }
double hilbert_tail(double a, double T) { return std::min(kPi, 4.0 * std::exp(-kPi * T / a)); }
double hilbert_superlevel(double a, double l) {
  if (l >= kPi / a) return 0.0;
  return 2.0 * (a / kPi) * std::acosh(kPi / (a * l));
}

// min: phi = 2a/(a^2+t^2), hat = e^{-a|u|}
double min_eval(double a, double t) { return 2.0 * a / (a * a + t * t); }
double min_hat(double a, double u) { return std::exp(-a * u); }
double min_hat0(double) { return 1.0; }
double min_sup(double a) { return 2.0 / a; }
double min_l1(double) { return 2.0 * kPi; }
double min_tail(double a, double T) { return T > 0.0 ? 4.0 * std::atan(a / T) : 2.0 * kPi; }
double min_superlevel(double a, double l) {
  if (l >= 2.0 / a) return 0.0;
  return 2.0 * std::sqrt(2.0 * a / l - a * a);
}

// power: phi = |Gamma(a/2+it)|^2 / Gamma(a), hat = (2 cosh(u/2))^{-a}
double power_eval(double a, double t) {
  return std::exp(2.0 * re_log_gamma(0.5 * a, t) - std::lgamma(a));
}
double power_hat(double a, double u) {
  if (u == 0.0) return std::exp2(-a);
  return std::exp(-a * ln_two_cosh(0.5 * u));
}
double power_hat0(double a) { return std::exp2(-a); }
double power_sup(double a) { return power_eval(a, 0.0); }
double power_l1(double a) { return 2.0 * kPi * std::exp2(-a); }
double power_tail(double a, double T) {
  if (T < std::max(4.0, a)) return power_l1(a);
  return std::min(power_l1(a), 2.0 * power_eval(a, T));
}

// log: phi = pi^2 sech^2(pi t), hat = u/(2 sinh(u/2))
double log_eval(double, double t) {
  const double s = 2.0 * inv_two_cosh(kPi * t);
  return kPi * kPi * s * s;
}
double log_hat(double, double u) {
  if (u < 1e-6) return 1.0 - u * u / 24.0;
  if (u > 1300.0) return 0.0;
  return u / (2.0 * std::sinh(0.5 * u));
}
double log_hat0(double) { return 1.0; }
double log_sup(double) { return kPi * kPi; }
double log_l1(double) { return 2.0 * kPi; }
double log_tail(double, double T) { return 4.0 * kPi / (std::exp(2.0 * kPi * T) + 1.0); }
double log_superlevel(double, double l) {
  if (l >= kPi * kPi) return 0.0;
  return (2.0 / kPi) * std::acosh(kPi / std::sqrt(l));
}

// sinhratio: phi = 2 pi sin(2 pi a)/(cos(2 pi a)+cosh(2 pi t)),
// hat = sinh(a u)/sinh(u/2)
double sinhratio_eval(double a, double t) {
  const double num = 2.0 * kPi * std::sin(2.0 * kPi * a);
  const double x = 2.0 * kPi * std::abs(t);
  if (x > 700.0) return 2.0 * num * std::exp(-x);
  return num / (std::cos(2.0 * kPi * a) + std::cosh(x));
}
double sinhratio_hat(double a, double u) {
  if (u < 1e-6) return 2.0 * a * (1.0 + u * u * (4.0 * a * a - 1.0) / 24.0);
  if (u > 60.0)
    return std::exp((a - 0.5) * u) * (1.0 - std::exp(-2.0 * a * u)) /
           (1.0 - std::exp(-u));
  return std::sinh(a * u) / std::sinh(0.5 * u);
}
double sinhratio_hat0(double a) { return 2.0 * a; }
double sinhratio_sup(double a) { return 2.0 * kPi * std::tan(kPi * a); }
double sinhratio_l1(double a) { return 4.0 * kPi * a; }
double sinhratio_tail(double a, double T) {
  if (T < 0.5) return sinhratio_l1(a);
  return 4.4 * std::sin(2.0 * kPi * a) * std::exp(-2.0 * kPi * T);
}
double sinhratio_superlevel(double a, double l) {
  if (l >= sinhratio_sup(a)) return 0.0;
  const double d = 2.0 * kPi * std::sin(2.0 * kPi * a) / l - std::cos(2.0 * kPi * a);
  return (1.0 / kPi) * std::acosh(d);
}

// sinc: phi = pi on (-1,1), hat = sin(u)/u
double sinc_eval(double, double t) { return std::abs(t) < 1.0 ? kPi : 0.0; }
double sinc_hat(double, double u) {
  if (u < 1e-8) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}
double sinc_hat0(double) { return 1.0; }
double sinc_sup(double) { return kPi; }
double sinc_l1(double) { return 2.0 * kPi; }
double sinc_tail(double, double T) { return T >= 1.0 ? 0.0 : 2.0 * kPi * (1.0 - T); }
double sinc_superlevel(double, double l) { return l < kPi ? 2.0 : 0.0; }
double sinc_support(double) { return 1.0; }

const FamilyOps kFamilies[] = {
    {"hilbert", true, false, require_positive_alpha, hilbert_eval, hilbert_hat,
     hilbert_hat0, hilbert_sup, hilbert_l1, hilbert_tail, hilbert_superlevel, inf_support},
    {"min", true, true, require_positive_alpha, min_eval, min_hat, min_hat0, min_sup,
     min_l1, min_tail, min_superlevel, inf_support},
    {"power", true, false, require_positive_alpha, power_eval, power_hat, power_hat0,
     power_sup, power_l1, power_tail, nullptr, inf_support},
    {"log", false, false, ignore_alpha, log_eval, log_hat, log_hat0, log_sup, log_l1,
     log_tail, log_superlevel, inf_support},
    {"sinhratio", true, false, check_sinhratio_alpha, sinhratio_eval, sinhratio_hat,
     sinhratio_hat0, sinhratio_sup, sinhratio_l1, sinhratio_tail, sinhratio_superlevel,
     inf_support},
    {"sinc", false, false, ignore_alpha, sinc_eval, sinc_hat, sinc_hat0, sinc_sup,
     sinc_l1, sinc_tail, sinc_superlevel, sinc_support},
};

constexpr int kFamilyCount = 6;

int find_family(const std::string& name) {
  for (int i = 0; i < kFamilyCount; ++i)
    if (name == kFamilies[i].name) return i;
  return -1;
}

int family_index(const std::string& name) {
  const int idx = find_family(name);
  if (idx < 0) throw DomainError("catalog_symbol: unknown symbol name '" + name + "'");
  return idx;
}

}  // namespace

std::string SymbolId::str() const {
  std::ostringstream os;
  os << family;
  const int idx = find_family(family);
  const bool with_alpha = idx < 0 ? alpha != 1.0 : kFamilies[idx].uses_alpha;
  if (with_alpha || scale != 1.0) {
    os << "(";
    if (with_alpha) os << "alpha=" << alpha;
    if (scale != 1.0) os << (with_alpha ? "," : "") << "scale=" << scale;
    os << ")";
  }
  return os.str();
}

Symbol::Symbol(int family, double alpha, double scale) : family_(family) {
  id_.family = kFamilies[family].name;
  id_.alpha = alpha;
  id_.scale = scale;
}

double Symbol::eval(double t) const {
  const double s = id_.scale;
  return kFamilies[family_].eval(id_.alpha, t / s) / s;
}

double Symbol::hat_closed(double u) const {
  return kFamilies[family_].hat(id_.alpha, std::abs(id_.scale * u));
}

double Symbol::hat_zero() const { return kFamilies[family_].hat0(id_.alpha); }

double Symbol::sup_norm() const { return kFamilies[family_].sup(id_.alpha) / id_.scale; }

double Symbol::l1_norm() const { return kFamilies[family_].l1(id_.alpha); }

double Symbol::tail_mass_bound(double T) const {
  return kFamilies[family_].tail(id_.alpha, T / id_.scale);
}

bool Symbol::algebraic_tail() const { return kFamilies[family_].algebraic; }

double Symbol::support_end() const {
  return id_.scale * kFamilies[family_].support(id_.alpha);
}

double Symbol::default_r_cut() const {
  const double budget = 1e-8 * l1_norm();
  for (int k = 0; k <= 100; ++k) {
    const double r = std::ldexp(1.0, k);
    if (tail_mass_bound(r) <= budget) return r;
  }
  throw TruncationError("default_r_cut: tail mass budget unattainable", kInf);
}

Symbol catalog_symbol(const std::string& name, double alpha) {
  const int idx = family_index(name);
  kFamilies[idx].check_alpha(alpha);
  return Symbol(idx, kFamilies[idx].uses_alpha ? alpha : 1.0, 1.0);
}

Symbol scale_symbol(const Symbol& sym, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("scale_symbol: alpha must be > 0");
  return Symbol(sym.family_, sym.id_.alpha, sym.id_.scale * alpha);
}

double hat(const Symbol& sym, double u) { return sym.hat_closed(u); }

namespace detail {

double cos_transform(const Symbol& sym, double freq, double tol_i) {
  const double au = std::abs(freq);
  auto f = [&](double t) { return sym.eval(t) * std::cos(au * t); };

  if (sym.support_end() < kInf || !sym.algebraic_tail() || au < 1e-13) {
    HalfLineOptions opt;
    opt.tol = tol_i;
    opt.osc_freq = au;
    opt.support_end = sym.support_end();
    opt.tail_bound = [&sym](double T) { return sym.tail_mass_bound(T); };
    return integrate_half_line(f, opt).value;
  }

  // Algebraic tail with genuine oscillation: integrate a base region, then
  // accelerate the alternating half-period series by iterated averaging.
  double t_switch = 1.0;
  while (sym.tail_mass_bound(t_switch) > 0.1 * sym.l1_norm() || t_switch < 4.0 / au)
    t_switch *= 2.0;

  double base = integrate_oscillatory_panel(f, 0.0, std::min(1.0, t_switch), 16, au);
  for (double a = 1.0; a < t_switch; a *= 2.0)
    base += integrate_oscillatory_panel(f, a, 2.0 * a, 16, au);

  const double half = kPi / au;
  const double m0 = std::ceil(t_switch * au / kPi - 0.5);
  const double z0 = (m0 + 0.5) * half;
  base += integrate_oscillatory_panel(f, t_switch, z0, 16, au);

  std::vector<double> partial;
  partial.reserve(96);
  double sum = 0.0;
  for (int j = 0; j < 96; ++j) {
    const double h = integrate_panel(f, z0 + j * half, z0 + (j + 1) * half, 16);
    sum += h;
    partial.push_back(sum);
    if (std::abs(h) < 0.005 * tol_i && j >= 3) break;
  }

  // Averaging triangle; keep the diagonal value with the smallest last step.
  double best = partial.back(), best_step = kInf, prev_diag = partial[0];
  std::vector<double> row = partial;
  while (row.size() > 1) {
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
    row.pop_back();
    const double step = std::abs(row[0] - prev_diag);
    if (step < best_step) {
      best_step = step;
      best = row[0];
    }
    prev_diag = row[0];
  }
  if (best_step > 0.25 * tol_i)
    throw ConvergenceError("cos_transform: alternating tail failed to converge", best_step);
  return base + best;
}

}  // namespace detail

double hat_numeric(const Symbol& sym, double u, double tol) {
  if (!(tol > 0.0)) throw DomainError("hat_numeric: tol must be > 0");
  return detail::cos_transform(sym, std::abs(u), 0.9 * tol * kPi) / kPi;
}

IntegralResult log_moment(const Symbol& sym, double delta) {
  if (delta < 0.0) throw DomainError("log_moment: delta must be >= 0");
  auto f = [&](double t) {
    return sym.eval(t) * std::pow(std::log(2.0 + t), delta);
  };
  HalfLineOptions opt;
  opt.tol = 0.5e-8;
  opt.support_end = sym.support_end();
  IntegralResult r = integrate_half_line(f, opt);
  r.value *= 2.0;
  return r;
}

double superlevel_measure(const Symbol& sym, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("superlevel_measure: lambda must be > 0");
  if (lambda >= sym.sup_norm()) return 0.0;
  const FamilyOps& fam = kFamilies[sym.family_];
  const double s = sym.id().scale;
  if (fam.superlevel) return s * fam.superlevel(sym.id().alpha, s * lambda);

  // Even strictly decreasing profile: bisect for the crossing point.
  double lo = 0.0, hi = 1.0;
  while (sym.eval(hi) > lambda) {
    hi *= 2.0;
    if (hi > 1e300) return kInf;
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (sym.eval(mid) > lambda ? lo : hi) = mid;
  }
  return lo + hi;
}

IntegralResult hardy_condition(const Symbol& sym) {
  auto f = [&](double u) { return std::abs(sym.hat_closed(u)); };
  HalfLineOptions opt;
  opt.tol = 0.5e-8;
  const double end = sym.support_end();
  opt.osc_freq = end < kInf ? end : 0.0;
  IntegralResult r = integrate_half_line(f, opt);
  r.value *= 2.0;
  return r;
}

double kernel_value(const Symbol& sym, double x, double y) {
  if (!(x > 0.0 && y > 0.0)) throw DomainError("kernel_value: requires x, y > 0");
  return sym.hat_closed(std::log(x / y)) / std::sqrt(x * y);
}

namespace {

double hilbert_kernel(double a, double x, double y) {
  const double r = std::pow(x / y, 0.5 * a);
  return 1.0 / ((r + 1.0 / r) * std::sqrt(x * y));
}
double min_kernel(double a, double x, double y) {
  return std::pow(std::min(x, y) / std::max(x, y), a) / std::sqrt(x * y);
}
double power_kernel(double a, double x, double y) {
  return std::pow(x * y, 0.5 * (a - 1.0)) / std::pow(x + y, a);
}
double log_kernel(double, double x, double y) {
  if (x == y) return 1.0 / x;
  return std::log(x / y) / (x - y);
}
double sinhratio_kernel(double a, double x, double y) {
  if (x == y) return 2.0 * a / x;
  return (std::pow(x / y, a) - std::pow(y / x, a)) / (x - y);
}
double sinc_kernel(double, double x, double y) {
  if (x == y) return 1.0 / x;
  const double l = std::log(x / y);
  return std::sin(l) / (l * std::sqrt(x * y));
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"hilbert", true, 1.0, "alpha > 0", "pi/(alpha cosh(pi t/alpha))",
       "1/(2 cosh(alpha u/2))", "1/((x/y)^(a/2)+(y/x)^(a/2))/sqrt(xy)",
       "alpha=1: the classical Hilbert matrix 1/(x+y)", hilbert_kernel},
      {"min", true, 1.0, "alpha > 0", "2 alpha/(alpha^2+t^2)", "exp(-alpha|u|)",
       "min(x,y)^alpha/(max(x,y)^alpha sqrt(xy))", "min-type kernel", min_kernel},
      {"power", true, 1.0, "alpha > 0", "|Gamma(alpha/2+it)|^2/Gamma(alpha)",
       "(2 cosh(u/2))^(-alpha)", "(xy)^((a-1)/2)/(x+y)^a",
       "integer alpha: compare the Pochhammer matrix", power_kernel},
      {"log", false, 1.0, "ignored", "pi^2/cosh^2(pi t)", "u/(2 sinh(u/2))",
       "log(x/y)/(x-y)", "", log_kernel},
      {"sinhratio", true, 0.25, "0 < alpha < 1/2",
       "2 pi sin(2 pi alpha)/(cos(2 pi alpha)+cosh(2 pi t))", "sinh(alpha u)/sinh(u/2)",
       "((x/y)^a-(y/x)^a)/(x-y)", "", sinhratio_kernel},
      {"sinc", false, 1.0, "ignored", "pi on (-1,1), else 0", "sin(u)/u",
       "sin(log(x/y))/(log(x/y) sqrt(xy))", "spectral density concentrated at 0 and pi",
       sinc_kernel},
  };
  return entries;
}

}  // namespace hardy
