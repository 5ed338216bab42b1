#include "hardy/special.hpp"

#include <cmath>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;

constexpr double kLanczosC[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * 3.14159265358979323846);

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.real() < 0.5)
    throw DomainError("log_gamma: requires Re z >= 0.5; use re_log_gamma for reflection");
  std::complex<double> acc(kLanczosC[0], 0.0);
  for (int k = 1; k < 15; ++k) acc += kLanczosC[k] / (z - 1.0 + static_cast<double>(k));
  const std::complex<double> base = z + (kLanczosG - 0.5);
  return kHalfLog2Pi + (z - 0.5) * std::log(base) - base + std::log(acc);
}

double re_log_gamma(double a, double t) {
  if (!(a > 0.0)) throw DomainError("re_log_gamma: requires a > 0");
  if (a >= 0.5) return log_gamma(std::complex<double>(a, t)).real();
  // Reflection: |Gamma(z)|^2 |Gamma(1-z)|^2 |sin(pi z)|^2 = pi^2, and
  // |sin(pi(a+it))|^2 = sin(pi a)^2 + sinh(pi t)^2.
  const double pi = 3.14159265358979323846;
  const double s = std::sin(pi * a);
  double log_sin_abs2;
  const double x = pi * std::abs(t);
  if (x < 1.0) {
    const double sh = std::sinh(x);
    log_sin_abs2 = std::log(s * s + sh * sh);
  } else {
    // log(s^2 + sinh(x)^2) with sinh(x) = e^x (1 - e^{-2x}) / 2
    const double log_sinh = x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0);
    log_sin_abs2 = 2.0 * log_sinh + std::log1p(s * s * std::exp(-2.0 * log_sinh));
  }
  return std::log(pi) - 0.5 * log_sin_abs2 - re_log_gamma(1.0 - a, t);
}

double log_gamma_abs2(double a, double t) {
  return std::exp(2.0 * re_log_gamma(a, t));
}

double ln_two_cosh(double x) {
  const double ax = std::abs(x);
  return ax + std::log1p(std::exp(-2.0 * ax));
}

double inv_two_cosh(double x) {
  const double ax = std::abs(x);
  const double e = std::exp(-ax);
  return e / (1.0 + e * e);
}

double harmonic_number(std::int64_t n) {
  if (n < 0) throw DomainError("harmonic_number: requires n >= 0");
  double sum = 0.0, comp = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double term = 1.0 / static_cast<double>(k) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum;
}

}  // namespace hardy
