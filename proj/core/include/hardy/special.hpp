#pragma once

#include <complex>
#include <cstdint>

namespace hardy {

/// Principal-branch log Gamma for Re z >= 0.5 (Lanczos, g = 607/128, 15 terms).
std::complex<double> log_gamma(std::complex<double> z);

/// Re log Gamma(a + i t) for real a > 0, any t; reflection handles a < 0.5.
double re_log_gamma(double a, double t);

/// |Gamma(a + i t)|^2 for a > 0, evaluated through log Gamma so large |t|
/// underflows gracefully instead of overflowing intermediates.
double log_gamma_abs2(double a, double t);

/// log(2 cosh x), stable for large |x|.
double ln_two_cosh(double x);

/// 1 / (2 cosh x) without overflow.
double inv_two_cosh(double x);

/// H_n = 1 + 1/2 + ... + 1/n with compensated summation. H_0 = 0.
double harmonic_number(std::int64_t n);

}  // namespace hardy
