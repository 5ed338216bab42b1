#include <doctest.h>

#include <cmath>
#include <random>

#include "hardy/errors.hpp"
#include "hardy/special.hpp"
#include "hardy/symbol.hpp"

using namespace hardy;

namespace {

constexpr double kPi = 3.14159265358979323846;

Symbol entry_symbol(const CatalogEntry& e) { return catalog_symbol(e.name, e.default_alpha); }

// Independent superlevel oracle: trapezoid count of {phi > lambda} on a fine grid.
double superlevel_numeric(const Symbol& sym, double lambda, double reach) {
  const std::size_t n = 400001;
  const double h = 2.0 * reach / static_cast<double>(n - 1);
  double measure = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -reach + h * static_cast<double>(i);
    if (sym.eval(t) > lambda) measure += (i == 0 || i == n - 1) ? 0.5 * h : h;
  }
  return measure;
}

}  // namespace

TEST_CASE("catalog basics") {
  REQUIRE(catalog().size() == 6);
  CHECK(catalog_symbol("hilbert", 1.0).hat_zero() == 0.5);
  CHECK(catalog_symbol("min", 1.0).hat_closed(0.0) == 1.0);
  CHECK(catalog_symbol("sinc").hat_zero() == 1.0);
  CHECK(catalog_symbol("log").hat_zero() == 1.0);
  CHECK(catalog_symbol("sinhratio", 0.25).hat_zero() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(hat(catalog_symbol("sinc"), 0.0) == 1.0);
  CHECK(catalog_symbol("power", 2.0).hat_zero() == 0.25);
}

TEST_CASE("catalog metadata is self-consistent") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    CHECK(!e.phi_form.empty());
    CHECK(!e.hat_form.empty());
    CHECK(!e.kernel_form.empty());
    REQUIRE(e.kernel_xy != nullptr);
    const Symbol sym = entry_symbol(e);
    CHECK(sym.sup_norm() > 0.0);
    CHECK(sym.l1_norm() > 0.0);
    CHECK(sym.hat_zero() > 0.0);
    // Direct kernel formula against the Fourier route.
    for (double x : {1.0, 2.0, 5.0})
      for (double y : {1.0, 3.0}) {
        const double direct = e.kernel_xy(e.default_alpha, x, y);
        const double via_hat = kernel_value(sym, x, y);
        CHECK(std::abs(direct - via_hat) <= 1e-12 * std::max(1.0, std::abs(direct)));
      }
  }
}

TEST_CASE("gamma identities pin the power family") {
  const Symbol p1 = catalog_symbol("power", 1.0);
  const Symbol p2 = catalog_symbol("power", 2.0);
  const Symbol hil = catalog_symbol("hilbert", 1.0);

  // |Gamma(1/2+it)|^2 = pi/cosh(pi t), |Gamma(1+it)|^2 = pi t/sinh(pi t).
  CHECK(std::abs(p1.eval(1.0) - 0.271014951399418348) <= 1e-12);
  CHECK(std::abs(p2.eval(1.0) - 0.272029054982133163) <= 1e-12);

  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double t = -5.0 + 0.1 * i;
    worst = std::max(worst, std::abs(p1.eval(t) - hil.eval(t)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("fourier pair suite: closed form vs quadrature") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    const Symbol sym = entry_symbol(e);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double u = -10.0 + 0.05 * i;
      worst = std::max(worst, std::abs(sym.hat_closed(u) - hat_numeric(sym, u, 1e-9)));
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("hat is exactly even") {
  for (const auto& e : catalog()) {
    const Symbol sym = entry_symbol(e);
    for (double u : {0.3, 1.7, 4.0, 9.5}) CHECK(hat(sym, u) == hat(sym, -u));
  }
}

TEST_CASE("dilation law") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> alpha_dist(0.5, 4.0);
  std::uniform_real_distribution<double> u_dist(-8.0, 8.0);
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    const Symbol sym = entry_symbol(e);
    for (int i = 0; i < 100; ++i) {
      const double a = alpha_dist(rng);
      const double u = u_dist(rng);
      const Symbol scaled = scale_symbol(sym, a);
      CHECK(std::abs(hat(scaled, u) - hat(sym, a * u)) <= 1e-12);
    }
    // Dilation preserves hat(0) and the L1 norm, divides the sup norm.
    const Symbol s3 = scale_symbol(sym, 3.0);
    CHECK(std::abs(s3.hat_zero() - sym.hat_zero()) <= 1e-14);
    CHECK(std::abs(s3.l1_norm() - sym.l1_norm()) <= 1e-12 * sym.l1_norm());
    CHECK(std::abs(s3.sup_norm() - sym.sup_norm() / 3.0) <= 1e-12 * sym.sup_norm());
  }
  const Symbol hil2 = scale_symbol(catalog_symbol("hilbert", 1.0), 2.0);
  CHECK(std::abs(hat(hil2, 1.3) - 1.0 / (2.0 * std::cosh(1.3))) <= 1e-14);
  CHECK(std::abs(scale_symbol(catalog_symbol("min", 1.0), 3.0).hat_zero() - 1.0) <= 1e-15);
}

TEST_CASE("superlevel measure") {
  const Symbol hil = catalog_symbol("hilbert", 1.0);
  const Symbol mn = catalog_symbol("min", 1.0);
  const Symbol sinc = catalog_symbol("sinc");

  CHECK(std::abs(superlevel_measure(hil, kPi / std::cosh(kPi)) - 2.0) <= 1e-12);
  CHECK(std::abs(superlevel_measure(mn, 1.0) - 2.0) <= 1e-12);
  CHECK(superlevel_measure(sinc, 1.5) == 2.0);
  CHECK(superlevel_measure(sinc, 4.0) == 0.0);

  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    const Symbol sym = entry_symbol(e);
    const double sup = sym.sup_norm();
    double prev = superlevel_measure(sym, 1e-3 * sup);
    for (double f : {0.01, 0.1, 0.3, 0.6, 0.9, 0.999}) {
      const double cur = superlevel_measure(sym, f * sup);
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
    CHECK(superlevel_measure(sym, sup) == 0.0);
    CHECK(superlevel_measure(sym, 2.0 * sup) == 0.0);
  }

  // Cross-check the closed forms against a grid-count oracle.
  CHECK(std::abs(superlevel_measure(hil, 0.8) - superlevel_numeric(hil, 0.8, 8.0)) <= 2e-4);
  CHECK(std::abs(superlevel_measure(mn, 0.25) - superlevel_numeric(mn, 0.25, 16.0)) <= 2e-4);
  const Symbol sr = catalog_symbol("sinhratio", 0.25);
  CHECK(std::abs(superlevel_measure(sr, 0.5) - superlevel_numeric(sr, 0.5, 8.0)) <= 2e-4);
  const Symbol lg = catalog_symbol("log");
  CHECK(std::abs(superlevel_measure(lg, 2.0) - superlevel_numeric(lg, 2.0, 8.0)) <= 2e-4);
}

TEST_CASE("hardy condition integral") {
  const IntegralResult hil = hardy_condition(catalog_symbol("hilbert", 1.0));
  CHECK(!hil.divergent);
  CHECK(std::abs(hil.value - kPi) <= 1e-6);

  const IntegralResult mn = hardy_condition(catalog_symbol("min", 1.0));
  CHECK(!mn.divergent);
  CHECK(std::abs(mn.value - 2.0) <= 1e-6);

  const IntegralResult lg = hardy_condition(catalog_symbol("log"));
  CHECK(!lg.divergent);
  CHECK(std::abs(lg.value - kPi * kPi) <= 1e-6);

  CHECK(hardy_condition(catalog_symbol("sinc")).divergent);
}

TEST_CASE("log moment") {
  const IntegralResult mn0 = log_moment(catalog_symbol("min", 1.0), 0.0);
  CHECK(!mn0.divergent);
  CHECK(std::abs(mn0.value - 2.0 * kPi) <= 1e-6);

  const IntegralResult sinc3 = log_moment(catalog_symbol("sinc"), 3.0);
  CHECK(!sinc3.divergent);
  CHECK(std::abs(sinc3.value - 4.959255594724017041) <= 1e-9);

  const IntegralResult h3a = log_moment(catalog_symbol("hilbert", 1.0), 3.0);
  const IntegralResult h3b = log_moment(catalog_symbol("hilbert", 1.0), 3.0);
  CHECK(!h3a.divergent);
  CHECK(h3a.value > 0.0);
  CHECK(h3a.value == h3b.value);  // deterministic quadrature

  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    CHECK(!log_moment(entry_symbol(e), 3.0).divergent);
  }
}

TEST_CASE("frozen transform values") {
  CHECK(std::abs(hat(catalog_symbol("log"), 2.0) - 0.850918128239321545) <= 1e-15);
  CHECK(std::abs(hat_numeric(catalog_symbol("log"), 2.0, 1e-8) - 0.850918128239321545) <= 1e-8);
  CHECK(std::abs(hat(catalog_symbol("min", 1.0), std::log(2.0)) - 0.5) <= 1e-15);
  CHECK(std::abs(hat(catalog_symbol("sinc"), kPi)) <= 1e-15);
  CHECK(std::abs(hat_numeric(catalog_symbol("sinc"), kPi, 1e-8)) <= 1e-8);
  CHECK(std::abs(hat_numeric(catalog_symbol("hilbert", 1.0), 0.0, 1e-10) - 0.5) <= 1e-10);
  CHECK(std::abs(kernel_value(catalog_symbol("min", 1.0), 1.0, 2.0) -
                 0.353553390593273762) <= 1e-15);
  CHECK(std::abs(kernel_value(catalog_symbol("hilbert", 1.0), 1.0, 1.0) - 0.5) <= 1e-15);
}

TEST_CASE("tail bounds dominate the true tail") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    const Symbol sym = entry_symbol(e);
    for (double big_t : {2.0, 8.0, 32.0}) {
      const double bound = sym.tail_mass_bound(big_t);
      CHECK(bound >= 0.0);
      // Rough lower estimate of the actual tail on [T, 4T].
      double tail = 0.0;
      const int steps = 4000;
      const double h = 3.0 * big_t / steps;
      for (int i = 0; i < steps; ++i) tail += std::abs(sym.eval(big_t + (i + 0.5) * h)) * h;
      CHECK(2.0 * tail <= bound + 1e-12);
    }
    CHECK(sym.tail_mass_bound(1e9) <= sym.tail_mass_bound(1.0));
  }
  CHECK(catalog_symbol("sinc").tail_mass_bound(1.0) == 0.0);
  CHECK(catalog_symbol("sinc").support_end() == 1.0);
  CHECK(catalog_symbol("min", 1.0).algebraic_tail());
  CHECK(!catalog_symbol("hilbert", 1.0).algebraic_tail());
}

TEST_CASE("parameter domain errors") {
  CHECK_THROWS_AS(catalog_symbol("nope", 1.0), DomainError);
  CHECK_THROWS_AS(catalog_symbol("hilbert", 0.0), DomainError);
  CHECK_THROWS_AS(catalog_symbol("hilbert", -1.0), DomainError);
  CHECK_THROWS_AS(catalog_symbol("sinhratio", 0.5), DomainError);
  CHECK_THROWS_AS(catalog_symbol("sinhratio", 0.75), DomainError);
  CHECK_NOTHROW(catalog_symbol("sinhratio", 0.25));
  CHECK_THROWS_AS(scale_symbol(catalog_symbol("min", 1.0), 0.0), DomainError);
  CHECK_THROWS_AS(log_moment(catalog_symbol("min", 1.0), -0.5), DomainError);
  CHECK_THROWS_AS(superlevel_measure(catalog_symbol("min", 1.0), 0.0), DomainError);
  CHECK_THROWS_AS(hat_numeric(catalog_symbol("min", 1.0), 1.0, 0.0), DomainError);
}

TEST_CASE("symbol id strings") {
  CHECK(catalog_symbol("hilbert", 1.0).id().str() == "hilbert(alpha=1)");
  const Symbol scaled = scale_symbol(catalog_symbol("min", 1.0), 2.0);
  CHECK(scaled.id().family == "min");
  CHECK(scaled.id().scale == 2.0);
}
