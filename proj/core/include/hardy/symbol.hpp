#pragma once

#include <string>
#include <vector>

#include "hardy/quadrature.hpp"

namespace hardy {

/// Provenance tag carried by every symbol and derived matrix.
struct SymbolId {
  std::string family;
  double alpha = 1.0;
  double scale = 1.0;
  std::string str() const;
};

/// Even real integrable symbol phi with its Fourier transform
/// hat(u) = (1/2pi) integral of phi(t) e^{-itu} dt and tail metadata.
/// Immutable value type; all methods are pure.
class Symbol {
 public:
  const SymbolId& id() const { return id_; }

  double eval(double t) const;

  /// Closed-form hat(u); real and exactly even (evaluated through |u|).
  double hat_closed(double u) const;

  double hat_zero() const;
  double sup_norm() const;
  double l1_norm() const;
  bool nonnegative() const { return true; }

  /// Upper bound on the mass of |phi| outside [-T, T].
  double tail_mass_bound(double T) const;

  /// True when the tail decays slower than exponentially.
  bool algebraic_tail() const;

  /// phi vanishes outside [-support_end, support_end] (infinite if not compact).
  double support_end() const;

  /// Smallest power of two R with tail_mass_bound(R) <= 1e-8 * l1_norm.
  double default_r_cut() const;

 private:
  friend Symbol catalog_symbol(const std::string&, double);
  friend Symbol scale_symbol(const Symbol&, double);
  friend double superlevel_measure(const Symbol&, double);
  Symbol(int family, double alpha, double scale);
  int family_;
  SymbolId id_;
};

/// Construct a catalog symbol. Names: hilbert, min, power, log, sinhratio,
/// sinc. alpha is ignored by log and sinc; sinhratio requires 0 < alpha < 1/2.
Symbol catalog_symbol(const std::string& name, double alpha = 1.0);

/// The dilated symbol phi_a(t) = (1/a) phi(t/a), whose transform is hat(a u).
Symbol scale_symbol(const Symbol& sym, double alpha);

/// hat(u) via the closed form.
double hat(const Symbol& sym, double u);

/// hat(u) by adaptive quadrature of (1/pi) integral_0^inf phi(t) cos(tu) dt,
/// to absolute error tol. Independent of hat_closed.
double hat_numeric(const Symbol& sym, double u, double tol);

/// integral of |phi(t)| (log(2+|t|))^delta dt, delta >= 0.
IntegralResult log_moment(const Symbol& sym, double delta);

/// Lebesgue measure of {t: phi(t) > lambda}; 0 for lambda >= sup_norm.
double superlevel_measure(const Symbol& sym, double lambda);

/// integral of |hat(u)| du, with in-band divergence marker (diagnostic).
IntegralResult hardy_condition(const Symbol& sym);

/// Kernel value hat(log(x/y))/sqrt(xy) for x, y > 0.
double kernel_value(const Symbol& sym, double x, double y);

struct CatalogEntry {
  std::string name;
  bool uses_alpha;
  double default_alpha;
  std::string alpha_domain;
  std::string phi_form;
  std::string hat_form;
  std::string kernel_form;
  std::string literature;
  /// Closed kernel k(x,y) evaluated directly (no Fourier detour).
  double (*kernel_xy)(double alpha, double x, double y);
};

const std::vector<CatalogEntry>& catalog();

}  // namespace hardy
