#include "hardy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>

#include "hardy/factorization.hpp"
#include "hardy/linalg.hpp"
#include "hardy/operators.hpp"
#include "hardy/special.hpp"
#include "hardy/szego.hpp"

namespace hardy {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;

/// Memoizes dense spectra so criteria sharing a matrix solve it once.
struct Ctx {
  bool quick = false;
  std::map<std::string, Spectrum> k_cache;
  std::map<std::string, Spectrum> t_cache;

  const Spectrum& k_spectrum(const Symbol& sym, std::size_t n) {
    std::string key = sym.id().str() + "#" + std::to_string(n);
    auto it = k_cache.find(key);
    if (it == k_cache.end())
      it = k_cache.emplace(key, eigh(build_K(sym, n).entries)).first;
    return it->second;
  }

  const Spectrum& t_spectrum(const Symbol& sym, double n_param, std::size_t nodes) {
    std::string key = sym.id().str() + "#" + std::to_string(n_param) + "#" +
                      std::to_string(nodes);
    auto it = t_cache.find(key);
    if (it == t_cache.end())
      it = t_cache.emplace(key, eigh(build_T(sym, n_param, nodes).entries)).first;
    return it->second;
  }
};

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

// Compensated harmonic sum in reverse order: an oracle independent of
// harmonic_number's forward accumulation.
double harmonic_reverse(std::size_t n) {
  double s = 0.0, c = 0.0;
  for (std::size_t k = n; k >= 1; --k) {
    double y = 1.0 / static_cast<double>(k) - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

// Deterministic xorshift-based uniform in [-1, 1] (mt19937 streams are
// standardized, but keep the generator fully explicit anyway).
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }
  std::size_t index(std::size_t mod) { return static_cast<std::size_t>(next() % mod); }
};

CheckResult c01_exact_2x2(Ctx&) {
  CheckResult r;
  r.check = "C01_exact_2x2_eig";
  KernelMatrix km = build_K(catalog_symbol("hilbert"), 2);
  Spectrum s = eigh(km.entries);
  const double a = km.entries(0, 0), b = km.entries(0, 1), c = km.entries(1, 1);
  const double mid = 0.5 * (a + c);
  const double disc = std::hypot(0.5 * (a - c), b);
  const double lo_ref = 0.018999843945102868;
  const double hi_ref = 0.731000156054897132;
  double dev = std::max({std::abs(s.values[0] - (mid - disc)),
                         std::abs(s.values[1] - (mid + disc)),
                         std::abs(s.values[0] - lo_ref),
                         std::abs(s.values[1] - hi_ref)});
  r.value = dev;
  r.expected = 0.0;
  r.tol = 1e-12;
  r.pass = dev <= r.tol;
  r.detail = "eig=(" + format_double(s.values[0]) + ", " + format_double(s.values[1]) +
             ") vs quadratic-formula and reference values";
  return r;
}

CheckResult c02_fourier_pairs(Ctx& ctx) {
  CheckResult r;
  r.check = "C02_fourier_pair_suite";
  const std::size_t pts = ctx.quick ? 101 : 401;
  double worst = 0.0;
  std::string worst_sym = "-";
  for (const CatalogEntry& entry : catalog()) {
    Symbol sym = catalog_symbol(entry.name, entry.default_alpha);
    for (std::size_t i = 0; i < pts; ++i) {
      double u = -10.0 + 20.0 * static_cast<double>(i) / static_cast<double>(pts - 1);
      double dev = std::abs(sym.hat_closed(u) - hat_numeric(sym, u, 1e-10));
      if (dev > worst) {
        worst = dev;
        worst_sym = entry.name;
      }
    }
  }
  r.value = worst;
  r.expected = 0.0;
  r.tol = 1e-8;
  r.pass = worst <= r.tol;
  r.detail = "worst symbol: " + worst_sym + " over " + std::to_string(pts) +
             " points in [-10,10]";
  return r;
}

CheckResult c03_gamma_identities(Ctx&) {
  CheckResult r;
  r.check = "C03_gamma_identities";
  double worst = 0.0;
  const std::size_t pts = 501;
  for (std::size_t i = 0; i < pts; ++i) {
    double t = -5.0 + 10.0 * static_cast<double>(i) / static_cast<double>(pts - 1);
    double half = log_gamma_abs2(0.5, t);
    double ref_half = kPi / std::cosh(kPi * t);
    worst = std::max(worst, std::abs(half - ref_half));
    double one = log_gamma_abs2(1.0, t);
    double ref_one = t == 0.0 ? 1.0 : kPi * t / std::sinh(kPi * t);
    worst = std::max(worst, std::abs(one - ref_one));
  }
  r.value = worst;
  r.expected = 0.0;
  r.tol = 1e-10;
  r.pass = worst <= r.tol;
  r.detail = "|Gamma(1/2+it)|^2 and |Gamma(1+it)|^2 on [-5,5]";
  return r;
}

CheckResult c04_trace_identity(Ctx& ctx) {
  CheckResult r;
  r.check = "C04_trace_identity";
  const std::size_t n = ctx.quick ? 100 : 1000;
  double worst = 0.0;
  for (const CatalogEntry& entry : catalog()) {
    Symbol sym = catalog_symbol(entry.name, entry.default_alpha);
    auto [lhs, rhs] = trace_identity(sym, n);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  r.value = worst;
  r.expected = 0.0;
  r.tol = 1e-12;
  r.pass = worst <= r.tol;
  r.detail = "relative gap, all six symbols, n=" + std::to_string(n);
  return r;
}

CheckResult c05_szego_identity(Ctx& ctx) {
  CheckResult r;
  r.check = "C05_szego_identity_g";
  Symbol sym = catalog_symbol("hilbert");
  TestFunction g = TestFunction::power(1);
  double r256 = szego_ratio(ctx.k_spectrum(sym, 256), g, 256);
  double r1024 = szego_ratio(ctx.k_spectrum(sym, 1024), g, 1024);
  double r4096 = szego_ratio(ctx.k_spectrum(sym, 4096), g, 4096);
  r.value = r4096;
  r.expected = 0.534706;
  r.tol = 1e-5;
  bool monotone = r256 > r1024 && r1024 > r4096 && r4096 > 0.5;
  r.pass = std::abs(r.value - r.expected) <= r.tol && monotone;
  r.detail = "sequence (" + format_double(r256) + ", " + format_double(r1024) + ", " +
             format_double(r4096) + ") decreasing toward 0.5: " +
             (monotone ? "yes" : "no");
  return r;
}

CheckResult c06_szego_square(Ctx& ctx) {
  CheckResult r;
  r.check = "C06_szego_square_g";
  TestFunction g = TestFunction::power(2);
  const std::vector<std::size_t> ns = {256, 1024, 4096};
  double worst_extrap = 0.0;
  bool ok = true;
  std::string detail;
  for (const char* name : {"hilbert", "min"}) {
    Symbol sym = catalog_symbol(name);
    double predicted = szego_limit(sym, g, 1e-8);
    ok = ok && std::abs(predicted - 1.0) <= 1e-6;
    std::vector<double> ratios;
    for (std::size_t n : ns) ratios.push_back(szego_ratio(ctx.k_spectrum(sym, n), g, n));
    bool monotone;
    if (std::string(name) == "hilbert") {
      // Approaches 1 from below.
      monotone = ratios[0] < ratios[1] && ratios[1] < ratios[2] && ratios[2] < 1.0;
    } else {
      // Tr K_n^2 = log n + gamma + o(1) for this symbol, so the ratio
      // approaches 1 from above; require the gap to shrink instead.
      monotone = std::abs(ratios[0] - 1.0) > std::abs(ratios[1] - 1.0) &&
                 std::abs(ratios[1] - 1.0) > std::abs(ratios[2] - 1.0);
    }
    double extrap = richardson_loglimit(ns, ratios);
    worst_extrap = std::max(worst_extrap, std::abs(extrap - 1.0));
    ok = ok && monotone;
    detail += std::string(name) + ": predicted=" + format_double(predicted) +
              " M=(" + format_double(ratios[0]) + ", " + format_double(ratios[1]) +
              ", " + format_double(ratios[2]) + ") extrap=" + format_double(extrap) + "; ";
  }
  r.value = worst_extrap;
  r.expected = 0.0;
  r.tol = 0.1;
  r.pass = ok && worst_extrap <= r.tol;
  r.detail = detail + "worst |extrapolated - 1|";
  return r;
}

CheckResult c07_moment_gap(Ctx& ctx) {
  CheckResult r;
  r.check = "C07_moment_gap";
  Symbol sym = catalog_symbol("hilbert");
  const std::vector<std::size_t> ns = {256, 1024, 4096};
  std::vector<double> gap2;
  for (std::size_t n : ns) {
    const Spectrum& ks = ctx.k_spectrum(sym, n);
    const Spectrum& ts =
        ctx.t_spectrum(sym, static_cast<double>(n), default_t_nodes(static_cast<double>(n)));
    gap2.push_back(ks.sum_squares() - ts.sum_squares());
  }
  double cap = 1.5 * std::abs(gap2[0]) + 0.1;
  bool bounded = true;
  for (double gap : gap2) bounded = bounded && std::abs(gap) <= cap;

  double g1 = moment_gap(sym, 1, 4096);
  double oracle = sym.hat_zero() * (harmonic_reverse(4096) - std::log(4096.0));
  double g1_small = moment_gap(sym, 1, 256);
  bool trending = std::abs(g1 - 0.5 * kEulerGamma) < std::abs(g1_small - 0.5 * kEulerGamma);
  r.value = g1;
  r.expected = 0.288668865123489579;
  r.tol = 1e-9;
  r.pass = bounded && trending && std::abs(g1 - r.expected) <= r.tol &&
           std::abs(g1 - oracle) <= r.tol;
  r.detail = "m=2 gaps (" + format_double(gap2[0]) + ", " + format_double(gap2[1]) + ", " +
             format_double(gap2[2]) + ") bounded: " + (bounded ? "yes" : "no") +
             "; m=1 trending to gamma/2: " + (trending ? "yes" : "no");
  return r;
}

CheckResult c08_dn_plateau(Ctx& ctx) {
  CheckResult r;
  r.check = "C08_dn_plateau";
  double rank1 = dn_trace_norm(catalog_symbol("hilbert"), 1);
  r.value = rank1;
  r.expected = 0.5;
  r.tol = 1e-5;
  bool plateau = true;
  std::string seq = "skipped";
  if (!ctx.quick) {
    Symbol sym = catalog_symbol("min");
    std::vector<double> v;
    for (std::size_t n : {std::size_t{16}, std::size_t{64}, std::size_t{256}, std::size_t{1024}})
      v.push_back(dn_trace_norm(sym, n));
    double d1 = std::abs(v[1] - v[0]);
    double d2 = std::abs(v[2] - v[1]);
    double d3 = std::abs(v[3] - v[2]);
    plateau = d1 > d2 && d2 > d3;
    seq = "(" + format_double(v[0]) + ", " + format_double(v[1]) + ", " +
          format_double(v[2]) + ", " + format_double(v[3]) + ")";
  }
  r.pass = std::abs(rank1 - 0.5) <= r.tol && plateau;
  r.detail = "min trace norms " + seq + ", successive differences strictly decreasing: " +
             (plateau ? "yes" : "no");
  return r;
}

CheckResult c09_eta_norm(Ctx&) {
  CheckResult r;
  r.check = "C09_eta_norm_bound";
  auto [zh, eh] = gram_operator_norms(catalog_symbol("hilbert"), 100, 0.0, 512);
  auto [zm, em] = gram_operator_norms(catalog_symbol("min"), 100, 0.0, 512);
  (void)zh;
  (void)zm;
  double overshoot = std::max(eh - kPi, em - 2.0);
  r.value = overshoot;
  r.expected = 0.0;
  r.tol = 0.01;
  r.pass = overshoot <= r.tol;
  r.detail = "eta norms: hilbert=" + format_double(eh) + " (sup pi), min=" +
             format_double(em) + " (sup 2)";
  return r;
}

CheckResult c10_eigen_emergence(Ctx& ctx) {
  CheckResult r;
  r.check = "C10_eigenvalue_emergence";
  Symbol base = catalog_symbol("min");
  const std::size_t n = 2000;
  auto deviation = [&](double alpha) {
    Symbol scaled = scale_symbol(base, alpha);
    const Spectrum& s = ctx.k_spectrum(scaled, n);
    double h0 = scaled.hat_zero();
    double dev = 0.0;
    for (int j = 1; j <= 5; ++j)
      dev = std::max(dev, std::abs(s.values[n - static_cast<std::size_t>(j)] - h0 / j));
    return dev;
  };
  double d20 = deviation(20.0);
  double d40 = deviation(40.0);
  const Spectrum& s40 = ctx.k_spectrum(scale_symbol(base, 40.0), n);
  std::size_t count = s40.count_above(0.3);
  std::size_t ref_count = 0;
  for (std::size_t j = 1; j <= n; ++j)
    if (1.0 / static_cast<double>(j) > 0.35) ++ref_count;
  r.value = d40 / d20;
  r.expected = 0.7;
  r.tol = 0.0;
  r.pass = d40 <= 0.7 * d20 && count >= ref_count;
  r.detail = "d(20)=" + format_double(d20) + " d(40)=" + format_double(d40) +
             "; count above 0.3 at alpha=40: " + std::to_string(count) +
             " (needs >= " + std::to_string(ref_count) + ")";
  return r;
}

CheckResult c11_sinc_counting(Ctx& ctx) {
  CheckResult r;
  r.check = "C11_sinc_counting";
  const std::size_t n = 4096;
  const Spectrum& s = ctx.k_spectrum(catalog_symbol("sinc"), n);
  double c1 = counting_ratio(s, 1.0, n);
  double c2 = counting_ratio(s, 2.0, n);
  const double target = 1.0 / kPi;
  r.value = std::max(std::abs(c1 - target), std::abs(c2 - target));
  r.expected = 0.0;
  r.tol = 0.12;
  bool close = std::abs(c1 - c2) <= 0.05;
  r.pass = r.value <= r.tol && close;
  r.detail = "count/log n at lambda=1: " + format_double(c1) + ", lambda=2: " +
             format_double(c2) + " (target 1/pi=" + format_double(target) +
             "), difference within 0.05: " + (close ? "yes" : "no");
  return r;
}

CheckResult c12_pochhammer(Ctx&) {
  CheckResult r;
  r.check = "C12_pochhammer_trace_norm";
  Symbol sym = catalog_symbol("power", 2.0);
  std::vector<double> norms;
  for (std::size_t n : {std::size_t{100}, std::size_t{400}, std::size_t{1600}}) {
    KernelMatrix k = build_K(sym, n);
    KernelMatrix b = build_pochhammer(2, n);
    norms.push_back(trace_norm(k.entries - b.entries));
  }
  double growth = norms[2] / norms[1];
  r.value = growth;
  r.expected = 1.05;
  r.tol = 0.0;
  r.pass = growth < 1.05;
  r.detail = "trace norms (" + format_double(norms[0]) + ", " + format_double(norms[1]) +
             ", " + format_double(norms[2]) + "), growth 400->1600 = " +
             format_double(growth);
  return r;
}

CheckResult c13_quadratic_form(Ctx& ctx) {
  CheckResult r;
  r.check = "C13_quadratic_form_oracle";
  const int n_vectors = ctx.quick ? 5 : 20;
  Rng rng(0x9e3779b97f4a7c15ULL);
  double worst = 0.0;
  double worst_psd = 0.0;
  double worst_mono = 0.0;
  Symbol sr1 = catalog_symbol("sinhratio", 0.1);
  Symbol sr2 = catalog_symbol("sinhratio", 0.2);
  Symbol min1 = catalog_symbol("min", 1.0);
  Symbol min2 = catalog_symbol("min", 2.0);
  for (const CatalogEntry& entry : catalog()) {
    Symbol sym = catalog_symbol(entry.name, entry.default_alpha);
    for (int v = 0; v < n_vectors; ++v) {
      std::size_t len = 1 + rng.index(8);
      std::vector<double> a(len);
      for (double& x : a) x = rng.uniform();
      double norm2 = 0.0;
      for (double x : a) norm2 += x * x;
      double qf = quadratic_form(build_K(sym, len), a);
      double oracle = dirichlet_form_oracle(sym, a, 1e-8);
      worst = std::max(worst, std::abs(qf - oracle));
      worst_psd = std::max(worst_psd, -qf / std::max(norm2, 1e-30));
      double q1 = quadratic_form(build_K(sr1, len), a);
      double q2 = quadratic_form(build_K(sr2, len), a);
      double m1 = quadratic_form(build_K(min1, len), a);
      double m2 = quadratic_form(build_K(min2, len), a);
      worst_mono = std::max({worst_mono, (q1 - q2) / std::max(norm2, 1e-30),
                             (m2 - 2.0 * m1) / std::max(norm2, 1e-30)});
    }
  }
  r.value = worst;
  r.expected = 0.0;
  r.tol = 1e-6;
  r.pass = worst <= r.tol && worst_psd <= 1e-8 && worst_mono <= 1e-8;
  r.detail = "PSD violation " + format_double(worst_psd) + ", monotonicity violation " +
             format_double(worst_mono) + " (both need <= 1e-8), " +
             std::to_string(n_vectors) + " vectors per symbol";
  return r;
}

CheckResult c14_catalog_consistency(Ctx&) {
  CheckResult r;
  r.check = "C14_catalog_consistency";
  double worst = 0.0;
  for (const CatalogEntry& entry : catalog()) {
    Symbol sym = catalog_symbol(entry.name, entry.default_alpha);
    worst = std::max(worst, std::abs(sym.l1_norm() - 2.0 * kPi * sym.hat_zero()) /
                                sym.l1_norm());
    worst = std::max(worst, std::abs(sym.sup_norm() - sym.eval(0.0)) / sym.sup_norm());
    worst = std::max(worst, std::abs(sym.eval(1.3) - sym.eval(-1.3)));
    double kxy = entry.kernel_xy(entry.default_alpha, 2.0, 3.0);
    double kv = kernel_value(sym, 2.0, 3.0);
    worst = std::max(worst, std::abs(kxy - kv) / std::max(std::abs(kv), 1e-30));
    double homog = kernel_value(sym, 4.0, 6.0);
    worst = std::max(worst, std::abs(homog - 0.5 * kv) / std::max(std::abs(kv), 1e-30));
  }
  r.value = worst;
  r.expected = 0.0;
  r.tol = 1e-10;
  r.pass = worst <= r.tol;
  r.detail = "l1 = 2pi*hat(0), sup at 0, evenness, closed kernel match, homogeneity";
  return r;
}

}  // namespace

bool VerifyReport::passed() const {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return !results.empty();
}

VerifyReport run_acceptance(bool quick, std::ostream* progress) {
  Ctx ctx;
  ctx.quick = quick;
  using CheckFn = CheckResult (*)(Ctx&);
  std::vector<CheckFn> full = {c01_exact_2x2,   c02_fourier_pairs, c03_gamma_identities,
                               c04_trace_identity, c05_szego_identity, c06_szego_square,
                               c07_moment_gap,  c08_dn_plateau,    c09_eta_norm,
                               c10_eigen_emergence, c11_sinc_counting, c12_pochhammer,
                               c13_quadratic_form, c14_catalog_consistency};
  std::vector<CheckFn> smoke = {c01_exact_2x2, c02_fourier_pairs, c03_gamma_identities,
                                c04_trace_identity, c08_dn_plateau, c13_quadratic_form,
                                c14_catalog_consistency};
  const std::vector<CheckFn>& checks = quick ? smoke : full;
  VerifyReport report;
  report.quick = quick;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    CheckResult res = checks[i](ctx);
    if (progress) {
      *progress << "[" << (i + 1) << "/" << checks.size() << "] " << res.check << ": "
                << (res.pass ? "pass" : "FAIL") << std::endl;
    }
    report.results.push_back(std::move(res));
  }
  return report;
}

}  // namespace hardy
