// Acceptance suite. One PASS/FAIL line per criterion, followed by the
// individual measurements. Usage: acceptance [criterion ...], default all.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "hardylab/hardylab.hpp"

using namespace hardylab;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& text) {
    lines.push_back(std::string(ok ? "    ok    " : "    FAIL  ") + text);
    pass = pass && ok;
  }

  void check(bool ok, const char* fmt, double a, double b = NAN, double c = NAN) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, a, b, c);
    check(ok, std::string(buf));
  }
};

constexpr double kMu1 = 5.783185962946785;

// J_0 by its power series in long double; independent of the library.
long double series_j0(long double x) {
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 80; ++k) {
    term *= -(x * x / 4.0L) / ((long double)k * k);
    sum += term;
  }
  return sum;
}

double bisection_zero() {
  long double a = 2.0L;
  long double b = 3.0L;
  for (int i = 0; i < 200; ++i) {
    const long double m = 0.5L * (a + b);
    ((series_j0(a) < 0) == (series_j0(m) < 0) ? a : b) = m;
  }
  return static_cast<double>(0.5L * (a + b));
}

Outcome eigenvalue() {
  Outcome o;
  const double mu = spectrum::eigenmode(Dimension(3), 1).eigenvalue;
  const double z = bisection_zero();
  o.check(std::fabs(mu - z * z) <= 1e-9, "mu1 = %.15g, bisection oracle z^2 = %.15g", mu, z * z);
  o.check(std::fabs(mu - kMu1) <= 1e-9, "mu1 = %.15g against %.15g (tol 1e-9)", mu, kMu1);
  o.check(std::fabs(mu - 5.76) <= 0.005, "mu1 = %.6f against printed 5.76 at 2 decimals (tol 0.005)", mu);
  return o;
}

Outcome decomposition() {
  Outcome o;
  for (int N : {3, 4}) {
    double worst = 0.0;
    for (const auto& p : profiles::library(Dimension(N))) {
      for (double eps : quad::decimal_cutoffs(6)) {
        const auto b = hardy::breakdown(p, eps);
        worst = std::max(worst, std::fabs(b.residual) / (1 + std::fabs(b.I_annulus)));
      }
    }
    o.check(worst <= 1e-7, "N=%g: max |I - WD - L| / (1 + |I|) = %.3g (tol 1e-7)", N, worst);
  }
  return o;
}

Outcome singularity_energy() {
  Outcome o;
  for (int N : {3, 4}) {
    const Dimension d(N);
    for (const auto& p : {profiles::e1(d), profiles::bump(d)}) {
      const double v0 = *p.origin_value();
      const double target = d.singular_weight() * v0 * v0;
      const double L = hardy::singularity_limit(p).limit;
      o.check(std::fabs(L - target) <= 1e-5 * target, "L = %.12g, expected %.12g, N=%g", L, target, N);
    }
  }
  o.check(std::fabs(Dimension(3).singular_weight() - 2 * pi) < 1e-14, "N=3 weight %.15g = 2 pi", Dimension(3).singular_weight());
  o.check(std::fabs(Dimension(4).singular_weight() - 2 * pi * pi) < 1e-13, "N=4 weight %.15g = 2 pi^2",
          Dimension(4).singular_weight());
  return o;
}

Outcome norm_gap() {
  Outcome o;
  const Dimension d(3);
  const auto e1 = profiles::e1(d);
  const double pv = hardy::principal_value(e1).limit;
  const double cn = hardy::cutoff_norm(e1).limit;
  const double L = hardy::singularity_limit(e1).limit;
  o.check(std::fabs(pv - cn - L) <= 1e-5 * L, "I(e1) - ||e1||^2 = %.12g, L(e1) = %.12g", pv - cn, L);
  const auto unit = e1.scaled(1.0 / std::sqrt(hardy::l2_norm2(e1)));
  const double ray = spectrum::rayleigh(unit);
  o.check(std::fabs(ray - kMu1) <= 1e-8, "Rayleigh(normalised e1) = %.15g (tol 1e-8)", ray);
  o.check(std::fabs(hardy::l2_norm2(unit) - 1.0) <= 1e-12, "||normalised e1||^2 = %.15g", hardy::l2_norm2(unit));
  return o;
}

Outcome slow_classes() {
  Outcome o;
  const Dimension d(3);
  const auto osc = profiles::oscillating(d, 0.3);
  const auto lp = profiles::log_power(d, 0.3);
  const auto eps = quad::decimal_cutoffs(6);
  // I on annuli alone, over the decimal cutoffs
  const auto osc_pv = quad::integrate_to_limit([&](double e) { return hardy::annulus_functional(osc, e, 1.0); }, eps);
  const auto lp_pv = hardy::principal_value(lp);
  o.check(osc_pv.classification == quad::LimitClass::oscillating,
          "oscillating(0.3): I_annulus classified " + quad::to_string(osc_pv.classification));
  o.check(lp_pv.classification == quad::LimitClass::diverging,
          "log_power(0.3): I_annulus classified " + quad::to_string(lp_pv.classification));
  // A a int_1^inf t^{1-1/a} cos^2 t dt, and A a^2 / (1 - 2a)
  const double osc_exact = 0.80947707698588;
  const double lp_exact = 4 * pi * 0.09 / 0.4;
  const auto osc_cn = hardy::cutoff_norm(osc);
  const auto lp_cn = hardy::cutoff_norm(lp);
  o.check(osc_cn.classification == quad::LimitClass::converged && std::fabs(osc_cn.limit - osc_exact) <= 1e-4,
          "oscillating(0.3): I - L -> %.10g, oracle %.10g, defect %.3g", osc_cn.limit, osc_exact,
          std::fabs(osc_cn.limit - osc_exact));
  o.check(lp_cn.classification == quad::LimitClass::converged && std::fabs(lp_cn.limit - lp_exact) <= 1e-4,
          "log_power(0.3): I - L -> %.10g, closed form %.10g, defect %.3g", lp_cn.limit, lp_exact,
          std::fabs(lp_cn.limit - lp_exact));
  return o;
}

Outcome non_density() {
  Outcome o;
  const Dimension d(3);
  const auto b = profiles::bump(d);
  const double limit = 4 * pi * 36.0 / 20.0;  // A v(0)^2 int_1^2 t rho'^2
  const double naive = approx::naive_cutoff_defect(b, 1e-4);
  o.check(std::fabs(naive - limit) <= 1e-2 * limit, "naive defect(1e-4) = %.10g, limit %.10g", naive, limit);
  double cmin = INFINITY;
  double cmax = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const double C = approx::log_cutoff_defect(b, eps) * std::log(1 / eps);
    cmin = std::min(cmin, C);
    cmax = std::max(cmax, C);
  }
  o.check(cmax <= 1.2 * cmin, "log-cutoff constant C in [%.10g, %.10g] (spread <= 20%%)", cmin, cmax);
  return o;
}

Outcome kelvin_identities() {
  Outcome o;
  const Dimension d(3);
  for (const auto& p : {profiles::e1(d), profiles::bump(d), profiles::plateau(d)}) {
    for (double eps : {1e-2, 1e-3}) {
      const auto c = kelvin::identity_check(p, eps);
      o.check(std::fabs(c.defect) <= 1e-7, "energy identity defect %.3g at eps %g", c.defect, eps);
      o.check(std::fabs(c.trace_defect) <= 1e-10, "trace identity defect %.3g at eps %g", c.trace_defect, eps);
    }
  }
  const auto e1 = profiles::e1(d);
  const auto unit = e1.scaled(1.0 / std::sqrt(hardy::l2_norm2(e1)));
  const double ext = kelvin::exterior_principal_value(kelvin::kelvin_map(unit)).limit;
  const double target = kMu1 - 2 * pi;
  o.check(std::fabs(ext - target) <= 1e-3, "exterior functional of normalised image = %.10g, expected %.10g", ext,
          target);
  o.check(ext < 0.0, "exterior functional of normalised image negative: %.10g", ext);
  return o;
}

Outcome evolution_check() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const Dimension d(3);
  const evolution::FDGrid g{512, 0.5, 1e-4};
  for (const auto& p : {profiles::e1(d), profiles::bump(d)}) {
    evolution::FdRun run(p, g);
    run.advance_to(0.1);
    const auto f = evolution::evolve_spectral(spectrum::expand(p, 50), 0.1);
    const double dist = evolution::weighted_l2_distance(run, f);
    o.check(dist <= 1e-4, "weighted L2 distance FD vs spectral at t=0.1: %.3g", dist);
    std::vector<double> ts{0.01, 0.05, 0.1};
    double worst = 0.0;
    for (const auto& s : evolution::energy_trace(p, g, ts))
      worst = std::max(worst, std::fabs(s.dEdt_est - s.minus2dirichlet) / std::fabs(s.minus2dirichlet));
    for (const auto& s : evolution::energy_trace(spectrum::expand(p, 50), ts))
      worst = std::max(worst, std::fabs(s.dEdt_est - s.minus2dirichlet) / std::fabs(s.minus2dirichlet));
    o.check(worst <= 1e-3, "energy law |dE/dt + 2 D| / |2 D| max %.3g", worst);
    evolution::FdRun late(p, {512, 0.5, 1e-3});
    late.advance_to(1.0);
    const double e1 = late.energy();
    late.advance_to(2.0);
    const double slope = 0.5 * std::log(late.energy() / e1);
    o.check(std::fabs(slope + kMu1) <= 1e-3, "log-slope of ||v|| on [1, 2]: %.8g", slope);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.check(secs <= 30.0, "runtime %.2f s", secs);
  return o;
}

Outcome hardy_poincare() {
  Outcome o;
  const Dimension d(3);
  for (double R : {2.0, 4.0, 7.0}) {
    const auto h = wholespace::hardy_poincare_check(wholespace::bump_profile(d, R));
    o.check(std::fabs(h.defect) <= 1e-7, "I = J + L defect %.3g (support radius %g)", h.defect, R);
  }
  bool positive = true;
  double q64 = NAN;
  for (int n : {4, 8, 16, 32, 64}) {
    const auto r = wholespace::infimum_sequence(n, d);
    positive = positive && r.quotient > 0.0;
    if (n == 64) q64 = r.quotient;
  }
  o.check(positive, std::string("plateau quotients positive for n = 4..64"));
  o.check(q64 < 0.05, "plateau quotient at n=64: %.6g", q64);
  return o;
}

Outcome zero_energies() {
  Outcome o;
  const Dimension d(3);
  const auto p = wholespace::bump_profile(d, 7.0);
  const auto q = wholespace::traced_profile(d, 1.0);
  for (int m : {1, 2}) {
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      const auto e = wholespace::zero_singularity_energies(p, m, eps);
      o.check(e.L_plus >= 0.0 && -e.L_minus >= 0.0, "m=%g: L+ = %.6g, -L- = %.6g", m, e.L_plus, -e.L_minus);
    }
  }
  for (double eps : {1e-2, 1e-4}) {
    const auto e = wholespace::zero_singularity_energies(q, 1, eps);
    o.check(e.L_plus >= 0.0 && -e.L_minus >= 0.0, "rate 1 trace: L+ = %.6g, -L- = %.6g", e.L_plus, -e.L_minus);
  }
  const auto slow = wholespace::traced_profile(d, 0.25);
  const auto j = wholespace::j_functional(slow);
  o.check(!j.finite && j.gradient_class == quad::LimitClass::diverging, "rate 1/4 trace: gradient term %g (diverging)",
          j.gradient);
  const auto a = wholespace::zero_singularity_energies(slow, 1, 1e-4);
  const auto b = wholespace::zero_singularity_energies(slow, 1, 1e-6);
  o.check(b.L_plus > 5 * a.L_plus, "rate 1/4 trace: L+ grows %.6g -> %.6g", a.L_plus, b.L_plus);
  return o;
}

Outcome dim_reduction() {
  Outcome o;
  for (int N : {3, 4, 5}) {
    const auto p = profiles::e1(Dimension(N));
    const auto a = approx::dim_reduction(p, 1.0);
    const auto b = approx::dim_reduction(p, 7.0);
    o.check(std::fabs(a.ratio - 1.0 / (N - 2)) <= 1e-7, "N=%g: ratio %.15g", N, a.ratio);
    o.check(std::fabs(a.ratio - b.ratio) <= 1e-8, "N=%g: R=1 vs R=7 differ by %.3g", N, std::fabs(a.ratio - b.ratio));
  }
  return o;
}

Outcome subcritical() {
  Outcome o;
  const Dimension d(3);
  const double cs = d.critical();
  std::vector<double> c{0.0, 0.5 * cs, 0.9 * cs, cs - 1e-2, cs - 1e-4, cs - 1e-6, cs - 1e-8};
  const auto rows = spectrum::subcritical_limit(d, c);
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    monotone = monotone && std::fabs(rows[i + 1].hardy_norm2 - kMu1) < std::fabs(rows[i].hardy_norm2 - kMu1);
  o.check(monotone, std::string("gap to mu1 decreases monotonically along c -> c*"));
  const double gap = std::fabs(rows.back().hardy_norm2 - kMu1);
  o.check(gap <= 1e-3, "final gap at c = c* - 1e-8: %.3g", gap);
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c{
      {"eigenvalue mu1 = z01^2", eigenvalue},
      {"annulus decomposition", decomposition},
      {"singularity energy limit", singularity_energy},
      {"norm gap and Rayleigh quotient", norm_gap},
      {"oscillating and log-divergent classes", slow_classes},
      {"naive vs logarithmic cutoff", non_density},
      {"Kelvin identities and exterior functional", kelvin_identities},
      {"heat flow: grid vs spectral", evolution_check},
      {"whole-space decomposition and plateau infimum", hardy_poincare},
      {"energies at Bessel zeros", zero_energies},
      {"dimension reduction ratio", dim_reduction},
      {"subcritical limit", subcritical},
  };
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(criteria().size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    which.push_back(k);
  }
  if (which.empty())
    for (int k = 1; k <= static_cast<int>(criteria().size()); ++k) which.push_back(k);

  bool all = true;
  for (int k : which) {
    const auto& c = criteria()[k - 1];
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.lines.push_back(std::string("    error ") + e.what());
    }
    std::printf("[%s] C%02d %s\n", o.pass ? "PASS" : "FAIL", k, c.title);
    for (const auto& l : o.lines) std::printf("%s\n", l.c_str());
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
