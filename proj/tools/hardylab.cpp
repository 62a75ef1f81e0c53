// Command-line driver: runs experiment suites and writes CSV/JSON reports.
//
//   hardylab spectrum --dim 3 --modes 5
//   hardylab energy --dim 3 --profile e1 --eps-min 1e-6
//   hardylab all --out results
//
// Exit status: 0 when every check passes, 1 when a check fails, 2 on bad
// configuration.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardylab/hardylab.hpp"

namespace {

using namespace hardylab;
using report::Suite;

struct Options {
  int dim = 3;
  std::string profile = "e1";
  double eps_min = 1e-6;
  int modes = 50;
  double t_final = 0.1;
  int grid = 512;
  std::string out = "results";
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> eps_sequence(double eps_min) {
  std::vector<double> e;
  for (int j = 1; std::pow(10.0, -j) >= eps_min * (1 - 1e-12); ++j) e.push_back(std::pow(10.0, -j));
  return e;
}

double relative_gap(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

Suite run_spectrum(const Options& o) {
  const Dimension d(o.dim);
  Suite s("spectrum", o.dim);
  auto& modes = s.table("modes", {"k", "zero", "eigenvalue", "norm2"});
  for (const auto& m : spectrum::eigenmodes(d, o.modes)) {
    modes.add({static_cast<long long>(m.k), m.zero, m.eigenvalue, m.norm2});
  }
  const double mu1 = spectrum::eigenmode(d, 1).eigenvalue;
  s.near("mu1", mu1, 5.783185962946785, 1e-9);
  s.near("mu1_printed_2dp", mu1, 5.76, 0.005);

  const auto p = profiles::by_name(d, o.profile);
  auto& ray = s.table("rayleigh", {"profile", "cutoff_norm", "l2_norm2", "rayleigh"});
  const auto cn = hardy::cutoff_norm(p);
  const double l2 = hardy::l2_norm2(p);
  ray.add({p.name(), cn.limit, l2, cn.limit / l2});
  const double e1_ray = spectrum::rayleigh(profiles::e1(d));
  s.near("rayleigh_e1", e1_ray, mu1, 1e-8);
  if (cn.classification == quad::LimitClass::converged) s.require("rayleigh_" + p.name() + "_ge_mu1", cn.limit / l2, cn.limit / l2 >= mu1 - 1e-8);

  const double cs = d.critical();
  std::vector<double> cvals{0.0, 0.5 * cs, 0.9 * cs, cs - 1e-2, cs - 1e-4, cs - 1e-6, cs - 1e-8};
  auto rows = spectrum::subcritical_limit(d, cvals);
  auto& sub = s.table("subcritical", {"c", "order", "zero", "eigenvalue", "hardy_norm2", "gap"});
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double gap = std::fabs(rows[i].hardy_norm2 - mu1);
    sub.add({rows[i].c, rows[i].order, rows[i].zero, rows[i].eigenvalue, rows[i].hardy_norm2, gap});
    if (i > 0 && !(gap < std::fabs(rows[i - 1].hardy_norm2 - mu1))) monotone = false;
  }
  s.require("subcritical_monotone", rows.back().hardy_norm2, monotone);
  s.near("subcritical_final_gap", rows.back().hardy_norm2, mu1, 1e-3);
  return s;
}

Suite run_energy(const Options& o) {
  const Dimension d(o.dim);
  Suite s("energy", o.dim);
  const auto eps = eps_sequence(o.eps_min);
  const auto p = profiles::by_name(d, o.profile);
  auto& bt = s.table("breakdown", {"profile", "eps", "I_annulus", "L_eps", "weighted_dirichlet", "residual"});
  double worst = 0.0;
  for (const auto& q : profiles::library(d)) {
    for (double e : eps) {
      const auto b = hardy::breakdown(q, e);
      if (q.name() == p.name()) bt.add({q.name(), e, b.I_annulus, b.L_eps, b.weighted_dirichlet, b.residual});
      worst = std::max(worst, std::fabs(b.residual) / (1 + std::fabs(b.I_annulus)));
    }
  }
  if (bt.rows().empty()) {
    for (double e : eps) {
      const auto b = hardy::breakdown(p, e);
      bt.add({p.name(), e, b.I_annulus, b.L_eps, b.weighted_dirichlet, b.residual});
      worst = std::max(worst, std::fabs(b.residual) / (1 + std::fabs(b.I_annulus)));
    }
  }
  s.require("decomposition_residual", worst, worst <= 1e-7, 0.0, 1e-7);

  const double kA = d.singular_weight();
  auto& lim = s.table("limits", {"profile", "origin_class", "principal_value", "pv_class", "cutoff_norm",
                                 "cutoff_class", "singularity", "singularity_class"});
  for (const auto& q : profiles::library(d)) {
    const auto pv = hardy::principal_value(q);
    const auto cn = hardy::cutoff_norm(q);
    const auto L = hardy::singularity_limit(q);
    lim.add({q.name(), to_string(q.origin_class()), pv.limit, quad::to_string(pv.classification), cn.limit,
             quad::to_string(cn.classification), L.limit, quad::to_string(L.classification)});
  }
  for (const auto& q : {profiles::e1(d), profiles::bump(d)}) {
    const double v0 = *q.origin_value();
    s.near_rel("singularity_limit_" + q.name(), hardy::singularity_limit(q).limit, kA * v0 * v0, 1e-5);
  }
  const auto e1 = profiles::e1(d);
  const double gap = hardy::principal_value(e1).limit - hardy::cutoff_norm(e1).limit;
  s.near_rel("pv_minus_cutoff_e1", gap, hardy::singularity_limit(e1).limit, 1e-5);
  s.near("rayleigh_e1", spectrum::rayleigh(e1), spectrum::eigenmode(d, 1).eigenvalue, 1e-8);

  const auto osc = profiles::oscillating(d, 0.3);
  const auto lp = profiles::log_power(d, 0.3);
  const auto pv_osc = hardy::principal_value(osc);
  const auto pv_lp = hardy::principal_value(lp);
  s.require("oscillating_pv_class", pv_osc.limit, pv_osc.classification == quad::LimitClass::oscillating);
  s.require("log_power_pv_class", pv_lp.limit, pv_lp.classification == quad::LimitClass::diverging);
  // closed form for the log class: A a^2 / (1 - 2a)
  const double lp_exact = d.sphere_area() * 0.09 / 0.4;
  s.near_rel("log_power_cutoff_norm", hardy::cutoff_norm(lp).limit, lp_exact, 1e-4);
  const auto cn_osc = hardy::cutoff_norm(osc);
  s.require("oscillating_cutoff_converges", cn_osc.limit, cn_osc.classification == quad::LimitClass::converged);
  if (o.dim == 3) s.near_rel("oscillating_cutoff_norm", cn_osc.limit, 0.80947707698588, 1e-4);
  return s;
}

Suite run_evolve(const Options& o) {
  const Dimension d(o.dim);
  Suite s("evolve", o.dim);
  const auto p = profiles::by_name(d, o.profile);
  if (p.origin_class() == OriginClass::oscillating || p.origin_class() == OriginClass::log_divergent) {
    throw ConfigError("evolve needs a profile with a finite value at the origin");
  }
  const evolution::FDGrid g{o.grid, 0.5, 1e-4};
  const auto f0 = spectrum::expand(p, o.modes);
  evolution::FdRun run(p, g);
  run.advance_to(o.t_final);
  const auto ft = evolution::evolve_spectral(f0, o.t_final);
  auto& snap = s.table("profile", {"r", "fd", "spectral"});
  for (int i = 0; i <= 20; ++i) {
    const double r = i / 20.0;
    snap.add({r, run.value(r), r >= 1.0 ? 0.0 : ft.value(r)});
  }
  s.require("fd_vs_spectral_l2", evolution::weighted_l2_distance(run, ft),
            evolution::weighted_l2_distance(run, ft) <= 1e-4, 0.0, 1e-4);

  std::vector<double> times;
  for (double t : {0.01, 0.025, 0.05})
    if (t < o.t_final) times.push_back(t);
  times.push_back(o.t_final);
  auto& en = s.table("energy", {"solver", "t", "E", "dEdt", "minus2dirichlet", "flux_diag"});
  double worst = 0.0;
  for (const auto& e : evolution::energy_trace(p, g, times)) {
    en.add({std::string("fd"), e.t, e.E, e.dEdt_est, e.minus2dirichlet, e.flux_diag});
    worst = std::max(worst, relative_gap(e.dEdt_est, e.minus2dirichlet));
  }
  for (const auto& e : evolution::energy_trace(f0, times)) {
    en.add({std::string("spectral"), e.t, e.E, e.dEdt_est, e.minus2dirichlet, e.flux_diag});
    worst = std::max(worst, relative_gap(e.dEdt_est, e.minus2dirichlet));
  }
  s.require("energy_law", worst, worst <= 1e-3, 0.0, 1e-3);

  evolution::FdRun late(p, {o.grid, 0.5, 1e-3});
  late.advance_to(1.0);
  const double e1 = late.energy();
  late.advance_to(2.0);
  const double slope = 0.5 * std::log(late.energy() / e1);
  s.near("log_slope", slope, -spectrum::eigenmode(d, 1).eigenvalue, 1e-3);
  return s;
}

Suite run_kelvin(const Options& o) {
  const Dimension d(o.dim);
  Suite s("kelvin", o.dim);
  auto& id = s.table("identity", {"profile", "eps", "I_interior", "I_exterior", "L_interior", "L_exterior",
                                  "defect", "trace_defect"});
  double worst_i = 0.0;
  double worst_l = 0.0;
  for (const auto& p : profiles::library(d)) {
    if (p.deep_origin()) continue;
    for (double eps : {1e-2, 1e-3}) {
      const auto c = kelvin::identity_check(p, eps);
      id.add({p.name(), eps, c.I_interior, c.I_exterior, c.L_interior, c.L_exterior, c.defect, c.trace_defect});
      worst_i = std::max(worst_i, std::fabs(c.defect));
      worst_l = std::max(worst_l, std::fabs(c.trace_defect));
    }
  }
  s.require("identity_defect", worst_i, worst_i <= 1e-7, 0.0, 1e-7);
  s.require("trace_defect", worst_l, worst_l <= 1e-10, 0.0, 1e-10);

  auto& nt = s.table("norms", {"profile", "exterior_norm", "interior_cutoff_norm", "direct_class"});
  for (const auto& p : profiles::library(d)) {
    const auto n = kelvin::exterior_norm(kelvin::kelvin_map(p));
    nt.add({p.name(), n.direct, n.value, quad::to_string(n.direct_class)});
  }

  const auto e1 = profiles::e1(d);
  const auto unit = e1.scaled(1.0 / std::sqrt(hardy::l2_norm2(e1)));
  const double ext = kelvin::exterior_principal_value(kelvin::kelvin_map(unit)).limit;
  const double mu1 = spectrum::eigenmode(d, 1).eigenvalue;
  auto& et = s.table("exterior_e1", {"quantity", "value"});
  et.add({std::string("I_exterior"), ext});
  et.add({std::string("mu1_minus_kA"), mu1 - d.singular_weight()});
  s.near("exterior_functional_e1", ext, mu1 - d.singular_weight(), 1e-3);
  s.require("exterior_functional_e1_negative", ext, ext < 0.0);
  return s;
}

Suite run_poincare(const Options& o) {
  const Dimension d(o.dim);
  Suite s("poincare", o.dim);
  auto& hp = s.table("decomposition", {"profile", "I", "gradient", "mass", "L", "defect"});
  double worst = 0.0;
  for (double R : {2.0, 4.0, 7.0}) {
    const auto p = wholespace::bump_profile(d, R);
    const auto h = wholespace::hardy_poincare_check(p);
    hp.add({p.name(), h.I_value, h.gradient, h.mass, h.L, h.defect});
    worst = std::max(worst, std::fabs(h.defect));
  }
  s.require("I_equals_J_plus_L", worst, worst <= 1e-7, 0.0, 1e-7);

  auto& inf = s.table("plateau", {"n", "gradient", "mass", "quotient"});
  bool positive = true;
  double last = NAN;
  for (int n : {4, 8, 16, 32, 64}) {
    const auto r = wholespace::infimum_sequence(n, d);
    inf.add({static_cast<long long>(r.n), r.gradient, r.mass, r.quotient});
    positive = positive && r.quotient > 0.0;
    last = r.quotient;
  }
  s.require("plateau_quotient_positive", last, positive);
  s.require("plateau_quotient_n64", last, last < 0.05, NAN, 0.05);

  auto& ze = s.table("zero_energies", {"m", "eps", "L_plus", "L_minus"});
  const auto wide = wholespace::bump_profile(d, 7.0);
  bool signs = true;
  for (int m : {1, 2}) {
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
      const auto e = wholespace::zero_singularity_energies(wide, m, eps);
      ze.add({static_cast<long long>(m), eps, e.L_plus, e.L_minus});
      signs = signs && e.L_plus >= 0.0 && -e.L_minus >= 0.0;
    }
  }
  s.require("zero_energy_signs", 0.0, signs);

  auto& tr = s.table("trace_rate", {"rate", "eps", "L_plus", "L_minus", "gradient_class"});
  for (double a : {1.0, 0.25}) {
    const auto p = wholespace::traced_profile(d, a);
    const auto j = wholespace::j_functional(p);
    for (double eps : {1e-2, 1e-4, 1e-6}) {
      const auto e = wholespace::zero_singularity_energies(p, 1, eps);
      tr.add({a, eps, e.L_plus, e.L_minus, quad::to_string(j.gradient_class)});
    }
    if (a < 0.5) s.require("trace_rate_quarter_diverges", j.gradient, !j.finite);
  }
  return s;
}

Suite run_density(const Options& o) {
  const Dimension d(o.dim);
  Suite s("density", o.dim);
  const auto b = profiles::bump(d);
  const double limit = approx::naive_cutoff_limit(b);
  auto& cut = s.table("cutoffs", {"eps", "naive", "naive_limit", "log", "log_constant"});
  std::vector<double> C;
  for (double eps : eps_sequence(std::max(o.eps_min, 1e-6))) {
    const double l = approx::log_cutoff_defect(b, eps);
    cut.add({eps, approx::naive_cutoff_defect(b, eps), limit, l, l * std::log(1 / eps)});
    if (eps >= 1e-4 && eps <= 1e-2) C.push_back(l * std::log(1 / eps));
  }
  s.near_rel("naive_defect_1e-4", approx::naive_cutoff_defect(b, 1e-4), limit, 1e-2);
  const auto [cmin, cmax] = std::minmax_element(C.begin(), C.end());
  s.require("log_constant_spread", *cmax / *cmin - 1.0, *cmax <= 1.2 * *cmin, 0.0, 0.2);

  const auto e1 = profiles::e1(d);
  const double bound = approx::e1_obstruction_bound(e1);
  auto& ob = s.table("obstruction", {"depth", "value", "bound"});
  double best = INFINITY;
  bool above = true;
  for (double S : {5.0, 10.0, 20.0, 40.0, 80.0}) {
    const double v = approx::e1_obstruction(e1, approx::log_cutoff_approximant(e1, S));
    ob.add({S, v, bound});
    best = std::min(best, v);
    above = above && v >= bound;
  }
  s.require("obstruction_above_bound", best, above, bound);
  s.require("obstruction_within_5pct", best, best <= 1.05 * bound, bound, 0.05 * bound);

  auto& dr = s.table("dim_reduction", {"N", "R", "planar", "flat", "ratio"});
  double worst = 0.0;
  double spread = 0.0;
  for (int N : {3, 4, 5}) {
    const Dimension dn(N);
    const auto p = profiles::e1(dn);
    const auto a = approx::dim_reduction(p, 1.0);
    const auto c = approx::dim_reduction(p, 7.0);
    dr.add({static_cast<long long>(N), 1.0, a.planar_norm2, a.flat_norm2, a.ratio});
    dr.add({static_cast<long long>(N), 7.0, c.planar_norm2, c.flat_norm2, c.ratio});
    worst = std::max(worst, std::fabs(a.ratio - 1.0 / (N - 2)));
    spread = std::max(spread, std::fabs(a.ratio - c.ratio));
  }
  s.require("dim_reduction_ratio", worst, worst <= 1e-7, 0.0, 1e-7);
  s.require("dim_reduction_radius", spread, spread <= 1e-8, 0.0, 1e-8);

  auto& lt = s.table("level_truncation", {"level", "defect"});
  const auto lp = profiles::log_power(d, 0.3);
  double prev = INFINITY;
  bool decreasing = true;
  for (double n : {1.0, 2.0, 5.0, 10.0, 100.0}) {
    const double v = approx::level_truncation_defect(lp, n);
    lt.add({n, v});
    decreasing = decreasing && v < prev;
    prev = v;
  }
  s.require("level_truncation_decreasing", prev, decreasing);
  return s;
}

const std::map<std::string, std::function<Suite(const Options&)>>& suites() {
  static const std::map<std::string, std::function<Suite(const Options&)>> m{
      {"spectrum", run_spectrum}, {"energy", run_energy},     {"evolve", run_evolve},
      {"kelvin", run_kelvin},     {"poincare", run_poincare}, {"density", run_density},
  };
  return m;
}

void validate(const Options& o) {
  if (o.dim < 3) throw ConfigError("--dim must be >= 3");
  if (!(o.eps_min > 0.0 && o.eps_min < 0.1 * (1 + 1e-12))) throw ConfigError("--eps-min must lie in (0, 0.1]");
  if (o.modes < 1) throw ConfigError("--modes must be >= 1");
  if (!(o.t_final >= 1e-3)) throw ConfigError("--t-final must be at least 1e-3");
  if (o.grid < 64) throw ConfigError("--grid must be >= 64");
  try {
    profiles::by_name(Dimension(o.dim), o.profile);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

int run(const std::string& command, const Options& o) {
  validate(o);
  std::vector<std::string> names;
  if (command == "all") {
    names = {"spectrum", "energy", "evolve", "kelvin", "poincare", "density"};
  } else {
    names = {command};
  }
  bool ok = true;
  for (const auto& name : names) {
    const Suite s = suites().at(name)(o);
    s.write(o.out);
    int passed = 0;
    for (const auto& c : s.checks()) {
      passed += c.pass;
      if (!c.pass) std::printf("  FAIL %s: %s\n", name.c_str(), c.name.c_str());
    }
    std::printf("%s: %d/%zu checks passed\n", name.c_str(), passed, s.checks().size());
    ok = ok && s.passed();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical Hardy energies: experiment suites with CSV/JSON reports"};
  app.require_subcommand(1, 1);
  Options o;
  const char* commands[] = {"spectrum", "energy", "evolve", "kelvin", "poincare", "density", "all"};
  for (const char* c : commands) {
    auto* sub = app.add_subcommand(
        c, std::string(c) == "all" ? std::string("run every suite") : std::string("run the ") + c + " suite");
    sub->add_option("--dim", o.dim, "space dimension N >= 3")->capture_default_str();
    sub->add_option("--profile", o.profile, "profile name, kind or kind:param")->capture_default_str();
    sub->add_option("--eps-min", o.eps_min, "smallest cutoff radius")->capture_default_str();
    sub->add_option("--modes", o.modes, "number of radial modes")->capture_default_str();
    sub->add_option("--t-final", o.t_final, "final time for the flow")->capture_default_str();
    sub->add_option("--grid", o.grid, "grid unknowns M")->capture_default_str();
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, o);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
