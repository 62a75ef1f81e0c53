#pragma once

// Approximation experiments in the weighted Dirichlet norm: cutting a profile
// off near the origin with a fixed-shape ramp fails to converge, a
// logarithmic ramp succeeds, and e1 keeps a fixed distance from H^1_0.
// Also the change of variables that turns the weighted planar energy into the
// flat energy in R^N.

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hardylab/hardy.hpp"
#include "hardylab/profiles.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab::approx {

/// Ramp rho on [1, 2] with rho(1) = 0, rho(2) = 1 and zero end slopes.
struct Smoothstep {
  ScalarFn value;
  ScalarFn slope;
};

/// rho(t) = 3(t-1)^2 - 2(t-1)^3.
inline Smoothstep cubic_smoothstep() {
  return {[](double t) {
            if (t <= 1.0) return 0.0;
            if (t >= 2.0) return 1.0;
            const double x = t - 1.0;
            return x * x * (3.0 - 2.0 * x);
          },
          [](double t) {
            if (t <= 1.0 || t >= 2.0) return 0.0;
            const double x = t - 1.0;
            return 6.0 * x * (1.0 - x);
          }};
}

/// int_1^2 t rho'(t)^2 dt.
inline double ramp_energy(const Smoothstep& rho) {
  auto f = [&](double t) {
    const double d = rho.slope(t);
    return t * d * d;
  };
  return quad::integrate(f, 1.0, 2.0, hardy::energy_quad()).value;
}

/// Weighted Dirichlet distance ||rho(r/eps) v - v||^2.
inline double naive_cutoff_defect(const RadialProfile& p, double eps, const Smoothstep& rho = cubic_smoothstep()) {
  if (!(eps > 0.0 && 2.0 * eps < p.outer())) throw std::invalid_argument("naive_cutoff_defect: eps out of range");
  auto f = [&](double r) {
    const double t = r / eps;
    const double g = (rho.value(t) - 1.0) * p.slope(r) + rho.slope(t) / eps * p.value(r);
    return g * g * r;
  };
  const auto cfg = hardy::energy_quad();
  const double inner = quad::integrate(f, 0.0, eps, cfg).value;
  const double ramp = quad::integrate(f, eps, 2.0 * eps, cfg).value;
  return p.dim().sphere_area() * (inner + ramp);
}

/// eps -> 0 limit of the naive defect: A v(0)^2 int_1^2 t rho'^2 dt.
inline double naive_cutoff_limit(const RadialProfile& p, const Smoothstep& rho = cubic_smoothstep()) {
  const double v0 = p.origin_value().value_or(NAN);
  return p.dim().sphere_area() * v0 * v0 * ramp_energy(rho);
}

/// Weighted Dirichlet distance between v and rho_eps v, where rho_eps is 0 on
/// (0, eps^2], log(r/eps^2)/log(1/eps) on [eps^2, eps], 1 beyond.
/// In the depth variable the ramp is linear between depths L and 2L, L = ln(1/eps).
inline double log_cutoff_defect(const RadialProfile& p, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("log_cutoff_defect: need 0 < eps < 1");
  const double L = -std::log(eps);
  auto ramp = [&](double s) {
    const double rho = s <= L ? 1.0 : (s >= 2.0 * L ? 0.0 : (2.0 * L - s) / L);
    const double drho = (s > L && s < 2.0 * L) ? -1.0 / L : 0.0;
    const double g = (rho - 1.0) * p.depth_slope(s) + drho * p.value_at_depth(s);
    return g * g;
  };
  const double A = p.dim().sphere_area();
  const double mid = hardy::depth_integral(p, ramp, L, 2.0 * L);
  const double tail = hardy::depth_integral(p, ramp, 2.0 * L, INFINITY);
  return A * (mid + tail);
}

/// p times the logarithmic cutoff that is 1 above radius e^{-S} and 0 below
/// e^{-2S}: an H^1_0 approximant of p.
inline RadialProfile log_cutoff_approximant(const RadialProfile& p, double S) {
  if (!(S > 0.0)) throw std::invalid_argument("log_cutoff_approximant: need S > 0");
  ProfileTraits t = p.traits();
  t.name = p.name() + "|cut";
  t.origin = OriginClass::vanishing;
  t.origin_value = 0.0;
  t.deep_origin = true;
  t.kinks.push_back(std::exp(-S));
  t.kinks.push_back(std::exp(-2.0 * S));
  auto rho = [S](double s) { return s <= S ? 1.0 : (s >= 2.0 * S ? 0.0 : (2.0 * S - s) / S); };
  auto drho = [S](double s) { return (s > S && s < 2.0 * S) ? -1.0 / S : 0.0; };
  return RadialProfile::from_depth(
      p.dim(),
      {[p, rho](double s) { return rho(s) * p.value_at_depth(s); },
       [p, rho, drho](double s) { return rho(s) * p.depth_slope(s) + drho(s) * p.value_at_depth(s); }},
      std::move(t));
}

/// Difference of two profiles in the same dimension.
inline RadialProfile difference(const RadialProfile& a, const RadialProfile& b) {
  if (!(a.dim() == b.dim())) throw std::invalid_argument("difference: dimension mismatch");
  ProfileTraits t;
  t.name = a.name() + "-" + b.name();
  t.origin = a.origin_class();
  if (a.origin_value() && b.origin_value()) t.origin_value = *a.origin_value() - *b.origin_value();
  t.kinks = a.kinks();
  t.kinks.insert(t.kinks.end(), b.kinks().begin(), b.kinks().end());
  t.deep_origin = a.deep_origin() || b.deep_origin();
  t.outer = std::max(a.outer(), b.outer());
  t.boundary_zero = a.boundary_zero() && b.boundary_zero();
  return RadialProfile::from_depth(
      a.dim(),
      {[a, b](double s) { return a.value_at_depth(s) - b.value_at_depth(s); },
       [a, b](double s) { return a.depth_slope(s) - b.depth_slope(s); }},
      std::move(t));
}

/// Principal-value Hardy functional of e1 - phi for phi vanishing at the
/// origin. Never below k A e1(0)^2.
inline double e1_obstruction(const RadialProfile& e1, const RadialProfile& phi) {
  if (phi.origin_class() != OriginClass::vanishing) {
    throw std::invalid_argument("e1_obstruction: phi must vanish at the origin");
  }
  const auto d = difference(e1, phi);
  const auto pv = hardy::principal_value(d);
  if (pv.classification != quad::LimitClass::converged) {
    throw hardy::DivergentNorm("e1_obstruction: principal value " + quad::to_string(pv.classification));
  }
  return pv.limit;
}

/// Lower bound for e1_obstruction.
inline double e1_obstruction_bound(const RadialProfile& e1) {
  const double v0 = e1.origin_value().value_or(NAN);
  return e1.dim().singular_weight() * v0 * v0;
}

struct DimReduction {
  double planar_norm2;  ///< A int_0^R v'^2 r dr
  double flat_norm2;    ///< A int_0^inf w'(t)^2 t^{N-1} dt
  double ratio;         ///< planar / flat, expected 1/(N-2)
  bool tail_ok;         ///< integrand negligible at both truncation ends
};

/// Profile on B_R, v_R(r) = v(r/R), carried to (0, inf) by
/// t = (ln(R/r))^{-1/(N-2)}, w(t) = v_R(r(t)). Both norms by separate quadratures.
inline DimReduction dim_reduction(const RadialProfile& p, double R) {
  if (!(R > 0.0)) throw std::invalid_argument("dim_reduction: need R > 0");
  const Dimension d = p.dim();
  const int N = d.value();
  const double A = d.sphere_area();
  const double q = N - 2.0;

  std::vector<double> cuts{0.0, R};
  for (double x : p.kinks()) cuts.push_back(x * R);
  std::sort(cuts.begin(), cuts.end());
  auto planar = [&](double r) {
    const double g = p.slope(r / R) / R;
    return g * g * r;
  };
  const auto cfg = hardy::energy_quad();
  const double pn = A * quad::integrate_pieces(planar, cuts, cfg).value;

  // t = e^tau; sigma = ln(R/r) = t^{-q}; dw/dt = dv/dsigma * (-q) t^{-q-1}
  auto flat = [&](double tau) {
    const double t = std::exp(tau);
    const double sigma = std::pow(t, -q);
    const double dw = p.depth_slope(sigma) * (-q) * std::pow(t, -q - 1.0);
    return dw * dw * std::pow(t, N - 1) * t;
  };
  const double lo = -40.0 / q;
  const double hi = 40.0 / q;
  std::vector<double> tc{lo, hi};
  for (double x : p.kinks()) {
    const double sigma = -std::log(x);
    if (sigma > 0.0) tc.push_back(-std::log(sigma) / q);
  }
  std::sort(tc.begin(), tc.end());
  const double fn = A * quad::integrate_pieces(flat, tc, cfg).value;
  const double edge = std::max(std::fabs(flat(lo)), std::fabs(flat(hi)));
  return {pn, fn, pn / fn, edge <= 1e-12 * std::max(fn, 1e-300)};
}

/// Weighted Dirichlet energy of v on the set where |v| > level.
/// Crossings of |v| = level are located on a log-depth grid and refined by bisection.
inline double level_truncation_defect(const RadialProfile& p, double level, double s_max = 1e30) {
  const double A = p.dim().sphere_area();
  auto above = [&](double s) { return std::fabs(p.value_at_depth(s)) > level; };
  const double s0 = -std::log(p.outer());
  const int n = 4000;
  const double top = std::log1p(s_max - s0);
  std::vector<double> marks{s0};
  bool prev = above(s0);
  double prev_s = s0;
  for (int i = 1; i <= n; ++i) {
    const double s = s0 + std::expm1(top * i / n);
    const bool cur = above(s);
    if (cur != prev) {
      double a = prev_s;
      double b = s;
      for (int it = 0; it < 200 && b - a > 1e-14 * (1.0 + b); ++it) {
        const double m = 0.5 * (a + b);
        (above(m) == prev ? a : b) = m;
      }
      marks.push_back(0.5 * (a + b));
    }
    prev = cur;
    prev_s = s;
  }
  marks.push_back(s_max);
  auto g = [&](double s) {
    const double vs = p.depth_slope(s);
    return vs * vs;
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    const double mid = 0.5 * (marks[i] + marks[i + 1]);
    const double probe = std::isfinite(mid) ? mid : marks[i] + 1.0;
    if (!above(std::min(probe, marks[i] + 0.5 * (marks[i + 1] - marks[i])))) continue;
    total += hardy::depth_integral(p, g, marks[i], marks[i + 1]);
  }
  return A * total;
}

}  // namespace hardylab::approx
