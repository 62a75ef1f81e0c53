#pragma once

// Bessel-weighted transformation on R^N: u(r) = r^{-(N-2)/2} J_0(r) v(r).
// The weight J_0^2 vanishes at the zeros z_m of J_0, so every integral is
// split there, and admissibility of u is read off the behaviour of the
// integrals as bands around the zeros shrink.

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardylab/hardy.hpp"
#include "hardylab/profiles.hpp"
#include "hardylab/quadrature.hpp"
#include "hardylab/specfun.hpp"
#include "hardylab/spectrum.hpp"

namespace hardylab::wholespace {

inline double bessel0(double r) { return specfun::bessel_j(0.0, r); }
inline double bessel0_slope(double r) { return -specfun::bessel_j(1.0, r); }

/// Zeros of J_0 strictly below R.
inline std::vector<double> zeros_below(double R) {
  std::vector<double> z;
  for (int m = 1;; ++m) {
    const double x = spectrum::radial_zero(m);
    if (x >= R) break;
    z.push_back(x);
  }
  return z;
}

struct ZeroTrace {
  int m;
  double zero;
  double rate;  ///< estimated a in |u| ~ |r - z_m|^a
};

/// Radial profile under the Bessel-weighted transformation. Built either from
/// v or from u directly; the second form can describe u that do not vanish at
/// the zeros, for which v is infinite there.
class JProfile {
 public:
  /// u = r^{-k} J_0 v, v and v' given.
  static JProfile from_regular(Dimension dim, Curve v, double support, std::vector<double> kinks,
                               std::string name) {
    auto c = std::make_shared<const Curve>(std::move(v));
    const double v0 = c->value(0.0);
    Curve phi{[c](double r) { return bessel0(r) * c->value(r); },
              [c](double r) { return bessel0_slope(r) * c->value(r) + bessel0(r) * c->slope(r); }};
    ScalarFn wslope = [c](double r) { return bessel0(r) * c->slope(r); };
    return JProfile(dim, std::move(phi), std::move(wslope), support, std::move(kinks), std::move(name), v0);
  }

  /// u and u' given; v = r^k u / J_0.
  static JProfile from_trace(Dimension dim, Curve u, double support, std::vector<double> kinks,
                             std::string name) {
    auto c = std::make_shared<const Curve>(std::move(u));
    const double k = dim.half_gap();
    Curve phi{[c, k](double r) { return std::pow(r, k) * c->value(r); },
              [c, k](double r) {
                if (r == 0.0) return 0.0;
                return std::pow(r, k) * (c->slope(r) + k * c->value(r) / r);
              }};
    ScalarFn wslope = [c, k](double r) {
      // J_0 v' = phi' - phi J_0'/J_0
      const double phi = std::pow(r, k) * c->value(r);
      const double dphi = std::pow(r, k) * (c->slope(r) + (r > 0.0 ? k * c->value(r) / r : 0.0));
      return dphi - phi * bessel0_slope(r) / bessel0(r);
    };
    return JProfile(dim, std::move(phi), std::move(wslope), support, std::move(kinks), std::move(name), 0.0);
  }

  Dimension dim() const { return dim_; }
  const std::string& name() const { return name_; }
  double support() const { return support_; }
  const std::vector<double>& kinks() const { return kinks_; }
  /// v(0).
  double origin_value() const { return v0_; }

  /// r^k u = J_0 v, the regular part of u for the critical transformation.
  double phi(double r) const { return r >= support_ ? 0.0 : phi_->value(r); }
  double phi_slope(double r) const { return r >= support_ ? 0.0 : phi_->slope(r); }
  /// J_0 v'.
  double weighted_slope(double r) const { return r >= support_ ? 0.0 : (*wslope_)(r); }
  double u(double r) const { return std::pow(r, -dim_.half_gap()) * phi(r); }
  double du(double r) const {
    const double k = dim_.half_gap();
    return std::pow(r, -k) * (phi_slope(r) - k * phi(r) / r);
  }

  std::vector<double> zeros() const { return zeros_below(support_); }

  /// Breakpoints on [0, support]: zeros and kinks.
  std::vector<double> breaks() const {
    std::vector<double> b{0.0, support_};
    for (double z : zeros()) b.push_back(z);
    for (double x : kinks_)
      if (x > 0.0 && x < support_) b.push_back(x);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
  }

  /// The same u as a ball profile of radius `support` (critical transformation).
  RadialProfile as_radial() const {
    auto self = std::make_shared<const JProfile>(*this);
    ProfileTraits t;
    t.name = name_;
    t.outer = support_;
    t.origin_value = v0_;
    t.origin = v0_ == 0.0 ? OriginClass::vanishing : OriginClass::finite_limit;
    t.kinks = breaks();
    t.kinks.erase(t.kinks.begin());
    t.kinks.pop_back();
    return RadialProfile::from_radius(
        dim_, {[self](double r) { return self->phi(r); }, [self](double r) { return self->phi_slope(r); }},
        std::move(t));
  }

  /// Estimated vanishing rate of u at each zero in the support, from u at
  /// distances 1e-3 and 1e-5 on both sides.
  std::vector<ZeroTrace> zero_traces() const {
    std::vector<ZeroTrace> out;
    int m = 0;
    for (double z : zeros()) {
      ++m;
      auto size = [&](double d) { return 0.5 * (std::fabs(u(z + d)) + std::fabs(u(z - d))); };
      const double a = size(1e-3);
      const double b = size(1e-5);
      double rate = INFINITY;
      if (b > 0.0 && a > 0.0) rate = std::log(a / b) / std::log(100.0);
      out.push_back({m, z, rate});
    }
    return out;
  }

 private:
  JProfile(Dimension dim, Curve phi, ScalarFn wslope, double support, std::vector<double> kinks,
           std::string name, double v0)
      : dim_(dim),
        phi_(std::make_shared<const Curve>(std::move(phi))),
        wslope_(std::make_shared<const ScalarFn>(std::move(wslope))),
        support_(support),
        kinks_(std::move(kinks)),
        name_(std::move(name)),
        v0_(v0) {
    if (!(support > 0.0)) throw std::invalid_argument("JProfile: support must be positive");
  }

  Dimension dim_;
  std::shared_ptr<const Curve> phi_;
  std::shared_ptr<const ScalarFn> wslope_;
  double support_;
  std::vector<double> kinks_;
  std::string name_;
  double v0_;
};

namespace detail {

inline quad::QuadConfig wq() {
  quad::QuadConfig c = hardy::energy_quad();
  c.abs_tol = 1e-14;
  return c;
}

// Integral of f over [0, support] with bands of half width delta cut out
// around each zero of J_0; delta = 0 keeps everything.
template <class F>
double banded_integral(const JProfile& p, F&& f, double delta) {
  const auto zs = p.zeros();
  auto near_zero = [&](double x) {
    return std::any_of(zs.begin(), zs.end(), [&](double z) { return std::fabs(z - x) < 1e-12; });
  };
  const auto b = p.breaks();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    double lo = b[i];
    double hi = b[i + 1];
    const bool zl = near_zero(lo);
    const bool zr = near_zero(hi);
    if (zl) lo += delta;
    if (zr) hi -= delta;
    if (hi <= lo) continue;
    quad::SingularEnd e = quad::SingularEnd::none;
    if (zl && zr) e = quad::SingularEnd::both;
    else if (zl) e = quad::SingularEnd::left;
    else if (zr) e = quad::SingularEnd::right;
    total += quad::integrate(f, lo, hi, wq(), e).value;
  }
  return total;
}

inline std::vector<double> band_widths() {
  std::vector<double> d;
  for (int j = 2; j <= 7; ++j) d.push_back(std::pow(10.0, -j));
  return d;
}

}  // namespace detail

struct JFunctional {
  double gradient;  ///< A int J_0^2 v'^2 r dr
  double mass;      ///< A int J_0^2 v^2 r dr = int u^2 dx
  bool finite;
  quad::LimitClass gradient_class;
};

/// Both weighted integrals. The gradient term is taken as the limit of
/// integrals with shrinking bands around the zeros cut out; it is flagged
/// infinite when that limit diverges.
inline JFunctional j_functional(const JProfile& p) {
  const double A = p.dim().sphere_area();
  auto grad = [&](double r) {
    const double w = p.weighted_slope(r);
    return w * w * r;
  };
  auto mass = [&](double r) {
    const double f = p.phi(r);
    return f * f * r;
  };
  JFunctional out{};
  if (p.zeros().empty()) {
    out.gradient = A * detail::banded_integral(p, grad, 0.0);
    out.gradient_class = quad::LimitClass::converged;
  } else {
    std::vector<double> vals;
    for (double d : detail::band_widths()) vals.push_back(A * detail::banded_integral(p, grad, d));
    const auto lim = quad::classify_sequence(vals);
    out.gradient_class = lim.classification;
    out.gradient = lim.classification == quad::LimitClass::converged ? lim.limit : INFINITY;
  }
  out.mass = A * detail::banded_integral(p, mass, 0.0);
  out.finite = out.gradient_class == quad::LimitClass::converged;
  return out;
}

/// Principal-value Hardy functional lim_{eps->0} I on eps < r < support, by
/// quadrature of (u'^2 - c* u^2/r^2) r^{N-1}.
inline quad::LimitResult principal_value(const JProfile& p) {
  const Dimension d = p.dim();
  const int N = d.value();
  const double c = d.critical();
  auto f = [&](double r) {
    const double u = p.u(r);
    const double du = p.du(r);
    return (du * du - c * u * u / (r * r)) * std::pow(r, N - 1);
  };
  auto I = [&](double eps) {
    auto b = p.breaks();
    b.front() = eps;
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      if (b[i + 1] <= b[i]) continue;
      s += quad::integrate(f, b[i], b[i + 1], detail::wq(),
                           i == 0 ? quad::SingularEnd::left : quad::SingularEnd::none)
               .value;
    }
    return d.sphere_area() * s;
  };
  return quad::integrate_to_limit(I, quad::decimal_cutoffs(6));
}

struct HardyPoincare {
  double I_value;   ///< principal-value Hardy functional of u
  double gradient;  ///< J-gradient term
  double mass;      ///< ||u||^2 in L^2
  double L;         ///< singularity energy k A v(0)^2
  double margin;    ///< I - L - mass = gradient
  double defect;    ///< I - gradient - mass - L
};

/// I[u] = J[v] + L(v) with J = gradient + mass, each side by its own quadrature.
inline HardyPoincare hardy_poincare_check(const JProfile& p) {
  const auto pv = principal_value(p);
  if (pv.classification != quad::LimitClass::converged) {
    throw hardy::DivergentNorm("hardy_poincare_check: principal value " + quad::to_string(pv.classification));
  }
  const auto j = j_functional(p);
  const double v0 = p.origin_value();
  HardyPoincare h{};
  h.I_value = pv.limit;
  h.gradient = j.gradient;
  h.mass = j.mass;
  h.L = p.dim().singular_weight() * v0 * v0;
  h.margin = h.I_value - h.L - h.mass;
  h.defect = h.I_value - h.gradient - h.mass - h.L;
  return h;
}

/// Plateau v = 1 on [0, n pi/4], linear descent to 0 at (n+1) pi/4.
inline JProfile plateau_profile(Dimension dim, int n) {
  const double a = n * std::numbers::pi / 4.0;
  const double b = (n + 1) * std::numbers::pi / 4.0;
  return JProfile::from_regular(
      dim,
      {[a, b](double r) { return r <= a ? 1.0 : (r >= b ? 0.0 : (b - r) / (b - a)); },
       [a, b](double r) { return (r > a && r < b) ? -1.0 / (b - a) : 0.0; }},
      b, {a}, "plateau" + std::to_string(n));
}

struct InfimumRow {
  int n;
  double gradient;
  double mass;
  double quotient;
};

/// Weighted Rayleigh quotient of the plateau profile; tends to 0 as n grows.
inline InfimumRow infimum_sequence(int n, Dimension dim = Dimension(3)) {
  if (n < 4) throw std::domain_error("infimum_sequence: need n >= 4");
  const auto j = j_functional(plateau_profile(dim, n));
  return {n, j.gradient, j.mass, j.gradient / j.mass};
}

/// Planar radial function with compact support.
struct PlanarProfile {
  Curve v;
  double support;
  std::vector<double> kinks;
};

struct PlanarPoincare {
  double margin;  ///< 2 pi int J_0^2 v'^2 r dr
  double direct;  ///< 2 pi int (u'^2 - u^2) r dr with u = J_0 v
  double defect;
};

/// int |grad u|^2 - int u^2 over R^2 for u = J_0 v, in both forms.
inline PlanarPoincare r2_poincare_check(const PlanarProfile& p) {
  std::vector<double> b{0.0, p.support};
  for (double z : zeros_below(p.support)) b.push_back(z);
  for (double x : p.kinks)
    if (x > 0.0 && x < p.support) b.push_back(x);
  std::sort(b.begin(), b.end());
  auto vform = [&](double r) {
    const double w = bessel0(r) * p.v.slope(r);
    return w * w * r;
  };
  auto dform = [&](double r) {
    const double u = bessel0(r) * p.v.value(r);
    const double du = bessel0_slope(r) * p.v.value(r) + bessel0(r) * p.v.slope(r);
    return (du * du - u * u) * r;
  };
  const double two_pi = 2.0 * std::numbers::pi;
  PlanarPoincare out{};
  out.margin = two_pi * quad::integrate_pieces(vform, b, detail::wq()).value;
  out.direct = two_pi * quad::integrate_pieces(dform, b, detail::wq()).value;
  out.defect = out.direct - out.margin;
  return out;
}

struct ZeroEnergies {
  double L_plus;   ///< A s^{N-1} (J_0'/J_0) u^2 at s = z_m + eps
  double L_minus;  ///< same at s = z_m - eps
};

/// Surface terms at the spheres |x| = z_m +- eps.
inline ZeroEnergies zero_singularity_energies(const JProfile& p, int m, double eps) {
  if (m < 1) throw std::domain_error("zero_singularity_energies: m must be >= 1");
  const double z = spectrum::radial_zero(m);
  const double below = m == 1 ? 0.0 : spectrum::radial_zero(m - 1);
  const double above = spectrum::radial_zero(m + 1);
  if (!(eps > 0.0) || eps >= 0.5 * std::min(z - below, above - z)) {
    throw std::domain_error("zero_singularity_energies: eps must be positive and leave J_0 nonzero");
  }
  if (z + eps >= p.support()) throw std::domain_error("zero_singularity_energies: zero outside the support");
  const Dimension d = p.dim();
  auto term = [&](double s) {
    const double u = p.u(s);
    return d.sphere_area() * std::pow(s, d.value() - 1) * bessel0_slope(s) / bessel0(s) * u * u;
  };
  return {term(z + eps), term(z - eps)};
}

struct ZeroBandDecomposition {
  double eps;
  double I_excised;   ///< I on eps < r < support with (z_m - eps, z_m + eps) removed
  double L_origin;    ///< L_eps
  double zero_terms;  ///< sum_m (L_plus - L_minus)
  double j_norm;      ///< gradient + mass
  double defect;      ///< j_norm - (I_excised - L_origin + zero_terms)
};

/// ||u||_J^2 against I on the excised domain, minus the origin term, plus the
/// surface terms at the zeros.
inline ZeroBandDecomposition zero_band_decomposition(const JProfile& p, double eps) {
  const Dimension d = p.dim();
  const int N = d.value();
  const double c = d.critical();
  auto f = [&](double r) {
    const double u = p.u(r);
    const double du = p.du(r);
    return (du * du - c * u * u / (r * r)) * std::pow(r, N - 1);
  };
  const auto zs = p.zeros();
  std::vector<double> b{eps, p.support()};
  for (double z : zs) {
    b.push_back(z - eps);
    b.push_back(z + eps);
  }
  for (double x : p.kinks())
    if (x > eps && x < p.support()) b.push_back(x);
  std::sort(b.begin(), b.end());
  double I = 0.0;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double mid = 0.5 * (b[i] + b[i + 1]);
    const bool in_band = std::any_of(zs.begin(), zs.end(), [&](double z) { return std::fabs(mid - z) < eps; });
    if (in_band || b[i + 1] <= b[i]) continue;
    I += quad::integrate(f, b[i], b[i + 1], detail::wq(),
                         i == 0 ? quad::SingularEnd::left : quad::SingularEnd::none)
             .value;
  }
  ZeroBandDecomposition out{};
  out.eps = eps;
  out.I_excised = d.sphere_area() * I;
  const double v = p.phi(eps);
  out.L_origin = d.singular_weight() * v * v;
  for (std::size_t m = 1; m <= zs.size(); ++m) {
    const auto e = zero_singularity_energies(p, static_cast<int>(m), eps);
    out.zero_terms += e.L_plus - e.L_minus;
  }
  const auto j = j_functional(p);
  out.j_norm = j.gradient + j.mass;
  out.defect = out.j_norm - (out.I_excised - out.L_origin + out.zero_terms);
  return out;
}

/// Vanishing rate of u at z_m fitted from |u| at distances d1 > d2.
inline double trace_rate(const JProfile& p, int m, double d1 = 1e-3, double d2 = 1e-5) {
  const double z = spectrum::radial_zero(m);
  auto size = [&](double d) { return 0.5 * (std::fabs(p.u(z + d)) + std::fabs(p.u(z - d))); };
  return std::log(size(d1) / size(d2)) / std::log(d1 / d2);
}

/// v(r) = exp(1 - 1/(1 - (r/R)^2)) on [0, R).
inline JProfile bump_profile(Dimension dim, double R) {
  if (!(R > 0.0)) throw std::domain_error("bump_profile: need R > 0");
  return JProfile::from_regular(
      dim,
      {[R](double r) {
         const double x = r / R;
         return x >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - x * x));
       },
       [R](double r) {
         const double x = r / R;
         if (x >= 1.0) return 0.0;
         const double q = 1.0 - x * x;
         return std::exp(1.0 - 1.0 / q) * (-2.0 * x / (q * q)) / R;
       }},
      R, {}, "jbump" + profiles::detail::param_text(R));
}

/// u(r) = |r - z_m|^a b(r - z_m) with b the unit bump: a profile whose trace at
/// the zero vanishes at rate a.
inline JProfile traced_profile(Dimension dim, double a, int m = 1) {
  if (!(a > 0.0)) throw std::domain_error("traced_profile: need a > 0");
  const double z = spectrum::radial_zero(m);
  if (m > 1 && z - 1.0 <= spectrum::radial_zero(m - 1)) throw std::domain_error("traced_profile: zeros too close");
  return JProfile::from_trace(
      dim,
      {[z, a](double r) {
         const double x = r - z;
         if (std::fabs(x) >= 1.0) return 0.0;
         return std::pow(std::fabs(x), a) * std::exp(1.0 - 1.0 / (1.0 - x * x));
       },
       [z, a](double r) {
         const double x = r - z;
         if (std::fabs(x) >= 1.0 || x == 0.0) return 0.0;
         const double q = 1.0 - x * x;
         const double b = std::exp(1.0 - 1.0 / q);
         const double sg = x > 0.0 ? 1.0 : -1.0;
         return a * std::pow(std::fabs(x), a - 1.0) * sg * b + std::pow(std::fabs(x), a) * b * (-2.0 * x / (q * q));
       }},
      z + 1.0, {z - 1.0}, "traced" + profiles::detail::param_text(a));
}

}  // namespace hardylab::wholespace
