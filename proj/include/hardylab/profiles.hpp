#pragma once

// Radial test functions stored through their regular part v, with
// u(r) = r^{-(N-2)/2} v(r). A profile can be described either in the radius r
// or in the depth s = ln(1/r); the other form is derived. Depth is the natural
// variable near the origin, where the slowly varying classes live.

#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hardylab/quadrature.hpp"
#include "hardylab/specfun.hpp"

namespace hardylab {

/// Space dimension N >= 3 with the constants attached to it.
class Dimension {
 public:
  explicit Dimension(int n) : n_(n) {
    if (n < 3) throw std::domain_error("dimension must be >= 3, got " + std::to_string(n));
  }
  int value() const { return n_; }
  /// (N-2)/2, the power relating u and its regular part.
  double half_gap() const { return 0.5 * (n_ - 2); }
  /// Hardy constant ((N-2)/2)^2.
  double critical() const { return half_gap() * half_gap(); }
  /// Lebesgue measure of the unit ball.
  double ball_volume() const {
    return std::pow(std::numbers::pi, 0.5 * n_) / std::tgamma(0.5 * n_ + 1.0);
  }
  /// Area of the unit sphere, N times the ball volume.
  double sphere_area() const { return n_ * ball_volume(); }
  /// Coefficient of v(0)^2 in the singularity energy: N(N-2)/2 times the ball volume.
  double singular_weight() const { return half_gap() * sphere_area(); }

  bool operator==(const Dimension&) const = default;

 private:
  int n_;
};

enum class OriginClass { vanishing, finite_limit, oscillating, log_divergent };

inline std::string to_string(OriginClass c) {
  switch (c) {
    case OriginClass::vanishing: return "vanishing";
    case OriginClass::finite_limit: return "finite_limit";
    case OriginClass::oscillating: return "oscillating";
    default: return "log_divergent";
  }
}

using ScalarFn = std::function<double(double)>;

/// A function of one variable with its derivative.
struct Curve {
  ScalarFn value;
  ScalarFn slope;
};

struct ProfileTraits {
  std::string name;
  OriginClass origin = OriginClass::finite_limit;
  bool boundary_zero = true;
  double outer = 1.0;                 ///< outer radius of the support
  std::vector<double> kinks;          ///< radii where v' may jump
  std::optional<double> origin_value; ///< v(0) when finite
  bool member = true;                 ///< parameter in the regime where the energy is finite
  bool deep_origin = false;           ///< energy near 0 settles only at very small cutoffs
};

/// Radial profile through its regular part. Immutable after construction.
class RadialProfile {
 public:
  /// v and dv/dr given as functions of r.
  static RadialProfile from_radius(Dimension dim, Curve radial, ProfileTraits traits) {
    auto vr = radial.value;
    auto dvr = radial.slope;
    Curve depth{[vr](double s) { return vr(std::exp(-s)); },
                [dvr](double s) {
                  const double r = std::exp(-s);
                  if (r < 1e-300) return 0.0;
                  return -r * dvr(r);
                }};
    return RadialProfile(dim, std::move(radial), std::move(depth), std::move(traits));
  }

  /// v and dv/ds given as functions of the depth s = ln(1/r).
  static RadialProfile from_depth(Dimension dim, Curve depth, ProfileTraits traits) {
    auto vd = depth.value;
    auto dvd = depth.slope;
    Curve radial{[vd](double r) { return vd(-std::log(r)); },
                 [dvd](double r) { return -dvd(-std::log(r)) / r; }};
    return RadialProfile(dim, std::move(radial), std::move(depth), std::move(traits));
  }

  /// Both forms supplied, for profiles where each has its own accurate formula.
  static RadialProfile from_both(Dimension dim, Curve radial, Curve depth, ProfileTraits traits) {
    return RadialProfile(dim, std::move(radial), std::move(depth), std::move(traits));
  }

  Dimension dim() const { return dim_; }
  const std::string& name() const { return traits_->name; }
  OriginClass origin_class() const { return traits_->origin; }
  bool boundary_zero() const { return traits_->boundary_zero; }
  double outer() const { return traits_->outer; }
  const std::vector<double>& kinks() const { return traits_->kinks; }
  std::optional<double> origin_value() const { return traits_->origin_value; }
  bool member() const { return traits_->member; }
  bool deep_origin() const { return traits_->deep_origin; }
  const ProfileTraits& traits() const { return *traits_; }

  /// v(r); zero beyond the support.
  double value(double r) const {
    if (r > outer()) return 0.0;
    if (r == 0.0 && origin_value()) return *origin_value();
    return radial_->value(r);
  }
  /// dv/dr.
  double slope(double r) const {
    if (r > outer()) return 0.0;
    return radial_->slope(r);
  }
  /// v at depth s, i.e. v(e^{-s}).
  double value_at_depth(double s) const {
    if (s < -std::log(outer())) return 0.0;
    if (std::isinf(s) && origin_value()) return *origin_value();
    return depth_->value(s);
  }
  /// dv/ds = -r v'(r).
  double depth_slope(double s) const {
    if (s < -std::log(outer())) return 0.0;
    return depth_->slope(s);
  }
  /// u(r) = r^{-(N-2)/2} v(r).
  double u(double r) const { return std::pow(r, -dim_.half_gap()) * value(r); }
  /// du/dr.
  double du(double r) const {
    const double k = dim_.half_gap();
    return std::pow(r, -k) * (slope(r) - k * value(r) / r);
  }

  /// Same profile multiplied by a constant.
  RadialProfile scaled(double c) const {
    ProfileTraits t = *traits_;
    if (t.origin_value) *t.origin_value *= c;
    t.name += "*" + std::to_string(c);
    auto rad = radial_;
    auto dep = depth_;
    return from_both(dim_,
                     {[rad, c](double r) { return c * rad->value(r); },
                      [rad, c](double r) { return c * rad->slope(r); }},
                     {[dep, c](double s) { return c * dep->value(s); },
                      [dep, c](double s) { return c * dep->slope(s); }},
                     std::move(t));
  }

 private:
  RadialProfile(Dimension dim, Curve radial, Curve depth, ProfileTraits traits)
      : dim_(dim),
        radial_(std::make_shared<const Curve>(std::move(radial))),
        depth_(std::make_shared<const Curve>(std::move(depth))),
        traits_(std::make_shared<const ProfileTraits>(std::move(traits))) {}

  Dimension dim_;
  std::shared_ptr<const Curve> radial_;
  std::shared_ptr<const Curve> depth_;
  std::shared_ptr<const ProfileTraits> traits_;
};

/// Origin class inferred from samples of v at depths 2, 4, ..., 2^40.
inline OriginClass classify_origin(const RadialProfile& p) {
  std::vector<double> vals;
  double scale = 0.0;
  for (int j = 1; j <= 40; ++j) {
    const double v = p.value_at_depth(std::ldexp(1.0, j));
    vals.push_back(v);
    scale = std::max(scale, std::fabs(v));
  }
  quad::LimitConfig cfg;
  cfg.monotone_tail = 20;
  const auto res = quad::classify_sequence(vals, cfg);
  switch (res.classification) {
    case quad::LimitClass::converged:
      return std::fabs(res.limit) <= 1e-8 * (1.0 + scale) ? OriginClass::vanishing
                                                          : OriginClass::finite_limit;
    case quad::LimitClass::diverging: return OriginClass::log_divergent;
    default: return OriginClass::oscillating;
  }
}

namespace profiles {

namespace detail {
inline std::string param_text(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}
}  // namespace detail

/// Central difference of a profile's v, step 1e-6 r.
inline double central_slope(const RadialProfile& p, double r) {
  const double h = 1e-6 * r;
  return (p.value(r + h) - p.value(r - h)) / (2.0 * h);
}

/// k-th radial Dirichlet mode of the unit ball, v = J_0(z_{0,k} r), v(0) = 1.
inline RadialProfile mode(Dimension dim, int k) {
  const double z = specfun::bessel_zero(0.0, k);
  ProfileTraits t;
  t.name = k == 1 ? "e1" : "mode" + std::to_string(k);
  t.origin = OriginClass::finite_limit;
  t.origin_value = 1.0;
  return RadialProfile::from_radius(
      dim,
      {[z](double r) { return specfun::bessel_j(0.0, z * r); },
       [z](double r) { return -z * specfun::bessel_j(1.0, z * r); }},
      std::move(t));
}

/// First eigenfunction e1 = r^{-(N-2)/2} J_0(z_{0,1} r).
inline RadialProfile e1(Dimension dim) { return mode(dim, 1); }

/// First eigenfunction for the subcritical coefficient c in [0, c*):
/// v = J_m(z_{m,1} r), m = sqrt(c* - c). Vanishes at 0 like r^m.
inline RadialProfile subcritical(Dimension dim, double c) {
  const double cstar = dim.critical();
  if (!(c >= 0.0 && c < cstar)) throw std::domain_error("subcritical: c must lie in [0, c*)");
  const double m = std::sqrt(cstar - c);
  const double z = specfun::bessel_zero(m, 1);
  const double log_half_z = std::log(0.5 * z);
  const double inv_gamma = 1.0 / std::tgamma(m + 1.0);
  ProfileTraits t;
  t.name = "subcritical:" + detail::param_text(c);
  t.origin = OriginClass::vanishing;
  t.origin_value = 0.0;
  t.deep_origin = true;
  auto vr = [m, z](double r) { return specfun::bessel_j(m, z * r); };
  auto dvr = [m, z](double r) { return z * specfun::bessel_j_deriv(m, z * r); };
  // deep in the origin, J_m(x) = (x/2)^m / Gamma(m+1) (1 - x^2/(4(m+1)) + ...),
  // evaluated through logarithms so that depths past the double range work
  auto vd = [=](double s) {
    if (s < 30.0) return vr(std::exp(-s));
    return std::exp(m * (log_half_z - s)) * inv_gamma;
  };
  auto dvd = [=](double s) {
    if (s < 30.0) {
      const double r = std::exp(-s);
      return -r * dvr(r);
    }
    return -m * std::exp(m * (log_half_z - s)) * inv_gamma;
  };
  return RadialProfile::from_both(dim, {vr, dvr}, {vd, dvd}, std::move(t));
}

/// v = (1 + s)^a - 1 in the depth s = ln(1/r); grows like (log 1/r)^a.
/// Finite weighted Dirichlet energy iff a < 1/2.
inline RadialProfile log_power(Dimension dim, double a) {
  if (!(a > 0.0)) throw std::domain_error("log_power: exponent must be positive");
  ProfileTraits t;
  t.name = "log_power:" + detail::param_text(a);
  t.origin = OriginClass::log_divergent;
  t.member = a < 0.5;
  t.deep_origin = true;
  return RadialProfile::from_depth(
      dim,
      {[a](double s) { return std::pow(1.0 + s, a) - 1.0; },
       [a](double s) { return a * std::pow(1.0 + s, a - 1.0); }},
      std::move(t));
}

/// v = sin((1 + s)^a) - sin(1); oscillates without limit at the origin.
inline RadialProfile oscillating(Dimension dim, double a) {
  if (!(a > 0.0)) throw std::domain_error("oscillating: exponent must be positive");
  const double s1 = std::sin(1.0);
  ProfileTraits t;
  t.name = "oscillating:" + detail::param_text(a);
  t.origin = OriginClass::oscillating;
  t.member = a < 0.5;
  t.deep_origin = true;
  return RadialProfile::from_depth(
      dim,
      {[a, s1](double s) { return std::sin(std::pow(1.0 + s, a)) - s1; },
       [a](double s) {
         const double q = std::pow(1.0 + s, a);
         return a * q / (1.0 + s) * std::cos(q);
       }},
      std::move(t));
}

/// amplitude * exp(1 - 1/(1 - r^2)): smooth, supported in [0, 1), v(0) = amplitude.
inline RadialProfile bump(Dimension dim, double amplitude = 1.0) {
  ProfileTraits t;
  t.name = "bump";
  t.origin = OriginClass::finite_limit;
  t.origin_value = amplitude;
  return RadialProfile::from_radius(
      dim,
      {[amplitude](double r) {
         if (r >= 1.0) return 0.0;
         return amplitude * std::exp(1.0 - 1.0 / (1.0 - r * r));
       },
       [amplitude](double r) {
         if (r >= 1.0) return 0.0;
         const double q = 1.0 - r * r;
         return amplitude * std::exp(1.0 - 1.0 / q) * (-2.0 * r / (q * q));
       }},
      std::move(t));
}

namespace detail {
// C-infinity step: 0 for x <= 0, 1 for x >= 1.
inline double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}
inline double smooth_step_slope(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  const double da = a / (x * x);
  const double db = -b / ((1.0 - x) * (1.0 - x));
  return (da * (a + b) - a * (da + db)) / ((a + b) * (a + b));
}
}  // namespace detail

/// amplitude on [0, inner], smooth descent to 0 at outer_edge.
inline RadialProfile plateau(Dimension dim, double amplitude = 1.0, double inner = 0.3,
                             double outer_edge = 0.8) {
  if (!(0.0 < inner && inner < outer_edge && outer_edge <= 1.0)) {
    throw std::domain_error("plateau: need 0 < inner < outer_edge <= 1");
  }
  const double w = outer_edge - inner;
  ProfileTraits t;
  t.name = "plateau";
  t.origin = OriginClass::finite_limit;
  t.origin_value = amplitude;
  t.kinks = {inner, outer_edge};
  return RadialProfile::from_radius(
      dim,
      {[=](double r) { return amplitude * detail::smooth_step((outer_edge - r) / w); },
       [=](double r) { return -amplitude / w * detail::smooth_step_slope((outer_edge - r) / w); }},
      std::move(t));
}

/// Smooth bump supported in the shell (ra, rb); vanishes near the origin.
inline RadialProfile shell(Dimension dim, double ra = 0.2, double rb = 0.8) {
  if (!(0.0 < ra && ra < rb && rb <= 1.0)) throw std::domain_error("shell: need 0 < ra < rb <= 1");
  const double half = 0.5 * (rb - ra);
  const double mid = 0.5 * (ra + rb);
  ProfileTraits t;
  t.name = "shell";
  t.origin = OriginClass::vanishing;
  t.origin_value = 0.0;
  t.kinks = {ra, rb};
  return RadialProfile::from_radius(
      dim,
      {[=](double r) {
         const double x = (r - mid) / half;
         if (std::fabs(x) >= 1.0) return 0.0;
         return std::exp(1.0 - 1.0 / (1.0 - x * x));
       },
       [=](double r) {
         const double x = (r - mid) / half;
         if (std::fabs(x) >= 1.0) return 0.0;
         const double q = 1.0 - x * x;
         return std::exp(1.0 - 1.0 / q) * (-2.0 * x / (q * q)) / half;
       }},
      std::move(t));
}

/// v = r^2 (1 - r^2): an H^1_0 profile, vanishing at the origin.
inline RadialProfile power(Dimension dim) {
  ProfileTraits t;
  t.name = "power";
  t.origin = OriginClass::vanishing;
  t.origin_value = 0.0;
  return RadialProfile::from_radius(
      dim,
      {[](double r) { return r * r * (1.0 - r * r); },
       [](double r) { return 2.0 * r - 4.0 * r * r * r; }},
      std::move(t));
}

/// Profile addressed by a name of the form "kind" or "kind:param".
inline RadialProfile by_name(Dimension dim, const std::string& name) {
  const auto colon = name.find(':');
  const std::string kind = name.substr(0, colon);
  std::optional<double> param;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      param = std::stod(name.substr(colon + 1), &used);
      if (used != name.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad profile parameter in '" + name + "'");
    }
  }
  if (kind == "e1") return e1(dim);
  if (kind == "mode") return mode(dim, static_cast<int>(param.value_or(1.0)));
  if (kind == "subcritical") return subcritical(dim, param.value_or(0.0));
  if (kind == "log_power") return log_power(dim, param.value_or(0.3));
  if (kind == "oscillating") return oscillating(dim, param.value_or(0.3));
  if (kind == "bump") return bump(dim, param.value_or(1.0));
  if (kind == "plateau") return plateau(dim, param.value_or(1.0));
  if (kind == "shell") return shell(dim);
  if (kind == "power") return power(dim);
  throw std::invalid_argument("unknown profile '" + name + "'");
}

/// Profiles used for library-wide checks.
inline std::vector<RadialProfile> library(Dimension dim) {
  return {e1(dim),         mode(dim, 2),          bump(dim),
          plateau(dim),    shell(dim),            power(dim),
          log_power(dim, 0.3), oscillating(dim, 0.3), subcritical(dim, 0.5 * dim.critical())};
}

}  // namespace profiles
}  // namespace hardylab
