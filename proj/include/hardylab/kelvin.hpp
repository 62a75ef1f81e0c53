#pragma once

// Kelvin inversion y = x/|x|^2, u(x) = |y|^{N-2} w(y), between the punctured
// unit ball and the exterior of the unit ball.
//
// On profiles: w(y) = y^{-k} v(1/y) with k = (N-2)/2, so the regular part of w
// at ln y is the regular part of u at depth ln y.

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "hardylab/hardy.hpp"
#include "hardylab/profiles.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab::kelvin {

/// Radial function on |y| >= 1.
class ExteriorProfile {
 public:
  ExteriorProfile(Dimension dim, Curve w, OriginClass decay_class, std::string name,
                  std::optional<RadialProfile> preimage = std::nullopt)
      : dim_(dim),
        w_(std::make_shared<const Curve>(std::move(w))),
        decay_(decay_class),
        name_(std::move(name)),
        preimage_(std::move(preimage)) {}

  Dimension dim() const { return dim_; }
  double value(double y) const { return w_->value(y); }
  double slope(double y) const { return w_->slope(y); }
  /// Behaviour at infinity, mirroring the origin class of the preimage.
  OriginClass decay_class() const { return decay_; }
  const std::string& name() const { return name_; }
  const std::optional<RadialProfile>& preimage() const { return preimage_; }

 private:
  Dimension dim_;
  std::shared_ptr<const Curve> w_;
  OriginClass decay_;
  std::string name_;
  std::optional<RadialProfile> preimage_;
};

/// Exterior image of a profile on the unit ball.
inline ExteriorProfile kelvin_map(const RadialProfile& p) {
  if (p.outer() > 1.0) throw std::invalid_argument("kelvin_map: profile must live in the unit ball");
  const double k = p.dim().half_gap();
  Curve w{[p, k](double y) { return std::pow(y, -k) * p.value_at_depth(std::log(y)); },
          [p, k](double y) {
            const double t = std::log(y);
            return std::pow(y, -k - 1.0) * (p.depth_slope(t) - k * p.value_at_depth(t));
          }};
  return ExteriorProfile(p.dim(), std::move(w), p.origin_class(), p.name() + "~", p);
}

/// Ball profile whose Kelvin image is q: v(r) = r^{-k} w(1/r).
inline RadialProfile kelvin_unmap(const ExteriorProfile& q) {
  const double k = q.dim().half_gap();
  ProfileTraits t;
  if (q.preimage()) {
    t = q.preimage()->traits();
  } else {
    t.name = q.name() + "^";
    t.origin = q.decay_class();
  }
  auto w = std::make_shared<const ExteriorProfile>(q);
  return RadialProfile::from_radius(
      q.dim(),
      {[w, k](double r) { return std::pow(r, -k) * w->value(1.0 / r); },
       [w, k](double r) {
         const double y = 1.0 / r;
         return -std::pow(r, -k - 1.0) * (k * w->value(y) + y * w->slope(y));
       }},
      std::move(t));
}

/// Hardy functional on 1 < |y| < S by quadrature in y of
/// (w'^2 - c* w^2/y^2) y^{N-1}. Panels double in width outward.
inline double exterior_functional(const ExteriorProfile& q, double S) {
  if (!(S > 1.0)) throw std::invalid_argument("exterior_functional: need S > 1");
  const Dimension d = q.dim();
  const int N = d.value();
  const double c = d.critical();
  auto f = [&](double y) {
    const double w = q.value(y);
    const double dw = q.slope(y);
    return (dw * dw - c * w * w / (y * y)) * std::pow(y, N - 1);
  };
  std::vector<double> cuts{1.0};
  if (q.preimage()) {
    for (double r : q.preimage()->kinks())
      if (r > 0.0 && 1.0 / r < S) cuts.push_back(1.0 / r);
  }
  for (double y = 2.0; y < S; y *= 2.0) cuts.push_back(y);
  cuts.push_back(S);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const auto r = quad::integrate_pieces(f, cuts, hardy::energy_quad());
  if (!std::isfinite(r.value)) throw hardy::QuadratureFailure("exterior_functional: non-finite");
  return d.sphere_area() * r.value;
}

/// Energy at the outer sphere |y| = S: (N-2)/2 S^{-1} int_{|y|=S} w^2 dS = k A S^{N-2} w(S)^2.
inline double exterior_singularity_energy(const ExteriorProfile& q, double S) {
  const Dimension d = q.dim();
  const double w = q.value(S);
  return d.singular_weight() * std::pow(S, d.value() - 2) * w * w;
}

struct IdentityCheck {
  double eps;
  double I_interior;   ///< I on eps < |x| < 1
  double I_exterior;   ///< I on 1 < |y| < 1/eps
  double L_interior;   ///< L_eps(u)
  double L_exterior;   ///< L_{1/eps}(w)
  double lhs;          ///< I_interior
  double rhs;          ///< I_exterior + 2 L_exterior
  double defect;       ///< lhs - rhs
  double trace_defect; ///< L_interior - L_exterior
};

/// Interior and exterior sides of the Kelvin energy identity, each by its own quadrature.
inline IdentityCheck identity_check(const RadialProfile& p, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("identity_check: need 0 < eps < 1");
  const auto q = kelvin_map(p);
  IdentityCheck c{};
  c.eps = eps;
  c.I_interior = hardy::annulus_functional(p, eps, 1.0);
  c.I_exterior = exterior_functional(q, 1.0 / eps);
  c.L_interior = hardy::singularity_energy(p, eps);
  c.L_exterior = exterior_singularity_energy(q, 1.0 / eps);
  c.lhs = c.I_interior;
  c.rhs = c.I_exterior + 2.0 * c.L_exterior;
  c.defect = c.lhs - c.rhs;
  c.trace_defect = c.L_interior - c.L_exterior;
  return c;
}

/// Outer radii used for S -> infinity.
inline std::vector<double> exterior_radii() {
  std::vector<double> s;
  for (double e : quad::decimal_cutoffs(6)) s.push_back(1.0 / e);
  return s;
}

/// lim_{S -> inf} exterior_functional(q, S), computed directly in y.
inline quad::LimitResult exterior_principal_value(const ExteriorProfile& q) {
  std::vector<double> vals;
  for (double S : exterior_radii()) vals.push_back(exterior_functional(q, S));
  return quad::classify_sequence(vals);
}

struct ExteriorNorm {
  double value;           ///< through the preimage (authoritative)
  double direct;          ///< lim (I_S[w] + L_S(w)) in y, NaN when it does not settle
  quad::LimitClass direct_class;
};

/// ||w||^2 = lim (I_{1/eps}[w] + L_{1/eps}(w)); equals the cutoff norm of the preimage.
inline ExteriorNorm exterior_norm(const ExteriorProfile& q) {
  const RadialProfile p = q.preimage() ? *q.preimage() : kelvin_unmap(q);
  const auto pulled = hardy::cutoff_norm(p);
  ExteriorNorm n{pulled.limit, NAN, quad::LimitClass::undetermined};
  if (p.deep_origin()) {
    // radii like exp(1e8) are out of reach in y; use the log variable t = ln y
    const double k = q.dim().half_gap();
    auto F = [&](double t) {
      auto g = [&](double x) {
        const double vs = p.depth_slope(x);
        return vs * (vs - 2.0 * k * p.value_at_depth(x));
      };
      const double I = q.dim().sphere_area() * hardy::depth_integral(p, g, 0.0, t);
      return I + hardy::singularity_energy_at_depth(p, t);
    };
    const auto lim = quad::limit_over_depths(F, hardy::cutoff_depths(p));
    n.direct = lim.limit;
    n.direct_class = lim.classification;
    return n;
  }
  std::vector<double> vals;
  for (double S : exterior_radii()) vals.push_back(exterior_functional(q, S) + exterior_singularity_energy(q, S));
  const auto lim = quad::classify_sequence(vals);
  n.direct = lim.limit;
  n.direct_class = lim.classification;
  return n;
}

/// Residual of -w'' - (N-1)/y w' - c* w/y^2 - mu y^{-4} w for the image of the
/// first mode, with w'' from a central difference of the analytic w'.
inline double eigen_residual(const ExteriorProfile& q, double mu, double y) {
  const Dimension d = q.dim();
  const double h = 1e-5 * y;
  const double w2 = (q.slope(y + h) - q.slope(y - h)) / (2.0 * h);
  const double w = q.value(y);
  return -w2 - (d.value() - 1.0) / y * q.slope(y) - d.critical() * w / (y * y) - mu * w / std::pow(y, 4);
}

}  // namespace hardylab::kelvin
