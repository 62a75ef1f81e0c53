#pragma once

// Hardy functional on annuli, singularity energy, weighted Dirichlet energy
// and the cutoff-limit norm for radial profiles.
//
// Radial reductions use the sphere area A = N w_N. With s = ln(1/r):
//   weighted Dirichlet   A int v'^2 r dr      = A int v_s^2 ds
//   annulus functional   A int (u'^2 - k^2 u^2/r^2) r^{N-1} dr
//                        = A int v_s (v_s + 2k v) ds
//   singularity energy   k A v(eps)^2

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "hardylab/profiles.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab::hardy {

/// Tolerances used for every energy integral.
inline quad::QuadConfig energy_quad() {
  quad::QuadConfig c;
  c.abs_tol = 1e-13;
  c.rel_tol = 1e-12;
  c.max_depth = 60;
  return c;
}

class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivergentNorm : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Upper end of the log-depth variable used for "infinite" depth; s ~ 2e17.
inline constexpr double kSigmaMax = 40.0;

inline void require(const quad::QuadResult& r, const char* what) {
  if (!std::isfinite(r.value)) throw QuadratureFailure(std::string(what) + ": non-finite integral");
}

}  // namespace detail

/// int g(s) ds over depths [s_lo, s_hi], s_hi possibly infinite.
/// Integrates in sigma = ln(1 + s - s_lo), split at the profile's kinks.
template <class G>
double depth_integral(const RadialProfile& p, G&& g, double s_lo, double s_hi,
                      const quad::QuadConfig& cfg = energy_quad()) {
  if (!(s_hi >= s_lo)) throw std::invalid_argument("depth_integral: need s_lo <= s_hi");
  if (s_hi == s_lo) return 0.0;
  const double top = std::isinf(s_hi) ? detail::kSigmaMax : std::log1p(s_hi - s_lo);
  std::vector<double> cuts{0.0, top};
  for (double r : p.kinks()) {
    if (r <= 0.0) continue;
    const double s = -std::log(r);
    if (s > s_lo && s < s_hi) cuts.push_back(std::log1p(s - s_lo));
  }
  std::sort(cuts.begin(), cuts.end());
  auto h = [&](double sigma) {
    const double e = std::exp(sigma);
    return g(s_lo + (e - 1.0)) * e;
  };
  const auto r = quad::integrate_pieces(h, cuts, cfg);
  detail::require(r, "depth_integral");
  return r.value;
}

/// Depth of the outer radius R.
inline double outer_depth(double R) { return -std::log(R); }

/// Hardy functional of u on the annulus eps < r < R, by quadrature in r of
/// (u'^2 - c* u^2 / r^2) r^{N-1}.
inline double annulus_functional(const RadialProfile& p, double eps, double R) {
  if (!(eps > 0.0 && eps < R)) throw std::invalid_argument("annulus_functional: need 0 < eps < R");
  const Dimension d = p.dim();
  const double c = d.critical();
  const int N = d.value();
  auto f = [&](double r) {
    const double u = p.u(r);
    const double du = p.du(r);
    return (du * du - c * u * u / (r * r)) * std::pow(r, N - 1);
  };
  std::vector<double> cuts{eps};
  for (double x : p.kinks())
    if (x > eps && x < R) cuts.push_back(x);
  cuts.push_back(R);
  std::sort(cuts.begin(), cuts.end());
  // grade toward the inner radius, where u grows like r^{-k}
  quad::QuadResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto r = quad::integrate(f, cuts[i], cuts[i + 1], energy_quad(),
                             i == 0 ? quad::SingularEnd::left : quad::SingularEnd::none);
    total.value += r.value;
  }
  detail::require(total, "annulus_functional");
  return d.sphere_area() * total.value;
}

/// Same functional with the inner cutoff given as a depth s = ln(1/eps);
/// evaluated in the depth variable, so s may be far beyond the double range of eps.
inline double annulus_functional_at_depth(const RadialProfile& p, double s, double R) {
  const double k = p.dim().half_gap();
  auto g = [&](double x) {
    const double vs = p.depth_slope(x);
    return vs * (vs + 2.0 * k * p.value_at_depth(x));
  };
  return p.dim().sphere_area() * depth_integral(p, g, outer_depth(R), s);
}

/// Singularity energy L_eps = (N-2)/2 eps^{-(N-1)} int_{|x|=eps} v^2 dS = k A v(eps)^2.
inline double singularity_energy(const RadialProfile& p, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("singularity_energy: eps must be positive");
  const double v = p.value(eps);
  return p.dim().singular_weight() * v * v;
}

inline double singularity_energy_at_depth(const RadialProfile& p, double s) {
  const double v = p.value_at_depth(s);
  return p.dim().singular_weight() * v * v;
}

/// Cutoffs used when taking eps -> 0, as depths ln(1/eps).
/// Regular profiles settle by eps = 1e-6; the slow classes need depths up to 1e8.
inline std::vector<double> cutoff_depths(const RadialProfile& p) {
  if (p.deep_origin()) return quad::deep_depths(8);
  std::vector<double> s;
  for (double e : quad::decimal_cutoffs(6)) s.push_back(-std::log(e));
  return s;
}

/// Weighted Dirichlet energy A int_{eps}^{R} v'^2 r dr for eps > 0.
inline double weighted_dirichlet_at_depth(const RadialProfile& p, double s, double R) {
  auto g = [&](double x) {
    const double vs = p.depth_slope(x);
    return vs * vs;
  };
  return p.dim().sphere_area() * depth_integral(p, g, outer_depth(R), s);
}

/// eps -> 0 limit of the weighted Dirichlet energy, with its classification.
inline quad::LimitResult weighted_dirichlet_limit(const RadialProfile& p, double R) {
  return quad::limit_over_depths([&](double s) { return weighted_dirichlet_at_depth(p, s, R); },
                                 cutoff_depths(p));
}

/// Weighted Dirichlet energy over eps < r < R. eps = 0 takes the limit:
/// +inf when the energies diverge, NaN when they do not settle.
inline double weighted_dirichlet(const RadialProfile& p, double eps, double R) {
  if (!(eps >= 0.0 && eps < R)) throw std::invalid_argument("weighted_dirichlet: need 0 <= eps < R");
  if (eps > 0.0) return weighted_dirichlet_at_depth(p, -std::log(eps), R);
  const auto lim = weighted_dirichlet_limit(p, R);
  if (lim.classification == quad::LimitClass::converged) return lim.limit;
  if (lim.classification == quad::LimitClass::diverging) return INFINITY;
  return NAN;
}

/// Weighted L^2 norm squared A int_0^R v^2 r dr, equal to int u^2 dx over B_R.
inline double l2_norm2(const RadialProfile& p, double R = 1.0) {
  auto g = [&](double s) {
    const double v = p.value_at_depth(s);
    return v * v * std::exp(-2.0 * s);
  };
  return p.dim().sphere_area() * depth_integral(p, g, outer_depth(R), INFINITY);
}

struct HardyBreakdown {
  double eps;
  double I_annulus;
  double L_eps;
  double weighted_dirichlet;
  double outer_trace;  ///< k A v(R)^2, zero for profiles vanishing at R
  double residual;     ///< I_annulus - weighted_dirichlet - L_eps + outer_trace
};

inline HardyBreakdown breakdown(const RadialProfile& p, double eps, double R = 1.0) {
  HardyBreakdown b{};
  b.eps = eps;
  b.I_annulus = annulus_functional(p, eps, R);
  b.L_eps = singularity_energy(p, eps);
  b.weighted_dirichlet = weighted_dirichlet(p, eps, R);
  const double vR = R >= p.outer() ? 0.0 : p.value(R);
  b.outer_trace = p.dim().singular_weight() * vR * vR;
  b.residual = b.I_annulus - b.weighted_dirichlet - b.L_eps + b.outer_trace;
  return b;
}

/// Limit of I on annuli alone (principal value); diverges or oscillates for
/// the slow classes.
inline quad::LimitResult principal_value(const RadialProfile& p, double R = 1.0) {
  if (p.deep_origin()) {
    return quad::limit_over_depths([&](double s) { return annulus_functional_at_depth(p, s, R); },
                                   cutoff_depths(p));
  }
  const auto eps = quad::decimal_cutoffs(6);
  return quad::integrate_to_limit([&](double e) { return annulus_functional(p, e, R); }, eps);
}

/// Limit of the singularity energy L_eps.
inline quad::LimitResult singularity_limit(const RadialProfile& p) {
  return quad::limit_over_depths([&](double s) { return singularity_energy_at_depth(p, s); },
                                 cutoff_depths(p));
}

/// lim (I on eps < r < R  -  L_eps), the norm that stays finite for all
/// four origin classes.
inline quad::LimitResult cutoff_norm(const RadialProfile& p, double R = 1.0) {
  return quad::limit_over_depths(
      [&](double s) { return annulus_functional_at_depth(p, s, R) - singularity_energy_at_depth(p, s); },
      cutoff_depths(p));
}

/// Hardy bilinear form minus the cross singularity term k A v1(0) v2(0).
/// Only for profiles whose v has a limit at the origin.
inline double inner_product(const RadialProfile& p1, const RadialProfile& p2, double R = 1.0) {
  auto admissible = [](const RadialProfile& p) {
    return p.origin_class() == OriginClass::finite_limit || p.origin_class() == OriginClass::vanishing;
  };
  if (!admissible(p1) || !admissible(p2)) {
    throw std::invalid_argument("inner_product: profiles must have a finite value at the origin");
  }
  if (!(p1.dim() == p2.dim())) throw std::invalid_argument("inner_product: dimension mismatch");
  const Dimension d = p1.dim();
  const int N = d.value();
  const double c = d.critical();
  auto bilinear = [&](double eps) {
    auto f = [&](double r) {
      return (p1.du(r) * p2.du(r) - c * p1.u(r) * p2.u(r) / (r * r)) * std::pow(r, N - 1);
    };
    std::vector<double> cuts{eps, R};
    for (double x : p1.kinks())
      if (x > eps && x < R) cuts.push_back(x);
    for (double x : p2.kinks())
      if (x > eps && x < R) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      sum += quad::integrate(f, cuts[i], cuts[i + 1], energy_quad(),
                             i == 0 ? quad::SingularEnd::left : quad::SingularEnd::none)
                 .value;
    }
    return d.sphere_area() * sum - d.singular_weight() * p1.value(eps) * p2.value(eps);
  };
  const auto eps = quad::decimal_cutoffs(6);
  const auto lim = quad::integrate_to_limit(bilinear, eps);
  if (lim.classification != quad::LimitClass::converged) {
    throw DivergentNorm("inner_product: cutoff limit did not settle");
  }
  return lim.limit;
}

}  // namespace hardylab::hardy
