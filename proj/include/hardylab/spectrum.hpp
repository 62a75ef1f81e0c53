#pragma once

// Radial eigenpairs of the critical operator on the unit ball, Rayleigh
// quotients, mode expansions and the subcritical family.

#include <cmath>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hardylab/hardy.hpp"
#include "hardylab/profiles.hpp"
#include "hardylab/specfun.hpp"

namespace hardylab::spectrum {

/// Zeros z_{0,k} of J_0, computed once per index.
inline double radial_zero(int k) {
  static std::mutex mu;
  static std::map<int, double> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(k); it != cache.end()) return it->second;
  }
  const double z = specfun::bessel_zero(0.0, k);
  std::lock_guard lock(mu);
  cache.emplace(k, z);
  return z;
}

/// Radial mode v_k(r) = J_0(z_{0,k} r), normalised by v_k(0) = 1.
struct EigenMode {
  Dimension dim;
  int k;
  double zero;
  double eigenvalue;  ///< z_{0,k}^2
  double norm2;       ///< A J_1(z)^2 / 2, the weighted L^2 norm squared of v_k

  double value(double r) const { return specfun::bessel_j(0.0, zero * r); }
  double slope(double r) const { return -zero * specfun::bessel_j(1.0, zero * r); }
  double curvature(double r) const {
    // J_0'' = -J_0 - J_0'/x
    const double x = zero * r;
    if (x == 0.0) return -0.5 * zero * zero;
    return zero * zero * (-specfun::bessel_j(0.0, x) + specfun::bessel_j(1.0, x) / x);
  }
};

inline EigenMode eigenmode(Dimension dim, int k) {
  if (k < 1) throw std::domain_error("eigenmode: index must be >= 1");
  const double z = radial_zero(k);
  const double j1 = specfun::bessel_j(1.0, z);
  return {dim, k, z, z * z, 0.5 * dim.sphere_area() * j1 * j1};
}

inline std::vector<EigenMode> eigenmodes(Dimension dim, int K) {
  std::vector<EigenMode> m;
  m.reserve(K);
  for (int k = 1; k <= K; ++k) m.push_back(eigenmode(dim, k));
  return m;
}

/// Rayleigh quotient: cutoff-limit norm over the L^2 norm.
inline double rayleigh(const RadialProfile& p) {
  const auto n = hardy::cutoff_norm(p);
  if (n.classification != quad::LimitClass::converged) {
    throw hardy::DivergentNorm("rayleigh: cutoff norm " + quad::to_string(n.classification));
  }
  return n.limit / hardy::l2_norm2(p);
}

/// Coefficients over radial modes at a given time.
class SpectralField {
 public:
  SpectralField(std::vector<EigenMode> modes, std::vector<double> coeffs, double time = 0.0)
      : modes_(std::move(modes)), coeffs_(std::move(coeffs)), time_(time) {
    if (modes_.size() != coeffs_.size()) throw std::invalid_argument("SpectralField: size mismatch");
    if (modes_.empty()) throw std::invalid_argument("SpectralField: no modes");
    for (double c : coeffs_)
      if (!std::isfinite(c)) throw std::invalid_argument("SpectralField: non-finite coefficient");
  }

  const std::vector<EigenMode>& modes() const { return modes_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double time() const { return time_; }
  Dimension dim() const { return modes_.front().dim; }

  double value(double r) const {
    double s = 0.0;
    for (std::size_t i = 0; i < modes_.size(); ++i) s += coeffs_[i] * modes_[i].value(r);
    return s;
  }
  double slope(double r) const {
    double s = 0.0;
    for (std::size_t i = 0; i < modes_.size(); ++i) s += coeffs_[i] * modes_[i].slope(r);
    return s;
  }
  /// Weighted L^2 norm squared, sum c_k^2 norm2_k.
  double energy() const {
    double s = 0.0;
    for (std::size_t i = 0; i < modes_.size(); ++i) s += coeffs_[i] * coeffs_[i] * modes_[i].norm2;
    return s;
  }
  /// Weighted Dirichlet energy, sum c_k^2 mu_k norm2_k.
  double dirichlet() const {
    double s = 0.0;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
      s += coeffs_[i] * coeffs_[i] * modes_[i].eigenvalue * modes_[i].norm2;
    }
    return s;
  }

  /// The field as a profile on the unit ball.
  RadialProfile to_profile() const {
    auto self = std::make_shared<const SpectralField>(*this);
    ProfileTraits t;
    t.name = "spectral";
    t.origin = OriginClass::finite_limit;
    t.origin_value = value(0.0);
    return RadialProfile::from_radius(
        dim(), {[self](double r) { return self->value(r); }, [self](double r) { return self->slope(r); }},
        std::move(t));
  }

 private:
  std::vector<EigenMode> modes_;
  std::vector<double> coeffs_;
  double time_;
};

/// c_k = A int v J_0(z_k r) r dr / norm2_k for k = 1..K.
inline SpectralField expand(const RadialProfile& p, int K) {
  if (K < 1) throw std::domain_error("expand: need K >= 1");
  const Dimension d = p.dim();
  auto modes = eigenmodes(d, K);
  std::vector<double> c;
  c.reserve(K);
  for (const auto& m : modes) {
    auto g = [&](double s) {
      const double r = std::exp(-s);
      return p.value_at_depth(s) * m.value(r) * r * r;
    };
    c.push_back(d.sphere_area() * hardy::depth_integral(p, g, 0.0, INFINITY) / m.norm2);
  }
  return SpectralField(std::move(modes), std::move(c));
}

/// ||v||^2 - sum_k c_k^2 norm2_k.
inline double parseval_defect(const RadialProfile& p, const SpectralField& f) {
  return hardy::l2_norm2(p) - f.energy();
}

struct SubcriticalRow {
  double c;
  double order;            ///< m = sqrt(c* - c)
  double zero;             ///< z_{m,1}
  double eigenvalue;       ///< z_{m,1}^2
  double hardy_norm2;      ///< cutoff norm of e_{1,c} normalised in L^2
};

/// First eigenpair of the subcritical operator along an increasing sequence c -> c*.
///
/// e_{1,c} vanishes at 0, so its cutoff norm is the Hardy functional at the
/// critical constant. Normalised in L^2 this is z_{m,1}^2 minus the work of the
/// extra potential (c* - c) u^2/r^2, and tends to z_{0,1}^2 as m -> 0.
inline std::vector<SubcriticalRow> subcritical_limit(Dimension dim, std::span<const double> cs) {
  std::vector<SubcriticalRow> rows;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i > 0 && !(cs[i] > cs[i - 1])) throw std::invalid_argument("subcritical_limit: c must increase");
    const auto p = profiles::subcritical(dim, cs[i]);
    const double m = std::sqrt(dim.critical() - cs[i]);
    const double z = specfun::bessel_zero(m, 1);
    const auto n = hardy::cutoff_norm(p);
    rows.push_back({cs[i], m, z, z * z, n.limit / hardy::l2_norm2(p)});
  }
  return rows;
}

}  // namespace hardylab::spectrum
