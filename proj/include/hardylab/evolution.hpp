#pragma once

// Singular heat flow on the unit ball in the regular part v, where it is the
// planar radial heat equation v_t = v'' + v'/r with v(1) = 0 and v'(0) = 0.
// Two solvers: exact decay of mode coefficients, and a finite-volume theta
// scheme on r_j = j h.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "hardylab/kelvin.hpp"
#include "hardylab/profiles.hpp"
#include "hardylab/spectrum.hpp"

namespace hardylab::evolution {

using spectrum::SpectralField;

/// Coefficients multiplied by exp(-mu_k t).
inline SpectralField evolve_spectral(const SpectralField& f, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("evolve_spectral: t must be >= 0");
  std::vector<double> c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::exp(-f.modes()[i].eigenvalue * t);
  return SpectralField(f.modes(), std::move(c), f.time() + t);
}

struct FDGrid {
  int M = 512;         ///< unknowns at r_0 = 0, ..., r_M; v(r_{M+1} = 1) = 0
  double theta = 0.5;  ///< 1/2 trapezoidal, 1 implicit Euler
  double dt = 1e-4;

  double h() const { return 1.0 / (M + 1); }
  void validate() const {
    if (M < 64) throw std::invalid_argument("FDGrid: need M >= 64");
    if (!(dt > 0.0)) throw std::invalid_argument("FDGrid: need dt > 0");
    if (theta != 0.5 && theta != 1.0) throw std::invalid_argument("FDGrid: theta must be 1/2 or 1");
  }
};

class LinearSolveFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Solves a tridiagonal system in place (Thomas algorithm). sub[0] and sup[n-1] unused.
inline void solve_tridiagonal(std::vector<double> sub, std::vector<double> diag, std::vector<double> sup,
                              std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0) throw LinearSolveFailure("tridiagonal: zero pivot");
    const double m = sub[i] / diag[i - 1];
    diag[i] -= m * sup[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  if (diag[n - 1] == 0.0) throw LinearSolveFailure("tridiagonal: zero pivot");
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

/// One finite-volume run. Cell j has volume V_j = r_j h (V_0 = h^2/8 around the
/// axis); the face between j and j+1 sits at r_{j+1/2}. The axis row equals the
/// ghost-node closure v_{-1} = v_1.
class FdRun {
 public:
  FdRun(const RadialProfile& p, FDGrid g) : g_(g), A_(p.dim().sphere_area()) {
    g_.validate();
    const int n = g_.M + 1;
    const double h = g_.h();
    r_.resize(n);
    vol_.resize(n);
    v_.resize(n);
    for (int j = 0; j < n; ++j) {
      r_[j] = j * h;
      vol_[j] = j == 0 ? h * h / 8.0 : r_[j] * h;
      v_[j] = p.value(r_[j]);
    }
    // stiffness K: (K v)_j = -(face flux out - face flux in)
    kd_.assign(n, 0.0);
    ko_.assign(n, 0.0);  // ko_[j] couples j and j+1
    for (int j = 0; j < n; ++j) {
      const double face = (j + 0.5) * h;
      ko_[j] = -face / h;
      kd_[j] += face / h;
      if (j + 1 < n) kd_[j + 1] += face / h;
    }
  }

  double time() const { return t_; }
  const std::vector<double>& nodes() const { return r_; }
  const std::vector<double>& values() const { return v_; }
  const std::vector<double>& volumes() const { return vol_; }
  double sphere_area() const { return A_; }
  const FDGrid& grid() const { return g_; }

  void step() { step_by(g_.dt); }

  /// Advances with steps of dt; the last step is shortened to land on t.
  void advance_to(double t) {
    if (t < t_ - 1e-14) throw std::invalid_argument("FdRun: cannot go back in time");
    while (t - t_ > 1e-12 * std::max(1.0, t)) step_by(std::min(g_.dt, t - t_));
  }

  /// Weighted L^2 norm squared, A sum V_j v_j^2.
  double energy() const {
    double s = 0.0;
    for (std::size_t j = 0; j < v_.size(); ++j) s += vol_[j] * v_[j] * v_[j];
    return A_ * s;
  }
  /// Weighted Dirichlet energy, A sum r_{j+1/2} (v_{j+1} - v_j)^2 / h.
  double dirichlet() const {
    const double h = g_.h();
    double s = 0.0;
    for (std::size_t j = 0; j < v_.size(); ++j) {
      const double next = j + 1 < v_.size() ? v_[j + 1] : 0.0;
      const double d = next - v_[j];
      s += (j + 0.5) * h * d * d / h;
    }
    return A_ * s;
  }
  /// Boundary term eps^{2-N} int_{|x|=eps} v v_r dS at the innermost face eps = h/2.
  double flux_diagnostic() const {
    const double h = g_.h();
    const double vbar = 0.5 * (v_[0] + v_[1]);
    const double vr = (v_[1] - v_[0]) / h;
    return A_ * 0.5 * h * vbar * vr;
  }
  /// Piecewise linear interpolant of the nodal values.
  double value(double r) const {
    if (r >= 1.0) return 0.0;
    const double h = g_.h();
    const double x = r / h;
    const std::size_t j = static_cast<std::size_t>(x);
    const double right = j + 1 < v_.size() ? v_[j + 1] : 0.0;
    const double w = x - j;
    return (1.0 - w) * v_[j] + w * right;
  }

 private:
  void step_by(double dt) {
    const std::size_t n = v_.size();
    const double a = g_.theta * dt;
    const double b = (1.0 - g_.theta) * dt;
    std::vector<double> rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
      double kv = kd_[j] * v_[j];
      if (j + 1 < n) kv += ko_[j] * v_[j + 1];
      if (j > 0) kv += ko_[j - 1] * v_[j - 1];
      rhs[j] = vol_[j] * v_[j] - b * kv;
    }
    std::vector<double> sub(n, 0.0);
    std::vector<double> diag(n);
    std::vector<double> sup(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      diag[j] = vol_[j] + a * kd_[j];
      if (j + 1 < n) sup[j] = a * ko_[j];
      if (j > 0) sub[j] = a * ko_[j - 1];
    }
    solve_tridiagonal(std::move(sub), std::move(diag), std::move(sup), rhs);
    v_ = std::move(rhs);
    t_ += dt;
  }

  FDGrid g_;
  double A_;
  double t_ = 0.0;
  std::vector<double> r_;
  std::vector<double> vol_;
  std::vector<double> v_;
  std::vector<double> kd_;
  std::vector<double> ko_;
};

struct GridSolution {
  std::vector<double> r;
  std::vector<double> v;
  double time;
};

/// Theta-scheme solution at time t, sampled at the grid nodes.
inline GridSolution evolve_fd(const RadialProfile& p, double t, const FDGrid& g) {
  if (!(t >= 0.0)) throw std::invalid_argument("evolve_fd: t must be >= 0");
  FdRun run(p, g);
  run.advance_to(t);
  return {run.nodes(), run.values(), run.time()};
}

/// Weighted L^2 distance between a grid solution and a spectral field, with the
/// finite-volume weights.
inline double weighted_l2_distance(const FdRun& run, const SpectralField& f) {
  double s = 0.0;
  const auto& r = run.nodes();
  const auto& v = run.values();
  const auto& V = run.volumes();
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double d = v[j] - f.value(r[j]);
    s += V[j] * d * d;
  }
  return std::sqrt(run.sphere_area() * s);
}

struct EnergySample {
  double t;
  double E;
  double dEdt_est;         ///< central difference of E in time
  double minus2dirichlet;  ///< -2 times the weighted Dirichlet energy at t
  double flux_diag;        ///< innermost boundary term (grid runs); 0 for spectral
};

/// Energy law along the exact spectral flow. dE/dt is a central difference of
/// E; the Dirichlet energy is evaluated by quadrature of the evolved profile.
inline std::vector<EnergySample> energy_trace(const SpectralField& f0, std::span<const double> times) {
  std::vector<EnergySample> out;
  for (double t : times) {
    const auto f = evolve_spectral(f0, t);
    auto E = [&](double s) { return evolve_spectral(f0, s).energy(); };
    double rate;
    if (t >= 1e-5) {
      const double dt = 1e-5 * std::max(1.0, t);
      rate = (E(t + dt) - E(t - dt)) / (2.0 * dt);
    } else {
      // second-order forward difference near t = 0
      const double dt = 1e-7;
      rate = (-3.0 * f.energy() + 4.0 * E(t + dt) - E(t + 2.0 * dt)) / (2.0 * dt);
    }
    const auto prof = f.to_profile();
    out.push_back({t, f.energy(), rate, -2.0 * hardy::weighted_dirichlet(prof, 0.0, 1.0), 0.0});
  }
  return out;
}

/// Energy law along a grid run; dE/dt from the states one step before and after t.
inline std::vector<EnergySample> energy_trace(const RadialProfile& p, const FDGrid& g,
                                              std::span<const double> times) {
  FdRun run(p, g);
  std::vector<EnergySample> out;
  for (double t : times) {
    if (t < g.dt) throw std::invalid_argument("energy_trace: sample times must be >= dt");
    run.advance_to(t - g.dt);
    const double em = run.energy();
    run.advance_to(t);
    EnergySample s{t, run.energy(), 0.0, -2.0 * run.dirichlet(), run.flux_diagnostic()};
    run.advance_to(t + g.dt);
    s.dEdt_est = (run.energy() - em) / (2.0 * g.dt);
    out.push_back(s);
  }
  return out;
}

/// Exterior flow through the Kelvin pullback: expand the preimage in K modes,
/// decay the coefficients, map forward.
inline kelvin::ExteriorProfile evolve_exterior(const kelvin::ExteriorProfile& q, double t, int K = 50) {
  const RadialProfile p = q.preimage() ? *q.preimage() : kelvin::kelvin_unmap(q);
  const auto f = evolve_spectral(spectrum::expand(p, K), t);
  return kelvin::kelvin_map(f.to_profile());
}

/// Same flow with the grid solver on the ball.
inline kelvin::ExteriorProfile evolve_exterior_fd(const kelvin::ExteriorProfile& q, double t,
                                                  const FDGrid& g) {
  const RadialProfile p = q.preimage() ? *q.preimage() : kelvin::kelvin_unmap(q);
  auto run = std::make_shared<FdRun>(p, g);
  run->advance_to(t);
  const double h = g.h();
  ProfileTraits tr;
  tr.name = "grid";
  tr.origin_value = run->values().front();
  auto prof = RadialProfile::from_radius(
      p.dim(),
      {[run](double r) { return run->value(r); },
       [run, h](double r) {
         const double x = std::min(r, 1.0 - 1e-15) / h;
         const std::size_t j = static_cast<std::size_t>(x);
         const auto& v = run->values();
         const double right = j + 1 < v.size() ? v[j + 1] : 0.0;
         return (right - v[j]) / h;
       }},
      std::move(tr));
  return kelvin::kelvin_map(prof);
}

}  // namespace hardylab::evolution
