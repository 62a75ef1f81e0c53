#pragma once

// Bessel functions of the first kind J_nu for real order nu >= 0 and real
// argument x >= 0, their derivatives and positive zeros.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hardylab::specfun {

/// Order of a Bessel function. Orders are nonnegative reals.
struct BesselOrder {
  double nu;

  constexpr BesselOrder(double order) : nu(order) {  // NOLINT: implicit on purpose
    if (!(order >= 0.0)) throw std::domain_error("Bessel order must be >= 0");
  }
};

namespace detail {

// Below this argument the ascending series is summed in extended precision;
// above it the Hankel asymptotic expansion is used. At x = 18 the largest
// series term is ~1e6, so long double leaves ~1e-13 absolute error, and the
// smallest asymptotic term is ~e^{-2x} ~ 1e-16.
inline constexpr double kSeriesLimit = 18.0;

inline double ascending_series(double nu, double x) {
  const long double q = -0.25L * static_cast<long double>(x) * x;
  const long double lnu = nu;
  long double term = 1.0L / std::tgamma(lnu + 1.0L);
  long double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (static_cast<long double>(k) * (lnu + k));
    sum += term;
    if (std::fabs(term) < 1e-28L && k > 0.5 * x) break;
  }
  if (nu == 0.0) return static_cast<double>(sum);
  return static_cast<double>(sum * std::pow(0.5L * static_cast<long double>(x), lnu));
}

inline double hankel_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    const double mag = std::fabs(term);
    if (mag > last) break;  // series is asymptotic: stop at the smallest term
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (mag < 1e-18) break;
    last = mag;
  }
  const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

inline bool is_integer(double nu) { return nu == std::floor(nu); }

}  // namespace detail

/// J_nu(x) for nu >= 0, x >= 0.
inline double bessel_j(BesselOrder order, double x) {
  if (!(x >= 0.0)) throw std::domain_error("bessel_j: argument must be >= 0");
  const double nu = order.nu;
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x <= detail::kSeriesLimit) return detail::ascending_series(nu, x);
  return detail::hankel_asymptotic(nu, x);
}

/// dJ_nu/dx. Uses J_nu' = (nu/x) J_nu - J_{nu+1}; for nu = 0 this is -J_1.
inline double bessel_j_deriv(BesselOrder order, double x) {
  const double nu = order.nu;
  if (x < 0.0 || std::isnan(x)) throw std::domain_error("bessel_j_deriv: argument must be >= 0");
  if (nu == 0.0) return -bessel_j(1.0, x);
  if (x == 0.0) {
    if (!detail::is_integer(nu)) {
      throw std::domain_error("bessel_j_deriv: fractional order is not differentiable at 0");
    }
    return nu == 1.0 ? 0.5 : 0.0;
  }
  return nu / x * bessel_j(nu, x) - bessel_j(nu + 1.0, x);
}

/// Raised when a zero cannot be bracketed or the bracket holds the wrong zero.
class ZeroNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// k-th positive zero z_{nu,k} of J_nu, k >= 1.
///
/// McMahon's expansion gives the starting point; a sign-change bracket around
/// it is then refined by Newton steps that fall back to bisection whenever an
/// iterate leaves the bracket. A coarse sign-change count on (0, z) confirms
/// that the located root is the k-th one.
inline double bessel_zero(BesselOrder order, int k) {
  if (k < 1) throw std::domain_error("bessel_zero: index must be >= 1");
  const double nu = order.nu;
  const double pi = std::numbers::pi;
  const double beta = (k + 0.5 * nu - 0.25) * pi;
  const double mu = 4.0 * nu * nu;
  const double b8 = 8.0 * beta;
  double guess = beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8);
  if (guess <= 0.0) guess = 0.5 * (nu + 1.0);

  auto f = [nu](double x) { return bessel_j(nu, x); };

  double lo = 0.0;
  double hi = 0.0;
  bool bracketed = false;
  for (double half = 0.25; half <= 1.5 && !bracketed; half += 0.25) {
    const double a = std::max(guess - half, 1e-6);
    const double b = guess + half;
    const int steps = 8;
    double xa = a;
    double fa = f(xa);
    // pick the sign change nearest to the guess
    double best = INFINITY;
    for (int i = 1; i <= steps; ++i) {
      const double xb = a + (b - a) * i / steps;
      const double fb = f(xb);
      if (fa == 0.0 || fa * fb < 0.0) {
        const double mid = 0.5 * (xa + xb);
        if (std::fabs(mid - guess) < best) {
          best = std::fabs(mid - guess);
          lo = xa;
          hi = xb;
          bracketed = true;
        }
      }
      xa = xb;
      fa = fb;
    }
  }
  if (!bracketed) {
    throw ZeroNotFound("bessel_zero: no sign change near McMahon estimate for order " +
                       std::to_string(nu) + ", index " + std::to_string(k));
  }

  double flo = f(lo);
  if (flo == 0.0) return lo;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx == 0.0) break;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double d = bessel_j_deriv(nu, x);
    double next = x - fx / d;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) <= 4e-16 * x) {
      x = next;
      break;
    }
    x = next;
  }

  // count sign changes below x - margin to confirm the index
  const double margin = 0.3;
  const double step = 0.05;
  int count = 0;
  double prev = f(step);
  for (double t = 2 * step; t < x - margin; t += step) {
    const double cur = f(t);
    if (prev * cur < 0.0) ++count;
    prev = cur;
  }
  if (count != k - 1) {
    throw ZeroNotFound("bessel_zero: located root is not zero #" + std::to_string(k));
  }
  return x;
}

}  // namespace hardylab::specfun
