#pragma once

// Adaptive Gauss-Legendre quadrature with endpoint grading, and the
// limit classifier used for cutoff sequences.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardylab::quad {

enum class SingularEnd { none, left, right, both };

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_depth = 50;            ///< max bisection depth of any panel
  double endpoint_grading = 0.5; ///< ratio of successive graded panels at a singular end
  int max_panels = 40000;
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
  bool converged = true;
  long evaluations = 0;
};

namespace detail {

inline constexpr int kOrder = 15;

struct Rule {
  std::array<double, kOrder> x{};
  std::array<double, kOrder> w{};
};

// Nodes and weights on [-1, 1] from Newton iteration on P_n.
inline const Rule& gauss_rule() {
  static const Rule rule = [] {
    Rule r;
    const int n = kOrder;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p1 = 1.0;
        double p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        const double dz = p1 / pp;
        z -= dz;
        if (std::fabs(dz) < 1e-16) break;
      }
      r.x[i] = z;
      r.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return r;
  }();
  return rule;
}

template <class F>
double gauss(F& f, double a, double b, long& evals) {
  const Rule& r = gauss_rule();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < kOrder; ++i) s += r.w[i] * f(c + h * r.x[i]);
  evals += kOrder;
  return s * h;
}

struct Panel {
  double a;
  double b;
  double value;
  double err;
  int depth;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
Panel make_panel(F& f, double a, double b, int depth, long& evals) {
  const double m = 0.5 * (a + b);
  const double whole = gauss(f, a, b, evals);
  const double halves = gauss(f, a, m, evals) + gauss(f, m, b, evals);
  double err = std::fabs(whole - halves);
  if (!std::isfinite(halves)) err = INFINITY;
  return {a, b, halves, err, depth};
}

}  // namespace detail

/// Integral of f over [a, b].
///
/// Global adaptive scheme: the panel with the largest error estimate is
/// bisected until the summed estimate meets max(abs_tol, rel_tol * |value|).
/// Flagged ends get a geometric initial partition so that integrable endpoint
/// singularities do not exhaust the panel budget.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadConfig& cfg = {},
                     SingularEnd ends = SingularEnd::none) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (!(cfg.endpoint_grading > 0.0 && cfg.endpoint_grading < 1.0)) {
    throw std::invalid_argument("integrate: endpoint_grading must lie in (0, 1)");
  }
  QuadResult res;
  if (a == b) return res;

  std::vector<double> cuts;
  const bool left = ends == SingularEnd::left || ends == SingularEnd::both;
  const bool right = ends == SingularEnd::right || ends == SingularEnd::both;
  const double g = cfg.endpoint_grading;
  const int levels = std::min(cfg.max_depth, 60);
  // grading stops where b - w would sit within a few ulps of b
  auto resolvable = [](double w, double end) {
    return w > 1e3 * std::numeric_limits<double>::epsilon() * std::fabs(end);
  };
  if (left && right) {
    const double m = 0.5 * (a + b);
    double w = 0.5 * (b - a);
    std::vector<double> lo;
    std::vector<double> hi;
    for (int j = 0; j < levels; ++j) {
      w *= g;
      if (resolvable(w, a)) lo.push_back(a + w);
      if (resolvable(w, b)) hi.push_back(b - w);
    }
    cuts.push_back(a);
    for (auto it = lo.rbegin(); it != lo.rend(); ++it) cuts.push_back(*it);
    cuts.push_back(m);
    for (double x : hi) cuts.push_back(x);
    cuts.push_back(b);
  } else if (left) {
    double w = b - a;
    std::vector<double> lo;
    for (int j = 0; j < levels && resolvable(w * g, a); ++j) {
      w *= g;
      lo.push_back(a + w);
    }
    cuts.push_back(a);
    for (auto it = lo.rbegin(); it != lo.rend(); ++it) cuts.push_back(*it);
    cuts.push_back(b);
  } else if (right) {
    double w = b - a;
    cuts.push_back(a);
    std::vector<double> hi;
    for (int j = 0; j < levels && resolvable(w * g, b); ++j) {
      w *= g;
      hi.push_back(b - w);
    }
    for (auto it = hi.begin(); it != hi.end(); ++it) cuts.push_back(*it);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
  } else {
    cuts = {a, b};
  }
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Panel> open;
  std::vector<detail::Panel> closed;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    auto p = detail::make_panel(f, cuts[i], cuts[i + 1], 0, res.evaluations);
    total += p.value;
    total_err += p.err;
    open.push(p);
  }

  auto target = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total)); };
  int panels = static_cast<int>(open.size());
  while (!open.empty() && total_err > target() && panels < cfg.max_panels) {
    detail::Panel worst = open.top();
    open.pop();
    if (worst.depth >= cfg.max_depth || !(worst.b - worst.a > std::max(4.0 * std::numeric_limits<double>::min(),
                                                              64.0 * std::numeric_limits<double>::epsilon() *
                                                                  std::max(std::fabs(worst.a), std::fabs(worst.b))))) {
      closed.push_back(worst);
      res.converged = false;
      continue;
    }
    const double m = 0.5 * (worst.a + worst.b);
    auto l = detail::make_panel(f, worst.a, m, worst.depth + 1, res.evaluations);
    auto r = detail::make_panel(f, m, worst.b, worst.depth + 1, res.evaluations);
    total += l.value + r.value - worst.value;
    total_err += l.err + r.err - worst.err;
    open.push(l);
    open.push(r);
    ++panels;
  }

  // re-sum to shed accumulated cancellation from the running totals
  double sum = 0.0;
  double err = 0.0;
  for (const auto& p : closed) {
    sum += p.value;
    err += p.err;
  }
  while (!open.empty()) {
    sum += open.top().value;
    err += open.top().err;
    open.pop();
  }
  res.value = sum;
  res.err_est = err;
  if (!std::isfinite(sum) || err > std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(sum))) {
    res.converged = false;
  }
  return res;
}

/// Integral over consecutive intervals [breaks[i], breaks[i+1]].
/// Each interval is graded at both ends when `ends` is not none.
template <class F>
QuadResult integrate_pieces(F&& f, std::span<const double> breaks, const QuadConfig& cfg = {},
                            SingularEnd ends = SingularEnd::none) {
  QuadResult total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] <= breaks[i]) continue;
    auto r = integrate(f, breaks[i], breaks[i + 1], cfg, ends);
    total.value += r.value;
    total.err_est += r.err_est;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Limits of cutoff sequences

enum class LimitClass { converged, oscillating, diverging, undetermined };

inline std::string to_string(LimitClass c) {
  switch (c) {
    case LimitClass::converged: return "converged";
    case LimitClass::oscillating: return "oscillating";
    case LimitClass::diverging: return "diverging";
    default: return "undetermined";
  }
}

struct LimitResult {
  double limit = NAN;
  LimitClass classification = LimitClass::undetermined;
  std::vector<double> samples;
};

class InsufficientSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LimitConfig {
  double contraction = 0.75;  ///< max ratio of successive differences for convergence
  double growth = 4.0;        ///< min |F_last| / |F_first| for divergence
  double noise = 1e-9;        ///< differences below noise * (1 + max|F|) count as settled
  std::size_t monotone_tail = 4;  ///< samples over which |F| must be monotone for divergence
};

/// Classifies a sequence F_1, F_2, ... sampled along a cutoff sequence.
///
/// converged: the last three differences contract (or sit at noise level);
/// the limit is the Aitken extrapolation of the last three samples.
/// diverging: |F| is monotone over the tail and grew by the growth factor.
/// oscillating: differences change sign without contracting.
inline LimitResult classify_sequence(std::span<const double> values, const LimitConfig& cfg = {}) {
  LimitResult res;
  for (double v : values)
    if (std::isfinite(v)) res.samples.push_back(v);
  const auto& s = res.samples;
  const std::size_t n = s.size();
  if (n < 4) throw InsufficientSamples("limit classification needs at least 4 finite samples");

  double scale = 0.0;
  for (double v : s) scale = std::max(scale, std::fabs(v));
  const double floor = cfg.noise * (1.0 + scale);

  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = s[i + 1] - s[i];

  bool contracting = true;
  for (std::size_t i = n - 4; i + 1 < n - 1; ++i) {
    const double a = std::fabs(d[i]);
    const double b = std::fabs(d[i + 1]);
    if (b <= floor) continue;
    if (b > cfg.contraction * a) contracting = false;
  }
  if (contracting) {
    res.classification = LimitClass::converged;
    const double x0 = s[n - 3];
    const double x1 = s[n - 2];
    const double x2 = s[n - 1];
    const double d1 = x1 - x0;
    const double d2 = x2 - x1;
    const double den = d2 - d1;
    if (std::fabs(d2) <= floor || den == 0.0 || d1 * d2 <= 0.0) {
      res.limit = x2;
    } else {
      res.limit = x2 - d2 * d2 / den;
    }
    return res;
  }

  bool monotone_abs = true;
  const std::size_t tail = std::min(n, std::max<std::size_t>(cfg.monotone_tail, 2));
  for (std::size_t i = n - tail; i + 1 < n; ++i) {
    if (std::fabs(s[i + 1]) < std::fabs(s[i])) monotone_abs = false;
  }
  const double first = std::fabs(s.front());
  if (monotone_abs && std::fabs(s.back()) >= cfg.growth * first && std::fabs(s.back()) > floor) {
    res.classification = LimitClass::diverging;
    res.limit = s.back() > 0 ? INFINITY : -INFINITY;
    return res;
  }

  int sign_changes = 0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] * d[i + 1] < 0.0) ++sign_changes;
  }
  if (sign_changes > 0) {
    res.classification = LimitClass::oscillating;
    return res;
  }
  res.classification = LimitClass::undetermined;
  return res;
}

/// Evaluates F at each cutoff radius (strictly decreasing to 0) and classifies.
template <class F>
LimitResult integrate_to_limit(F&& fn, std::span<const double> eps_sequence,
                               const LimitConfig& cfg = {}) {
  for (std::size_t i = 0; i + 1 < eps_sequence.size(); ++i) {
    if (!(eps_sequence[i + 1] < eps_sequence[i]) || !(eps_sequence[i + 1] > 0.0)) {
      throw std::invalid_argument("integrate_to_limit: cutoffs must decrease strictly and stay positive");
    }
  }
  std::vector<double> v;
  v.reserve(eps_sequence.size());
  for (double e : eps_sequence) v.push_back(fn(e));
  return classify_sequence(v, cfg);
}

/// Same as integrate_to_limit, with cutoffs given as depths ln(1/eps),
/// strictly increasing. Reaches cutoffs far below the double range.
template <class F>
LimitResult limit_over_depths(F&& fn, std::span<const double> depths, const LimitConfig& cfg = {}) {
  for (std::size_t i = 0; i + 1 < depths.size(); ++i) {
    if (!(depths[i + 1] > depths[i])) {
      throw std::invalid_argument("limit_over_depths: depths must increase strictly");
    }
  }
  std::vector<double> v;
  v.reserve(depths.size());
  for (double s : depths) v.push_back(fn(s));
  return classify_sequence(v, cfg);
}

/// 1e-1, 1e-2, ..., 10^{-n}.
inline std::vector<double> decimal_cutoffs(int n = 6) {
  std::vector<double> e;
  for (int j = 1; j <= n; ++j) e.push_back(std::pow(10.0, -j));
  return e;
}

/// Depths 10, 100, ..., 10^n, for profiles whose energy settles only at
/// cutoffs like exp(-10^8).
inline std::vector<double> deep_depths(int n = 8) {
  std::vector<double> s;
  for (int j = 1; j <= n; ++j) s.push_back(std::pow(10.0, j));
  return s;
}

}  // namespace hardylab::quad
