#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "obm/numeric.hpp"
#include "obm/rng.hpp"

namespace obm {

// A feasible point of the factor-revealing program: alpha_t in
// [0, min(delta_t, 1)] with delta advanced by
// delta_{t+1} = (1 - 1/(n-t+1)) * (delta_t - alpha_t), delta_1 = n.
template <class T>
struct LpSolution {
  int n = 0;
  std::vector<T> alpha;  // alpha[t-1], t = 1..n
  std::vector<T> delta;  // delta[t-1], t = 1..n+1
  T objective = T(0);    // sum of alpha_t
};

// The optimum: alpha_t takes its cap min(delta_t, 1) at every step.
template <class T>
LpSolution<T> greedy_lp_solve(int n) {
  if (n < 1) throw std::invalid_argument("greedy_lp_solve: n must be >= 1");
  LpSolution<T> s;
  s.n = n;
  s.alpha.reserve(n);
  s.delta.reserve(n + 1);
  T delta = T(n);
  for (int t = 1; t <= n; ++t) {
    s.delta.push_back(delta);
    const T a = delta < T(1) ? delta : T(1);
    s.alpha.push_back(a);
    s.objective += a;
    delta = (T(1) - frac<T>(1, n - t + 1)) * (delta - a);
  }
  s.delta.push_back(delta);
  return s;
}

// H_k = 1 + 1/2 + ... + 1/k, exactly; H_0 = 0.
inline Rational harmonic_number(int k) {
  if (k < 0) throw std::invalid_argument("harmonic_number: k must be >= 0");
  Rational h(0);
  for (int l = 1; l <= k; ++l) h += Rational(1, l);
  return h;
}

// The trajectory with alpha pinned to 1 at every step. Unlike the greedy
// delta it may go negative; it is the analytic handle on the optimum.
struct AuxSeries {
  int n = 0;
  std::vector<Rational> delta_star;      // delta_star[t-1], t = 1..n
  std::vector<Rational> harmonic_basis;  // H_1..H_n
};

inline AuxSeries auxiliary_sequence(int n) {
  if (n < 1) throw std::invalid_argument("auxiliary_sequence: n must be >= 1");
  AuxSeries s;
  s.n = n;
  s.delta_star.reserve(n);
  s.harmonic_basis.reserve(n);
  Rational h(0);
  for (int k = 1; k <= n; ++k) {
    h += Rational(1, k);
    s.harmonic_basis.push_back(h);
  }
  Rational d(n);
  for (int t = 1; t <= n; ++t) {
    s.delta_star.push_back(d);
    d = (Rational(1) - Rational(1, n - t + 1)) * (d - 1);
  }
  return s;
}

// Closed form of the pinned trajectory:
// delta_star_t = (n+1-t) * (1 + H_{n+1-t} - H_n).
inline Rational closed_form_delta(int n, int t) {
  if (n < 1) throw std::invalid_argument("closed_form_delta: n must be >= 1");
  if (t < 1 || t > n) throw std::invalid_argument("closed_form_delta: t must be in 1..n");
  const int k = n + 1 - t;
  return Rational(k) * (Rational(1) + harmonic_number(k) - harmonic_number(n));
}

namespace detail {

inline const double kInvE = std::exp(-1.0);

}  // namespace detail

// Fractional root of the continuous envelope, (1 - 1/e)*n + 2 - 1/e.
inline double envelope_root(int n) {
  if (n < 1) throw std::invalid_argument("envelope_root: n must be >= 1");
  return (1.0 - detail::kInvE) * n + 2.0 - detail::kInvE;
}

// Ceiling bound on the expected matching size. Taking ceil of a double that
// sits near an integer is the one genuinely dangerous numeric step here, so
// near-integer cases are re-resolved at 50 significant digits.
inline long ceiling_bound(int n) {
  if (n < 1) throw std::invalid_argument("ceiling_bound: n must be >= 1");
  const double x = envelope_root(n);
  if (std::abs(x - std::nearbyint(x)) > 1e-9) return static_cast<long>(std::ceil(x));
  using HighPrec = boost::multiprecision::cpp_bin_float_50;
  const HighPrec inv_e = exp(HighPrec(-1));
  const HighPrec hx = (HighPrec(1) - inv_e) * n + 2 - inv_e;
  return ceil(hx).convert_to<long>();
}

// Continuous upper envelope of the pinned trajectory:
// g(t) = (n+1-t) * (1 - ln((n+1)/(n+2-t))) on [1, n]. g is decreasing and
// vanishes exactly at envelope_root(n).
inline double continuous_envelope(int n, double t) {
  if (n < 1) throw std::invalid_argument("continuous_envelope: n must be >= 1");
  if (t < 1.0 || t > static_cast<double>(n))
    throw std::invalid_argument("continuous_envelope: t must be in [1, n]");
  return (n + 1 - t) * (1.0 - std::log((n + 1.0) / (n + 2.0 - t)));
}

// Feasible-point sampler used as an optimality witness: alpha_t is drawn in
// [0, min(delta_t, 1)] via `unit()` in [0, 1]. Forcing unit() = 1 reproduces
// the greedy optimum; forcing 0 yields the all-zero solution.
template <class UnitFn>
LpSolution<double> random_feasible_with(int n, UnitFn&& unit) {
  if (n < 1) throw std::invalid_argument("random_feasible_with: n must be >= 1");
  LpSolution<double> s;
  s.n = n;
  s.alpha.reserve(n);
  s.delta.reserve(n + 1);
  double delta = n;
  for (int t = 1; t <= n; ++t) {
    s.delta.push_back(delta);
    const double cap = std::min(delta, 1.0);
    const double a = static_cast<double>(unit()) * cap;
    s.alpha.push_back(a);
    s.objective += a;
    delta = (1.0 - 1.0 / (n - t + 1)) * (delta - a);
  }
  s.delta.push_back(delta);
  return s;
}

inline LpSolution<double> random_feasible(int n, RngSpec spec) {
  TrialRng rng(spec);
  return random_feasible_with(n, [&] { return rng.next_unit(); });
}

}  // namespace obm
