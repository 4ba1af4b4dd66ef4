#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "obm/death_process.hpp"
#include "obm/factor_lp.hpp"
#include "obm/numeric.hpp"

namespace obm {

// The expectation trajectory produced by the uncorrected recurrence
// mu_{t+1} = mu_t - 1 - (mu_t - 1)/(n-t+1), which ignores the boundary at
// zero and therefore can keep falling below it.
struct FlawedSeries {
  int n = 0;
  std::vector<Rational> mu;  // mu[t-1], t = 1..n+1
  std::optional<int> first_negative_t;
};

inline FlawedSeries flawed_expectation_sequence(int n) {
  if (n < 1) throw std::invalid_argument("flawed_expectation_sequence: n must be >= 1");
  FlawedSeries s;
  s.n = n;
  s.mu.reserve(n + 1);
  Rational mu(n);
  for (int t = 1; t <= n + 1; ++t) {
    s.mu.push_back(mu);
    if (mu < 0 && !s.first_negative_t) s.first_negative_t = t;
    if (t <= n) mu = mu - 1 - (mu - 1) / (n - t + 1);
  }
  return s;
}

// Closed-form scaling limit of the uncorrected recurrence:
// g(z) = (1 - z) * (1 + ln(1 - z)) on [0, 1), with g(0) = 1 and root at
// z = 1 - 1/e. Negative values past the root are the visible symptom of the
// dropped boundary condition.
inline double ode_solution(double z) {
  if (z < 0.0 || z >= 1.0)
    throw std::invalid_argument("ode_solution: z must lie in [0, 1)");
  return (1.0 - z) * (1.0 + std::log1p(-z));
}

// Central-difference residual of dg/dz = -(1 + g(z)/(1 - z)); a small value
// certifies that the closed form solves the limiting equation.
inline double ode_residual(double z, double h = 1e-5) {
  if (h <= 0.0) throw std::invalid_argument("ode_residual: step must be positive");
  if (z - h < 0.0 || z + h >= 1.0)
    throw std::invalid_argument("ode_residual: stencil leaves [0, 1)");
  const double slope = (ode_solution(z + h) - ode_solution(z - h)) / (2.0 * h);
  return std::abs(slope + 1.0 + ode_solution(z) / (1.0 - z));
}

struct OdeCurve {
  std::vector<std::pair<double, double>> samples;  // (z, g(z))
  double root = 0.0;                               // 1 - 1/e
};

inline OdeCurve sample_ode_curve(int num_samples = 20) {
  if (num_samples < 2) throw std::invalid_argument("sample_ode_curve: need at least 2 samples");
  OdeCurve curve;
  curve.root = 1.0 - detail::kInvE;
  curve.samples.reserve(num_samples);
  // Evenly spaced on [0, 0.95], snapped to a ten-thousandths grid; the log
  // singularity keeps us away from 1.
  for (int i = 0; i < num_samples; ++i) {
    const double z = std::round(9500.0 * i / (num_samples - 1)) / 10000.0;
    curve.samples.emplace_back(z, ode_solution(z));
  }
  return curve;
}

struct FlawComparisonRow {
  int t = 0;
  double mu = 0.0;           // uncorrected expectation
  double delta_star = 0.0;   // pinned trajectory
  double delta_exact = 0.0;  // true E[Y_t] from the death chain
  double alpha = 0.0;        // Pr[Y_t >= 1]
};

// Side-by-side audit of the flawed quantities against the exact chain.
struct FlawComparison {
  int n = 0;
  std::vector<FlawComparisonRow> rows;
  std::optional<int> first_negative_t;  // first t with mu_t < 0
  bool exact_nonnegative = false;       // delta_t >= 0 for all t
  bool dominance_ok = false;            // delta_t >= mu_t for all t
  std::vector<std::pair<double, double>> negative_tail;  // g(z) samples past the root
};

namespace detail {

template <class T>
FlawComparison compare_flawed_impl(int n, double tol) {
  const FlawedSeries flawed = flawed_expectation_sequence(n);
  const AuxSeries aux = auxiliary_sequence(n);
  const ProcessSummary<T> summary = death_process_summary<T>(n);
  FlawComparison cmp;
  cmp.n = n;
  cmp.first_negative_t = flawed.first_negative_t;
  cmp.exact_nonnegative = true;
  cmp.dominance_ok = true;
  cmp.rows.reserve(n);
  for (int t = 1; t <= n; ++t) {
    FlawComparisonRow row;
    row.t = t;
    row.mu = to_double(flawed.mu[t - 1]);
    row.delta_star = to_double(aux.delta_star[t - 1]);
    row.delta_exact = to_double(summary.delta[t - 1]);
    row.alpha = to_double(summary.alpha[t - 1]);
    cmp.rows.push_back(row);
    if constexpr (is_exact_backend_v<T>) {
      if (summary.delta[t - 1] < 0) cmp.exact_nonnegative = false;
      if (summary.delta[t - 1] < flawed.mu[t - 1]) cmp.dominance_ok = false;
    } else {
      if (summary.delta[t - 1] < -tol) cmp.exact_nonnegative = false;
      if (summary.delta[t - 1] < to_double(flawed.mu[t - 1]) - tol) cmp.dominance_ok = false;
    }
  }
  const double root = 1.0 - kInvE;
  for (double z = 0.65; z < 0.96; z += 0.05)
    if (z > root) cmp.negative_tail.emplace_back(z, ode_solution(z));
  return cmp;
}

}  // namespace detail

inline FlawComparison compare_flawed_vs_exact(int n, double tol = 1e-9,
                                              int exact_limit = kDefaultExactLimit) {
  if (n <= exact_limit) return detail::compare_flawed_impl<Rational>(n, tol);
  return detail::compare_flawed_impl<double>(n, tol);
}

}  // namespace obm
