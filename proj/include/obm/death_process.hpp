#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "obm/instances.hpp"
#include "obm/numeric.hpp"

namespace obm {

// Tree-enumeration guard for the brute-force oracle.
inline constexpr int kBruteForceLimit = 9;

// Distribution of the available-neighbor count Y_t at a fixed time t.
// probs[y] is Pr[Y_t = y]; the support lies in 0..n-t+1 for t <= n and
// collapses to {0} at t = n+1.
template <class T>
struct StateDistribution {
  int t = 0;
  std::vector<T> probs;
};

// One step of the death chain: conditioned on Y_t = y >= 1, two deaths occur
// with probability (y-1)/(n-t+1) and one otherwise; state 0 is absorbing.
template <class T>
std::vector<T> death_transition_step(const std::vector<T>& probs, int t, int n) {
  if (t < 1 || t > n) throw std::invalid_argument("death_transition_step: t must be in 1..n");
  std::vector<T> next(probs.size(), T(0));
  next[0] = probs[0];
  const int remaining = n - t + 1;
  for (int y = 1; y < static_cast<int>(probs.size()); ++y) {
    if (probs[y] == T(0)) continue;
    const T two = frac<T>(y - 1, remaining);
    if (two < T(0) || two > T(1))
      throw std::invalid_argument(
          "death_transition_step: transition probability outside [0,1] (support invariant violated)");
    if (y >= 2) next[y - 2] += probs[y] * two;
    next[y - 1] += probs[y] * (T(1) - two);
  }
  if constexpr (!is_exact_backend_v<T>) {
    // Bound drift over n steps: renormalize only when the sum strays.
    T sum = T(0);
    for (const T& p : next) sum += p;
    if (std::abs(to_double(sum) - 1.0) > 1e-12)
      for (T& p : next) p /= sum;
  }
  return next;
}

// Full evolution for t = 1..n+1, starting from the point mass at Y_1 = n.
template <class T>
std::vector<StateDistribution<T>> evolve_death_process(int n) {
  if (n < 1) throw std::invalid_argument("evolve_death_process: n must be >= 1");
  std::vector<StateDistribution<T>> out;
  out.reserve(n + 1);
  std::vector<T> probs(n + 1, T(0));
  probs[n] = T(1);
  out.push_back({1, probs});
  for (int t = 1; t <= n; ++t) {
    probs = death_transition_step(probs, t, n);
    out.push_back({t + 1, probs});
  }
  return out;
}

// Per-time marginals of the death chain: alpha_t = Pr[Y_t >= 1] (which is
// also Pr[T >= t]) and delta_t = E[Y_t], so expected_T = sum of alpha_t.
template <class T>
struct ProcessSummary {
  int n = 0;
  std::vector<T> alpha;  // alpha[t-1], t = 1..n
  std::vector<T> delta;  // delta[t-1], t = 1..n
  T delta_end = T(0);    // E[Y_{n+1}], zero for a lawful chain
  T expected_T = T(0);
};

template <class T>
ProcessSummary<T> death_process_summary(int n) {
  if (n < 1) throw std::invalid_argument("death_process_summary: n must be >= 1");
  ProcessSummary<T> s;
  s.n = n;
  s.alpha.reserve(n);
  s.delta.reserve(n);
  std::vector<T> probs(n + 1, T(0));
  probs[n] = T(1);
  auto mean = [](const std::vector<T>& p) {
    T m = T(0);
    for (int y = 1; y < static_cast<int>(p.size()); ++y)
      if (p[y] != T(0)) m += p[y] * T(y);
    return m;
  };
  for (int t = 1; t <= n; ++t) {
    s.alpha.push_back(T(1) - probs[0]);
    s.delta.push_back(mean(probs));
    s.expected_T += s.alpha.back();
    probs = death_transition_step(probs, t, n);
  }
  s.delta_end = mean(probs);
  return s;
}

struct RecurrenceCheck {
  bool ok = true;
  int first_violation_t = 0;  // 0 when no violation
  double max_abs_residual = 0.0;
};

// Checks delta_{t+1} = (1 - 1/(n-t+1)) * (delta_t - alpha_t) for every t,
// and that the chain ends at delta_{n+1} = 0. Exact backend demands exact
// equality; the float backend compares against tol.
template <class T>
RecurrenceCheck verify_recurrence(const ProcessSummary<T>& s, double tol = 0.0) {
  RecurrenceCheck check;
  auto residual = [&](const T& lhs, const T& rhs) { return std::abs(to_double(lhs - rhs)); };
  auto matches = [&](const T& lhs, const T& rhs) {
    if constexpr (is_exact_backend_v<T>) return lhs == rhs;
    return residual(lhs, rhs) <= tol;
  };
  for (int t = 1; t <= s.n; ++t) {
    const T expected = (T(1) - frac<T>(1, s.n - t + 1)) * (s.delta[t - 1] - s.alpha[t - 1]);
    const T actual = t < s.n ? s.delta[t] : s.delta_end;
    check.max_abs_residual = std::max(check.max_abs_residual, residual(actual, expected));
    if (!matches(actual, expected) && check.first_violation_t == 0) {
      check.ok = false;
      check.first_violation_t = t;
    }
  }
  if (!matches(s.delta_end, T(0)) && check.first_violation_t == 0) {
    check.ok = false;
    check.first_violation_t = s.n;
  }
  return check;
}

namespace detail {

inline Rational expected_matches_rec(const MatchingInstance& inst, int t, unsigned mask,
                                     std::vector<std::vector<char>>& seen,
                                     std::vector<std::vector<Rational>>& memo) {
  if (t > inst.n) return Rational(0);
  if (seen[t][mask]) return memo[t][mask];
  std::vector<int> avail;
  for (int i : inst.neighbors[t - 1])
    if (mask & (1u << (i - 1))) avail.push_back(i);
  Rational value;
  if (avail.empty()) {
    value = expected_matches_rec(inst, t + 1, mask, seen, memo);
  } else {
    Rational sum(0);
    for (int i : avail)
      sum += expected_matches_rec(inst, t + 1, mask & ~(1u << (i - 1)), seen, memo);
    value = Rational(1) + sum / static_cast<int>(avail.size());
  }
  seen[t][mask] = 1;
  memo[t][mask] = value;
  return value;
}

}  // namespace detail

// Independent oracle: enumerates every sequence of uniform choices the
// randomized greedy run can make on `inst`, with its exact probability, and
// returns the exact expected matching size.
inline Rational brute_force_expected_matches(const MatchingInstance& inst) {
  validate_instance(inst);
  if (inst.n > kBruteForceLimit)
    throw std::invalid_argument("brute_force_expected_matches: n exceeds the enumeration guard");
  const unsigned full = (1u << inst.n) - 1u;
  std::vector<std::vector<char>> seen(inst.n + 2, std::vector<char>(full + 1, 0));
  std::vector<std::vector<Rational>> memo(inst.n + 2, std::vector<Rational>(full + 1));
  return detail::expected_matches_rec(inst, 1, full, seen, memo);
}

inline Rational brute_force_expected_matches(int n) {
  return brute_force_expected_matches(triangular_instance(n));
}

}  // namespace obm
