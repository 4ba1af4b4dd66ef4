#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "obm/instances.hpp"
#include "obm/numeric.hpp"
#include "obm/rng.hpp"

namespace obm {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(trials)
  long long trials = 0;
};

enum class GreedyPolicy { MinId, MaxId };

inline const char* to_string(GreedyPolicy p) {
  return p == GreedyPolicy::MinId ? "min-id" : "max-id";
}

namespace detail {

// Shared greedy arrival loop. `choose` maps the sorted list of currently
// available neighbor ids to the chosen id; it is only consulted when the
// list is non-empty.
template <class ChooseFn>
Matching greedy_arrivals(const MatchingInstance& inst, ChooseFn&& choose) {
  std::vector<char> taken(inst.n + 1, 0);
  std::vector<int> avail;
  Matching m;
  for (int j = 1; j <= inst.n; ++j) {
    avail.clear();
    for (int i : inst.neighbors[j - 1])
      if (!taken[i]) avail.push_back(i);
    if (avail.empty()) continue;
    const int chosen = choose(static_cast<const std::vector<int>&>(avail));
    if (!std::binary_search(avail.begin(), avail.end(), chosen))
      throw std::invalid_argument("greedy policy chose an id outside the available set");
    taken[chosen] = 1;
    m.pairs.emplace_back(chosen, j);
  }
  return m;
}

}  // namespace detail

// Randomized greedy run driven by an arbitrary index sampler: `pick(k)` must
// return a draw in [0, k). Exactly one draw is consumed per arrival that has
// at least one available neighbor, selecting the (draw+1)-th smallest id.
template <class PickFn>
Matching run_randomized_greedy_with(const MatchingInstance& inst, PickFn&& pick) {
  return detail::greedy_arrivals(inst, [&](const std::vector<int>& avail) {
    const std::size_t idx = pick(avail.size());
    if (idx >= avail.size())
      throw std::logic_error("run_randomized_greedy_with: sampler draw out of range");
    return avail[idx];
  });
}

inline Matching run_randomized_greedy(const MatchingInstance& inst, RngSpec spec) {
  TrialRng rng(spec);
  return run_randomized_greedy_with(inst, [&](std::size_t k) { return rng.pick(k); });
}

// Deterministic greedy run. The policy sees the sorted available neighbor
// ids and must pick one of them; ids outside the set are rejected.
template <class PolicyFn>
Matching run_greedy_policy(const MatchingInstance& inst, PolicyFn&& policy) {
  return detail::greedy_arrivals(inst, std::forward<PolicyFn>(policy));
}

inline Matching run_greedy_policy(const MatchingInstance& inst, GreedyPolicy policy) {
  return detail::greedy_arrivals(inst, [policy](const std::vector<int>& avail) {
    return policy == GreedyPolicy::MinId ? avail.front() : avail.back();
  });
}

namespace detail {

// Matching sizes are small integers, so sums and sums of squares are exact;
// the estimate is therefore bitwise identical under any trial ordering.
class SizeAccumulator {
 public:
  void add(int size) {
    sum_ += size;
    sum_sq_ += static_cast<long long>(size) * size;
    ++count_;
  }

  McEstimate finish() const {
    McEstimate est;
    est.trials = count_;
    est.mean = static_cast<double>(sum_) / static_cast<double>(count_);
    const __int128 raw =
        static_cast<__int128>(sum_sq_) * count_ - static_cast<__int128>(sum_) * sum_;
    const double variance = static_cast<double>(raw) /
                            (static_cast<double>(count_) * static_cast<double>(count_ - 1));
    est.std_error = std::sqrt(std::max(variance, 0.0) / static_cast<double>(count_));
    return est;
  }

 private:
  long long sum_ = 0;
  long long sum_sq_ = 0;
  long long count_ = 0;
};

inline void require_trials(long long trials) {
  if (trials < 2) throw std::invalid_argument("trials must be >= 2 to report a standard error");
}

}  // namespace detail

// Monte Carlo mean matching size of the randomized greedy run on the
// triangular instance, over independently seeded trials.
inline McEstimate mc_randomized_greedy(int n, long long trials, std::uint64_t master_seed) {
  detail::require_trials(trials);
  const MatchingInstance inst = triangular_instance(n);
  detail::SizeAccumulator acc;
  for (long long trial = 0; trial < trials; ++trial)
    acc.add(run_randomized_greedy(inst, RngSpec{master_seed, static_cast<std::uint64_t>(trial)}).size());
  return acc.finish();
}

// Exact average performance of a deterministic greedy policy over all n!
// row relabelings of the triangular instance.
inline Rational family_average_exact(int n, GreedyPolicy policy,
                                     int exhaustive_limit = kExhaustiveFamilyLimit) {
  long long total = 0;
  long long count = 0;
  for_each_family_member(
      n,
      [&](const MatchingInstance& inst, const std::vector<int>&) {
        total += run_greedy_policy(inst, policy).size();
        ++count;
      },
      exhaustive_limit);
  return Rational(total, count);
}

// Sampled counterpart: uniform random relabelings drawn per trial.
inline McEstimate family_average_sampled(int n, GreedyPolicy policy, long long trials,
                                         std::uint64_t master_seed) {
  if (n < 1) throw std::invalid_argument("family_average_sampled: n must be >= 1");
  detail::require_trials(trials);
  const MatchingInstance base = triangular_instance(n);
  detail::SizeAccumulator acc;
  std::vector<int> perm(n);
  for (long long trial = 0; trial < trials; ++trial) {
    TrialRng rng(RngSpec{master_seed, static_cast<std::uint64_t>(trial)});
    std::iota(perm.begin(), perm.end(), 1);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.pick(static_cast<std::size_t>(i) + 1)]);
    acc.add(run_greedy_policy(permute_rows(base, perm), policy).size());
  }
  return acc.finish();
}

}  // namespace obm
