#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace obm {

// Hard cap for exhaustive enumeration of the n! row-permutation family.
inline constexpr int kExhaustiveFamilyLimit = 8;

// Bipartite instance with n offline and n online agents, both labeled 1..n.
// neighbors[j-1] holds the offline ids adjacent to online agent j, sorted
// ascending. Instances are immutable after construction and safe to share.
struct MatchingInstance {
  int n = 0;
  std::vector<std::vector<int>> neighbors;

  bool operator==(const MatchingInstance&) const = default;
};

inline void validate_instance(const MatchingInstance& inst) {
  if (inst.n < 1) throw std::invalid_argument("instance: n must be >= 1");
  if (static_cast<int>(inst.neighbors.size()) != inst.n)
    throw std::invalid_argument("instance: one neighbor list per online agent required");
  for (const auto& list : inst.neighbors) {
    if (!std::is_sorted(list.begin(), list.end()))
      throw std::invalid_argument("instance: neighbor lists must be sorted ascending");
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
      throw std::invalid_argument("instance: duplicate neighbor id");
    for (int id : list)
      if (id < 1 || id > inst.n)
        throw std::invalid_argument("instance: neighbor id out of 1..n");
  }
}

inline MatchingInstance make_instance(int n, std::vector<std::vector<int>> neighbors) {
  MatchingInstance inst{n, std::move(neighbors)};
  for (auto& list : inst.neighbors) std::sort(list.begin(), list.end());
  validate_instance(inst);
  return inst;
}

// Canonical lower-triangular instance: online agent j is adjacent to
// offline agents j..n, i.e. entry (i, j) is an edge iff i >= j.
inline MatchingInstance triangular_instance(int n) {
  if (n < 1) throw std::invalid_argument("triangular_instance: n must be >= 1");
  MatchingInstance inst;
  inst.n = n;
  inst.neighbors.resize(n);
  for (int j = 1; j <= n; ++j) {
    auto& list = inst.neighbors[j - 1];
    list.resize(n - j + 1);
    std::iota(list.begin(), list.end(), j);
  }
  return inst;
}

// Relabels offline ids: row i of `base` becomes row perm[i-1] of the result,
// so the output neighbor sets are the images perm(N_j).
inline MatchingInstance permute_rows(const MatchingInstance& base, const std::vector<int>& perm) {
  validate_instance(base);
  const int n = base.n;
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permute_rows: perm must have length n");
  std::vector<char> seen(n + 1, 0);
  for (int v : perm) {
    if (v < 1 || v > n || seen[v])
      throw std::invalid_argument("permute_rows: perm must be a bijection on 1..n");
    seen[v] = 1;
  }
  MatchingInstance out;
  out.n = n;
  out.neighbors.resize(n);
  for (int j = 0; j < n; ++j) {
    auto& list = out.neighbors[j];
    list.reserve(base.neighbors[j].size());
    for (int i : base.neighbors[j]) list.push_back(perm[i - 1]);
    std::sort(list.begin(), list.end());
  }
  return out;
}

// Visits every row relabeling of the triangular instance exactly once, in
// lexicographic permutation order. fn receives (instance, permutation).
template <class F>
void for_each_family_member(int n, F&& fn, int exhaustive_limit = kExhaustiveFamilyLimit) {
  if (n < 1) throw std::invalid_argument("for_each_family_member: n must be >= 1");
  if (n > exhaustive_limit)
    throw std::invalid_argument("for_each_family_member: n exceeds the exhaustive limit");
  const MatchingInstance base = triangular_instance(n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    fn(permute_rows(base, perm), perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

inline std::vector<MatchingInstance> enumerate_family(int n,
                                                      int exhaustive_limit = kExhaustiveFamilyLimit) {
  std::vector<MatchingInstance> out;
  for_each_family_member(
      n, [&](MatchingInstance inst, const std::vector<int>&) { out.push_back(std::move(inst)); },
      exhaustive_limit);
  return out;
}

// A set of (offline id, online id) pairs produced by some run.
struct Matching {
  std::vector<std::pair<int, int>> pairs;

  int size() const { return static_cast<int>(pairs.size()); }

  bool operator==(const Matching&) const = default;
};

inline bool is_valid_matching(const MatchingInstance& inst, const Matching& m) {
  std::vector<char> offline_used(inst.n + 1, 0), online_used(inst.n + 1, 0);
  for (auto [i, j] : m.pairs) {
    if (i < 1 || i > inst.n || j < 1 || j > inst.n) return false;
    if (offline_used[i] || online_used[j]) return false;
    offline_used[i] = online_used[j] = 1;
    const auto& list = inst.neighbors[j - 1];
    if (!std::binary_search(list.begin(), list.end(), i)) return false;
  }
  return true;
}

namespace detail {

inline bool kuhn_augment(const MatchingInstance& inst, int j, std::vector<char>& visited,
                         std::vector<int>& owner) {
  for (int i : inst.neighbors[j - 1]) {
    if (visited[i]) continue;
    visited[i] = 1;
    if (owner[i] == 0 || kuhn_augment(inst, owner[i], visited, owner)) {
      owner[i] = j;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Maximum-cardinality matching by augmenting-path search. Instances here are
// tiny, so the simple O(V*E) procedure is plenty.
inline Matching maximum_matching(const MatchingInstance& inst) {
  validate_instance(inst);
  std::vector<int> owner(inst.n + 1, 0);  // offline id -> matched online id
  for (int j = 1; j <= inst.n; ++j) {
    std::vector<char> visited(inst.n + 1, 0);
    detail::kuhn_augment(inst, j, visited, owner);
  }
  Matching m;
  for (int i = 1; i <= inst.n; ++i)
    if (owner[i] != 0) m.pairs.emplace_back(i, owner[i]);
  return m;
}

}  // namespace obm
