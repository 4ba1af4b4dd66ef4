#pragma once

#include <cstdint>
#include <stdexcept>

namespace obm {

// Names one trial's random stream. Streams are derived by hashing the pair,
// so any (master_seed, trial_index) can be replayed in isolation and trials
// may run in any order without sharing state.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

}  // namespace detail

// splitmix64 stream over a hashed (master_seed, trial_index) state.
// Self-contained so results never depend on the standard library's
// distribution implementations.
class TrialRng {
 public:
  explicit TrialRng(RngSpec spec)
      : state_(detail::mix64(spec.master_seed ^
                             detail::mix64(spec.trial_index + kGamma))) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, bound). Multiply-shift with rejection, so the
  // result is unbiased for every bound.
  std::size_t pick(std::size_t bound) {
    if (bound == 0) throw std::invalid_argument("TrialRng::pick: bound must be >= 1");
    std::uint64_t x = next_u64();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t cutoff =
          (0 - static_cast<std::uint64_t>(bound)) % static_cast<std::uint64_t>(bound);
      while (low < cutoff) {
        x = next_u64();
        m = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::size_t>(m >> 64);
  }

  // Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

}  // namespace obm
