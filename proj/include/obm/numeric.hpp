#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <string>
#include <type_traits>

namespace obm {

// Exact arithmetic backend. Denominators in the death process grow like
// products of (n-t+1), so fixed-width integers are not an option.
using Rational = boost::multiprecision::cpp_rational;

// Default crossover from the exact backend to double. Exactness is only
// needed at sizes where the enumeration oracles can keep up.
inline constexpr int kDefaultExactLimit = 40;

template <class T>
inline constexpr bool is_exact_backend_v = std::is_same_v<T, Rational>;

// num/den as a backend value (exact quotient or double division).
template <class T>
T frac(long long num, long long den);

template <>
inline Rational frac<Rational>(long long num, long long den) {
  return Rational(num, den);
}

template <>
inline double frac<double>(long long num, long long den) {
  return static_cast<double>(num) / static_cast<double>(den);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline constexpr double to_double(double x) { return x; }

// Shortest round-trip decimal form. Used everywhere a double is printed so
// that report output is byte-stable.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// "p/q" (or plain "p" when q = 1) in exact mode, decimal string otherwise.
inline std::string format_value(const Rational& r) { return r.str(); }
inline std::string format_value(double x) { return format_double(x); }

}  // namespace obm
