#pragma once

#include <cstdint>
#include <vector>

#include "thermopauli/errors.hpp"

namespace thermopauli {

// Exact binomial coefficient.  C(64,32) still fits in int64; orders handled by
// this library stay far below that.
inline std::int64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > 64) throw truncation_error("binomial: order too large for int64 table");
  if (k > n - k) k = n - k;
  std::int64_t r = 1;
  for (int j = 1; j <= k; ++j) {
    r = r * (n - k + j) / j;  // exact: r*(n-k+j) is divisible by j at this point
  }
  return r;
}

// Rows 0..n of Pascal's triangle.
inline std::vector<std::vector<std::int64_t>> binomial_table(int n) {
  std::vector<std::vector<std::int64_t>> t(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    t[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i) + 1);
    for (int k = 0; k <= i; ++k) t[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = binomial(i, k);
  }
  return t;
}

inline double factorial_d(int n) {
  double r = 1.0;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

inline std::int64_t falling_factorial(int n, int k) {
  std::int64_t r = 1;
  for (int j = 0; j < k; ++j) r *= (n - j);
  return r;
}

// Tritriangular numbers Tt_n = n(n+1)(n+2)(n+3)/8 = C(C(n+2,2), 2), the
// coefficient family of the even-order recursion brackets.  Ordinary
// generating function: 3x/(1-x)^5.
inline std::int64_t tritriangular(int n) {
  if (n < 1) throw truncation_error("tritriangular: index must be >= 1");
  std::int64_t m = n;
  return m * (m + 1) * (m + 2) * (m + 3) / 8;
}

inline std::int64_t double_factorial_odd(int n) {
  // (2n-1)!! for n >= 0, with (-1)!! = 1.
  std::int64_t r = 1;
  for (int j = 1; j <= n; ++j) r *= (2 * j - 1);
  return r;
}

}  // namespace thermopauli
