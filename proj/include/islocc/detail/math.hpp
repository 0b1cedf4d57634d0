// Copyright 2026 The islocc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

namespace islocc {

using cplx = std::complex<double>;

namespace detail {

// -p log2 p with the continuity convention 0 log 0 = 0.
inline double entropy_term(double p) noexcept {
  return p > 0.0 ? -p * std::log2(p) : 0.0;
}

inline double binary_entropy(double x) noexcept {
  return entropy_term(x) + entropy_term(1.0 - x);
}

inline double log2_factorial(std::size_t n) noexcept {
  return std::lgamma(static_cast<double>(n) + 1.0) / std::log(2.0);
}

inline std::size_t factorial(std::size_t n) noexcept {
  std::size_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace detail
}  // namespace islocc
