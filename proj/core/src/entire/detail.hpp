#pragma once

#include <cmath>

#include "cdlab/entire/entire.hpp"

namespace cdlab::detail {

/// Product rule: (a, a') * (b, b').
inline Jet mul(const Jet& a, const Jet& b) {
  return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
}

/// |a - b| <= tol * max(1, |b|) in double precision.
inline bool near(const Complex& a, const Complex& b, double tol) {
  const auto x = a.to_std();
  const auto y = b.to_std();
  return std::abs(x - y) <= tol * std::max(1.0, std::abs(y));
}

/// Tolerance used to match a zero given by value.
inline double zero_match_tol() { return 1e-9; }

inline bool is_odd(long k) { return (k % 2) != 0; }

}  // namespace cdlab::detail
