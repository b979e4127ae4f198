#pragma once

#include <cmath>
#include <cstdint>

namespace torusdisp {

// Comparison slack used when binary64 results (rounded products, gap sums)
// are checked against closed-form bounds. Exact rational runs use zero slack.
inline constexpr double kFloatTolerance = 1e-12;

template <class Real>
inline bool is_finite_value(const Real&) {
  return true;
}

inline bool is_finite_value(const double& x) { return std::isfinite(x); }

// Fractional part in [0,1); exact integers map to 0. The generic version
// only needs ordering and +-1 shifts, so it works for exact number types.
template <class Real>
Real wrap_unit(const Real& x) {
  Real f = x;
  while (f < Real(0)) f += Real(1);
  while (f >= Real(1)) f -= Real(1);
  return f;
}

inline double wrap_unit(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;  // x - floor(x) can round up to 1 for tiny x < 0
  return f;
}

// Forward distance from a to b on the unit circle, in [0,1).
// Candidate lengths and membership tests both go through this function, so
// shared endpoints compare equal instead of depending on a tolerance.
template <class Real>
Real torus_gap(const Real& a, const Real& b) {
  Real diff = b - a;
  if (diff < Real(0)) diff += Real(1);
  if (diff >= Real(1)) diff = Real(0);
  return diff;
}

}  // namespace torusdisp
