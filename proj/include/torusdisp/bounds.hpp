#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace torusdisp {

// min{1, d/n}: every n-point set on the d-torus leaves an empty periodic box
// of at least this volume (Theorem 1 in the README). Defined as 1 for n = 0.
inline double theorem1_bound(int n, int d) {
  if (d < 1) throw std::invalid_argument("theorem1_bound: d must be >= 1");
  if (n < 0) throw std::invalid_argument("theorem1_bound: n must be >= 0");
  if (n == 0) return 1.0;
  return std::min(1.0, static_cast<double>(d) / static_cast<double>(n));
}

// Exact-arithmetic variant of the same bound.
template <class Real>
Real theorem1_bound_value(int n, int d) {
  if (d < 1) throw std::invalid_argument("theorem1_bound: d must be >= 1");
  if (n < 0) throw std::invalid_argument("theorem1_bound: n must be >= 0");
  if (n == 0 || n <= d) return Real(1);
  return Real(d) / Real(n);
}

// d/eps: no point set with fewer points reaches torus dispersion <= eps.
// The same expression also lower-bounds the inverse of the periodic
// discrepancy, since discrepancy dominates dispersion.
inline double inverse_N0_lower(double eps, int d) {
  if (d < 1) throw std::invalid_argument("inverse_N0_lower: d must be >= 1");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("inverse_N0_lower: eps must lie in (0,1)");
  return static_cast<double>(d) / eps;
}

// log2(d) / (4 (n + log2 d)): prior lower bound for the dispersion with
// ordinary (non-periodic) boxes, due to Aistleitner, Hinrichs and Rudolf.
inline double ahr_lower_bound(int n, int d) {
  if (d < 2) throw std::invalid_argument("ahr_lower_bound: requires d >= 2");
  if (n < 1) throw std::invalid_argument("ahr_lower_bound: requires n >= 1");
  double l = std::log2(static_cast<double>(d));
  return l / (4.0 * (static_cast<double>(n) + l));
}

// c = 1/(32 e^2), the Hinrichs star-discrepancy constant. Kept as the
// expression rather than a rounded decimal.
inline double hinrichs_constant() { return 1.0 / (32.0 * std::exp(2.0)); }

// c * d / eps, valid for 0 < eps < c: lower bound on the number of points
// needed for periodic discrepancy <= eps.
inline double hinrichs_N_lower(double eps, int d) {
  if (d < 1) throw std::invalid_argument("hinrichs_N_lower: d must be >= 1");
  const double c = hinrichs_constant();
  if (!(eps > 0.0 && eps < c))
    throw std::domain_error("hinrichs_N_lower: eps must lie in (0, " + std::to_string(c) +
                            "), the bound's validity range");
  return c * static_cast<double>(d) / eps;
}

// 1/(n+1): split the cube into n+1 equal slabs, one must be empty.
inline double split_cube_bound(int n) {
  if (n < 0) throw std::invalid_argument("split_cube_bound: n must be >= 0");
  return 1.0 / (static_cast<double>(n) + 1.0);
}

// Bundle of the closed-form bounds for one (n, d) instance, for reporting.
struct BoundReport {
  int n = 0;
  int d = 1;
  double theorem1 = 1.0;
  double split_cube = 1.0;
  double ahr_lower = 0.0;     // 0 when d < 2 (formula degenerates)
  double eps = 0.0;           // 0 when no eps was requested
  double n0_lower = 0.0;      // d/eps, 0 when no eps
  double hinrichs_n_lower = 0.0;  // c d/eps, 0 when eps outside (0, c)
};

inline BoundReport make_bound_report(int n, int d, double eps = 0.0) {
  BoundReport r;
  r.n = n;
  r.d = d;
  r.theorem1 = theorem1_bound(n, d);
  r.split_cube = split_cube_bound(n);
  r.ahr_lower = (d >= 2 && n >= 1) ? ahr_lower_bound(n, d) : 0.0;
  r.eps = eps;
  if (eps > 0.0 && eps < 1.0) {
    r.n0_lower = inverse_N0_lower(eps, d);
    if (eps < hinrichs_constant()) r.hinrichs_n_lower = hinrichs_N_lower(eps, d);
  }
  return r;
}

}  // namespace torusdisp
