#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "torusdisp/point_set.hpp"

namespace torusdisp {

// Scalar type for the exact arithmetic mode. All geometry and search
// templates instantiate with it; comparisons and volumes are then exact.
using Rational = boost::multiprecision::cpp_rational;

// binary64 values are dyadic rationals, so this conversion loses nothing.
inline PointSet<Rational> to_rational(const PointSet<double>& p) {
  std::vector<Rational> flat;
  flat.reserve(p.flat().size());
  for (double c : p.flat()) flat.emplace_back(c);
  return PointSet<Rational>(p.dim(), std::move(flat));
}

inline double to_double(const Rational& x) { return x.template convert_to<double>(); }

// Canonical lowest-terms "p/q" form, e.g. "3/5", "1/1", "0/1".
inline std::string to_fraction_string(const Rational& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace torusdisp
