#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "torusdisp/scalar.hpp"

namespace torusdisp {

// One open arc (anchor, anchor + length) mod 1 on the unit circle.
// anchor in [0,1), length in (0,1]. length == 1 is the full circle with the
// single point {anchor} removed; the anchor is never contained.
template <class Real>
struct PeriodicInterval {
  Real anchor{};
  Real length{};

  bool contains(const Real& z) const {
    Real g = torus_gap(anchor, z);
    return g > Real(0) && g < length;
  }
};

// Product of open periodic arcs, one per axis.
template <class Real>
struct PeriodicBox {
  std::vector<PeriodicInterval<Real>> intervals;

  int dim() const { return static_cast<int>(intervals.size()); }

  Real volume() const {
    Real v(1);
    for (const auto& iv : intervals) v *= iv.length;
    return v;
  }

  bool contains(std::span<const Real> p) const {
    if (static_cast<int>(p.size()) != dim())
      throw std::invalid_argument("PeriodicBox::contains: dimension mismatch");
    for (int a = 0; a < dim(); ++a)
      if (!intervals[a].contains(p[a])) return false;
    return true;
  }
};

// Ordinary open axis-parallel box (lower, upper) inside [0,1]^d.
template <class Real>
struct AnchoredBox {
  std::vector<Real> lower;
  std::vector<Real> upper;

  int dim() const { return static_cast<int>(lower.size()); }

  Real volume() const {
    Real v(1);
    for (int a = 0; a < dim(); ++a) v *= upper[a] - lower[a];
    return v;
  }

  bool contains(std::span<const Real> p) const {
    if (static_cast<int>(p.size()) != dim())
      throw std::invalid_argument("AnchoredBox::contains: dimension mismatch");
    for (int a = 0; a < dim(); ++a)
      if (!(lower[a] < p[a] && p[a] < upper[a])) return false;
    return true;
  }
};

template <class Real>
bool interval_contains(const PeriodicInterval<Real>& iv, const Real& z) {
  return iv.contains(z);
}

template <class Real>
bool box_contains(const PeriodicBox<Real>& box, std::span<const Real> p) {
  return box.contains(p);
}

template <class Real>
bool box_contains(const AnchoredBox<Real>& box, std::span<const Real> p) {
  return box.contains(p);
}

template <class Real>
Real box_volume(const PeriodicBox<Real>& box) {
  return box.volume();
}

template <class Real>
Real box_volume(const AnchoredBox<Real>& box) {
  return box.volume();
}

// Same side lengths, wrap-free: anchor = lower, length = upper - lower.
// Interior membership agrees; the periodic version additionally excludes the
// anchor hyperplanes.
template <class Real>
PeriodicBox<Real> to_periodic(const AnchoredBox<Real>& box) {
  PeriodicBox<Real> out;
  out.intervals.reserve(box.dim());
  for (int a = 0; a < box.dim(); ++a) {
    Real anchor = box.lower[a];
    if (anchor >= Real(1)) anchor = Real(0);
    out.intervals.push_back({anchor, box.upper[a] - box.lower[a]});
  }
  return out;
}

}  // namespace torusdisp
