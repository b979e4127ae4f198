#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "torusdisp/boxes.hpp"
#include "torusdisp/point_set.hpp"

namespace torusdisp {

enum class WitnessCase { full_volume, window_lift };

// An empty periodic box certifying a dispersion lower bound, together with
// how it was built. volume >= min{1, d/n} always.
template <class Real>
struct WitnessResult {
  PeriodicBox<Real> box;
  Real volume{};
  WitnessCase kind = WitnessCase::full_volume;
  // Indices of the points whose coordinates anchor the excluding hyperplanes.
  std::vector<int> excluded_points;
  // Axis carrying the bounded window; meaningful for window_lift only.
  int window_axis = 0;
};

template <class Real>
struct WindowResult {
  PeriodicInterval<Real> window;
  std::vector<int> inside;  // indices into the input values strictly inside the window
};

namespace detail {

template <class Real>
void verify_witness_empty(const PeriodicBox<Real>& box, const PointSet<Real>& p) {
  for (int i = 0; i < p.size(); ++i)
    if (box.contains(p.point(i)))
      throw std::logic_error("witness construction produced a non-empty box");
}

}  // namespace detail

// Case n <= d: the whole cube minus one excluded hyperplane per axis. Axis i
// takes its anchor from point i's i-th coordinate; once points run out the
// last point's coordinates are reused. Volume is exactly 1.
template <class Real>
WitnessResult<Real> witness_full_volume(const PointSet<Real>& p) {
  const int n = p.size(), d = p.dim();
  if (n > d)
    throw std::invalid_argument("witness_full_volume: requires n <= d");
  WitnessResult<Real> w;
  w.box.intervals.reserve(d);
  for (int a = 0; a < d; ++a) {
    Real anchor = (a < n) ? p.coord(a, a) : (n == 0 ? Real(0) : p.coord(n - 1, a));
    w.box.intervals.push_back({anchor, Real(1)});
  }
  w.volume = Real(1);
  w.kind = WitnessCase::full_volume;
  w.excluded_points.resize(n);
  std::iota(w.excluded_points.begin(), w.excluded_points.end(), 0);
  detail::verify_witness_empty(w.box, p);
  return w;
}

// Longest open arc spanning `span` consecutive gaps of the cyclically sorted
// values, together with the indices of values strictly inside it. The n
// window lengths sum to exactly span (each gap is counted span times), so the
// returned length is >= span/n. At most span-1 values lie strictly inside.
// Ties go to the smallest anchor.
template <class Real>
WindowResult<Real> max_window(const std::vector<Real>& values, int span) {
  const int n = static_cast<int>(values.size());
  if (span < 1) throw std::invalid_argument("max_window: span must be >= 1");
  if (n <= span) throw std::invalid_argument("max_window: needs more values than span");

  std::vector<Real> sorted(values);
  std::sort(sorted.begin(), sorted.end());

  Real best_len(-1);
  int best_pos = 0;
  for (int i = 0; i < n; ++i) {
    const int j = i + span;
    const Real& endpoint = sorted[j % n];
    Real len;
    if (endpoint == sorted[i]) {
      // Either span consecutive duplicates (empty window) or the window
      // wraps the whole circle because all remaining values sit on the anchor.
      len = (j >= n) ? Real(1) : Real(0);
    } else {
      len = torus_gap(sorted[i], endpoint);
    }
    if (len > best_len) {
      best_len = len;
      best_pos = i;
    }
  }

  WindowResult<Real> out;
  out.window = {sorted[best_pos], best_len};
  for (int k = 0; k < n; ++k)
    if (out.window.contains(values[k])) out.inside.push_back(k);
  return out;
}

// Appends one full-circle interval anchored at the last coordinate of t.
// Volume is unchanged, t is not contained, and dropping the new axis gives
// back the input box.
template <class Real>
PeriodicBox<Real> lift_box(const PeriodicBox<Real>& base, std::span<const Real> t) {
  if (base.dim() < 1) throw std::invalid_argument("lift_box: base must have dimension >= 1");
  if (static_cast<int>(t.size()) != base.dim() + 1)
    throw std::invalid_argument("lift_box: t must have one more coordinate than the base box");
  PeriodicBox<Real> out = base;
  out.intervals.push_back({wrap_unit(t.back()), Real(1)});
  return out;
}

// Constructive dispersion witness of volume >= min{1, d/n}. For n <= d the
// full-volume box; otherwise the longest d-gap window on one axis, lifted to
// full dimension with one excluding hyperplane per point inside the window.
// With best_axis the window is taken on whichever axis yields the longest
// one; the default keeps axis 0.
template <class Real>
WitnessResult<Real> witness_theorem1(const PointSet<Real>& p, bool best_axis = false) {
  const int n = p.size(), d = p.dim();
  if (n <= d) return witness_full_volume(p);

  int axis = 0;
  WindowResult<Real> win = max_window(p.column(0), d);
  if (best_axis) {
    for (int a = 1; a < d; ++a) {
      WindowResult<Real> cand = max_window(p.column(a), d);
      if (cand.window.length > win.window.length) {
        win = std::move(cand);
        axis = a;
      }
    }
  }

  if (static_cast<int>(win.inside.size()) > d - 1)
    throw std::logic_error("witness_theorem1: window contains more points than axes can exclude");

  WitnessResult<Real> w;
  w.box.intervals.resize(d);
  w.box.intervals[axis] = win.window;
  int t = 0;
  for (int b = 0; b < d; ++b) {
    if (b == axis) continue;
    Real anchor(0);
    if (t < static_cast<int>(win.inside.size()))
      anchor = p.coord(win.inside[t], b);
    else if (!win.inside.empty())
      anchor = p.coord(win.inside.back(), b);
    w.box.intervals[b] = {anchor, Real(1)};
    ++t;
  }
  w.volume = win.window.length;
  w.kind = WitnessCase::window_lift;
  w.excluded_points = win.inside;
  w.window_axis = axis;
  detail::verify_witness_empty(w.box, p);
  return w;
}

}  // namespace torusdisp
