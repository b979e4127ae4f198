#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "torusdisp/bounds.hpp"
#include "torusdisp/dispersion.hpp"
#include "torusdisp/generators.hpp"
#include "torusdisp/rational.hpp"
#include "torusdisp/witness.hpp"

#include "support/sets.hpp"

using namespace torusdisp;
using testsupport::corpus;
using testsupport::exact_feasible;

TEST_CASE("witness_full_volume pins one axis per point") {
  auto p = canonicalize<double>({{0.5, 0.5}});
  auto w = witness_full_volume(p);
  REQUIRE(w.volume == 1.0);
  REQUIRE(w.kind == WitnessCase::full_volume);
  REQUIRE(w.box.intervals[0].anchor == 0.5);
  REQUIRE(w.box.intervals[1].anchor == 0.5);
  REQUIRE(w.box.intervals[0].length == 1.0);
  REQUIRE(w.excluded_points == std::vector<int>{0});

  // n = 2 < d = 3: last point anchors the remaining axes
  auto q3 = canonicalize<double>({{0.1, 0.2, 0.3}, {0.4, 0.5, 0.6}});
  auto w3 = witness_full_volume(q3);
  REQUIRE(w3.volume == 1.0);
  REQUIRE(w3.box.intervals[0].anchor == 0.1);
  REQUIRE(w3.box.intervals[1].anchor == 0.5);
  REQUIRE(w3.box.intervals[2].anchor == 0.6);
  for (const auto& iv : w3.box.intervals) REQUIRE(iv.length == 1.0);
  for (int i = 0; i < 2; ++i) REQUIRE_FALSE(w3.box.contains(q3.point(i)));

  REQUIRE_THROWS_AS(witness_full_volume(canonicalize<double>({{0.1}, {0.2}})),
                    std::invalid_argument);
}

TEST_CASE("max_window finds the longest span-gap run") {
  std::vector<double> vals = {0.1, 0.3, 0.6, 0.8};
  auto r = max_window(vals, 2);
  REQUIRE(r.window.anchor == 0.1);
  REQUIRE(r.window.length == 0.5);
  REQUIRE(r.inside == std::vector<int>{1});  // 0.3 lies strictly inside (0.1, 0.6)

  auto one = max_window(vals, 1);
  REQUIRE(one.window.length == Catch::Approx(0.3).margin(1e-15));
  // gaps 0.3 -> 0.6 and 0.8 -> 0.1 tie at 0.3; the smaller anchor wins
  REQUIRE(one.window.anchor == 0.3);
  REQUIRE(one.inside.empty());

  // equispaced: all windows tie, smallest anchor wins
  std::vector<double> eq = {0.0, 0.25, 0.5, 0.75};
  auto weq = max_window(eq, 1);
  REQUIRE(weq.window.anchor == 0.0);
  REQUIRE(weq.window.length == 0.25);

  // duplicate anchors: the window wraps the whole circle
  std::vector<double> dup3 = {0.5, 0.5, 0.5};
  auto full = max_window(dup3, 2);
  REQUIRE(full.window.length == 1.0);
  REQUIRE(full.window.anchor == 0.5);
  REQUIRE(full.inside.empty());

  REQUIRE_THROWS_AS(max_window(std::vector<double>{}, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(max_window(vals, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(max_window(vals, 4), std::invalid_argument);  // needs span < n
}

TEST_CASE("window lengths over any span sum to exactly the span") {
  // the n windows of span k tile the circle k times over
  for (int t = 0; t < 12; ++t) {
    const int n = 3 + t;
    const auto p = to_rational(gen_random<double>(n, 1, 900 + t));
    std::vector<Rational> vals = p.column(0);
    std::sort(vals.begin(), vals.end());
    for (int span = 1; span < n; ++span) {
      Rational total = 0;
      for (int i = 0; i < n; ++i) {
        const Rational& a = vals[i];
        const Rational& b = vals[(i + span) % n];
        Rational g = b - a;
        if (g < 0) g += 1;
        total += g;
      }
      REQUIRE(total == Rational(span));
      // so the longest one is at least span/n, which max_window must find
      auto w = max_window(vals, span);
      REQUIRE(Rational(w.window.length) >= Rational(span) / n);
    }
  }
}

TEST_CASE("lift_box appends full axes anchored at a point") {
  PeriodicBox<double> base;
  base.intervals.push_back({0.1, 0.5});
  std::vector<double> t = {0.3, 0.7};
  auto lifted = lift_box(base, std::span<const double>(t));
  REQUIRE(lifted.dim() == 2);
  REQUIRE(lifted.intervals[0].anchor == 0.1);
  REQUIRE(lifted.intervals[0].length == 0.5);
  REQUIRE(lifted.intervals[1].anchor == 0.7);
  REQUIRE(lifted.intervals[1].length == 1.0);
  REQUIRE(lifted.volume() == base.volume());
  REQUIRE_FALSE(lifted.contains(std::span<const double>(t)));

  std::vector<double> wrong = {0.3};
  REQUIRE_THROWS_AS(lift_box(base, std::span<const double>(wrong)), std::invalid_argument);
}

TEST_CASE("witness_theorem1 on the worked 2-D set") {
  auto p = canonicalize<double>({{0.1, 0.3}, {0.3, 0.7}, {0.6, 0.2}, {0.8, 0.9}});
  auto w = witness_theorem1(p);
  REQUIRE(w.volume == Catch::Approx(0.5).margin(1e-15));
  REQUIRE(w.kind == WitnessCase::window_lift);
  REQUIRE(w.window_axis == 0);
  REQUIRE(w.box.intervals[0].anchor == 0.1);
  REQUIRE(w.box.intervals[0].length == 0.5);
  REQUIRE(w.box.intervals[1].anchor == 0.7);
  REQUIRE(w.box.intervals[1].length == 1.0);
  REQUIRE(w.excluded_points == std::vector<int>{1});
  for (int i = 0; i < p.size(); ++i) REQUIRE_FALSE(w.box.contains(p.point(i)));
}

TEST_CASE("witness_theorem1 in one dimension is the largest gap") {
  auto p = canonicalize<double>({{0.1}, {0.2}, {0.9}});
  auto w = witness_theorem1(p);
  REQUIRE(w.volume == Catch::Approx(0.7).margin(1e-15));
  REQUIRE(w.box.intervals[0].anchor == 0.2);
}

TEST_CASE("witness_theorem1 handles coincident points") {
  auto p = canonicalize<double>({{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}});
  auto w = witness_theorem1(p);  // n = 5 > d = 2, but only one distinct value
  REQUIRE(w.volume == 1.0);
  for (int i = 0; i < p.size(); ++i) REQUIRE_FALSE(w.box.contains(p.point(i)));
}

TEST_CASE("empty point set gets the full cube anchored at the origin") {
  auto p = canonicalize<double>({}, 2);
  auto w = witness_full_volume(p);
  REQUIRE(w.volume == 1.0);
  REQUIRE(w.box.intervals[0].anchor == 0.0);
  REQUIRE(w.box.intervals[1].anchor == 0.0);
  REQUIRE(w.excluded_points.empty());
  REQUIRE(witness_theorem1(p).volume == 1.0);
}

TEST_CASE("lift_box properties hold on randomized instances") {
  std::mt19937_64 rng(17);
  auto frac = [&](int den) { return Rational(static_cast<long>(rng() % den)) / den; };
  for (int t = 0; t < 40; ++t) {
    const int base_dim = 1 + t % 3;
    PeriodicBox<Rational> base;
    for (int a = 0; a < base_dim; ++a) {
      Rational len = frac(64);
      if (len == 0) len = 1;
      base.intervals.push_back({frac(64), len});
    }
    std::vector<Rational> point;
    for (int a = 0; a < base_dim + 1; ++a) point.push_back(frac(64));
    auto lifted = lift_box(base, std::span<const Rational>(point));
    REQUIRE(lifted.dim() == base_dim + 1);
    REQUIRE(lifted.volume() == base.volume());
    REQUIRE_FALSE(lifted.contains(std::span<const Rational>(point)));
    for (int a = 0; a < base_dim; ++a) {
      REQUIRE(lifted.intervals[a].anchor == base.intervals[a].anchor);
      REQUIRE(lifted.intervals[a].length == base.intervals[a].length);
    }
  }
}

TEST_CASE("witness volume is translation-invariant (exact)") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 15; ++t) {
    const int d = 1 + t % 4;
    const int n = 1 + (t * 5) % 11;
    const auto p = to_rational(gen_random<double>(n, d, 1500 + t));
    std::vector<Rational> shift;
    for (int a = 0; a < d; ++a)
      shift.push_back(Rational(static_cast<long>(rng() % 83)) / 83);
    std::vector<Rational> flat;
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < d; ++a)
        flat.push_back(wrap_unit(Rational(p.coord(i, a) + shift[a])));
    const PointSet<Rational> moved(d, std::move(flat));
    REQUIRE(witness_theorem1(moved).volume == witness_theorem1(p).volume);
  }
}

TEST_CASE("witness guarantee holds across the corpus") {
  for (const auto& s : corpus()) {
    INFO(s.name);
    const int n = s.pts.size();
    const int d = s.pts.dim();
    auto w = witness_theorem1(s.pts);
    REQUIRE(w.volume >= theorem1_bound(n, d) - kFloatTolerance);
    REQUIRE(w.volume == Catch::Approx(w.box.volume()).margin(kFloatTolerance));
    for (int i = 0; i < n; ++i) REQUIRE_FALSE(w.box.contains(s.pts.point(i)));
    if (exact_feasible(s)) {
      auto exact = exact_dispersion_periodic(s.pts);
      REQUIRE(w.volume <= exact.volume + kFloatTolerance);
    }
  }
}

TEST_CASE("witness guarantee is exact in rational arithmetic") {
  for (int t = 0; t < 20; ++t) {
    const int d = 1 + t % 4;
    const int n = 1 + (t * 7) % 12;
    const auto p = to_rational(gen_random<double>(n, d, 1300 + t));
    auto w = witness_theorem1(p);
    REQUIRE(w.volume >= theorem1_bound_value<Rational>(n, d));
    REQUIRE(w.volume == w.box.volume());
    for (int i = 0; i < n; ++i) REQUIRE_FALSE(w.box.contains(p.point(i)));
  }
}

TEST_CASE("best-axis scan never does worse than the default axis") {
  for (const auto& s : corpus()) {
    if (s.pts.size() == 0 || s.pts.dim() < 2) continue;
    INFO(s.name);
    auto plain = witness_theorem1(s.pts);
    auto best = witness_theorem1(s.pts, true);
    REQUIRE(best.volume >= plain.volume - kFloatTolerance);
    for (int i = 0; i < s.pts.size(); ++i) REQUIRE_FALSE(best.box.contains(s.pts.point(i)));
  }
}
