// Acceptance suite: ten end-to-end criteria, one pass/fail line each.
// Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "torusdisp/torusdisp.hpp"

#include "support/oracle.hpp"
#include "support/run_cli.hpp"
#include "support/sets.hpp"

using namespace torusdisp;
using testsupport::corpus;
using testsupport::exact_feasible;
using testsupport::run_cli;

namespace {

struct failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& msg) {
  if (!ok) throw failure(msg);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// C1: 200 seeded random sets, d in {1,2,3}, n in 1..10; exact periodic
// dispersion meets min{1, d/n}. Exact in rational, 1e-12 in binary64. < 60 s.
void c1_theorem1_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < 200; ++k) {
    const int d = 1 + k % 3;
    const int n = 1 + (k / 3) % 10;
    const auto pd = gen_random<double>(n, d, 1000 + k);
    std::ostringstream tag;
    tag << "set k=" << k << " (n=" << n << ", d=" << d << ")";

    const auto rf = exact_dispersion_periodic(pd);
    expect(rf.volume >= theorem1_bound(n, d) - kFloatTolerance,
           tag.str() + ": binary64 volume below min{1, d/n}");

    const auto rq = exact_dispersion_periodic(to_rational(pd));
    expect(rq.volume >= theorem1_bound_value<Rational>(n, d),
           tag.str() + ": rational volume below min{1, d/n}");
  }
  const double elapsed = seconds_since(start);
  expect(elapsed < 60.0, "took " + std::to_string(elapsed) + " s, limit 60 s");
}

// C2: 50 seeded random sets with n <= d <= 8; the witness reaches volume
// exactly 1 with a verified-empty box. < 1 s.
void c2_full_volume_case() {
  const auto start = std::chrono::steady_clock::now();
  for (int j = 0; j < 50; ++j) {
    const int d = 1 + j % 8;
    const int n = 1 + j % d;
    const auto p = gen_random<double>(n, d, 2000 + j);
    const auto w = witness_theorem1(p);
    std::ostringstream tag;
    tag << "set j=" << j << " (n=" << n << ", d=" << d << ")";
    expect(w.volume == 1.0, tag.str() + ": volume not exactly 1");
    for (int i = 0; i < n; ++i)
      expect(!w.box.contains(p.point(i)), tag.str() + ": witness box not empty");
  }
  const double elapsed = seconds_since(start);
  expect(elapsed < 1.0, "took " + std::to_string(elapsed) + " s, limit 1 s");
}

// C3: on every corpus set the witness meets the bound, is empty, and does not
// exceed the exact value where the exact value is computed (d <= 3, n <= 12).
void c3_witness_validity() {
  for (const auto& s : corpus()) {
    const int n = s.pts.size();
    const int d = s.pts.dim();
    const auto w = witness_theorem1(s.pts);
    expect(w.volume >= theorem1_bound(n, d) - kFloatTolerance,
           s.name + ": witness volume below min{1, d/n}");
    for (int i = 0; i < n; ++i)
      expect(!w.box.contains(s.pts.point(i)), s.name + ": witness box not empty");
    if (exact_feasible(s)) {
      const auto exact = exact_dispersion_periodic(s.pts);
      expect(w.volume <= exact.volume + kFloatTolerance,
             s.name + ": witness volume exceeds the exact value");
    }
  }
}

// C4: the generic search and the 1-D gap scan agree exactly (rational) on
// 100 random one-dimensional sets with n <= 50.
void c4_1d_oracle_agreement() {
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 50;
    const auto p = to_rational(gen_random<double>(n, 1, 3000 + k));
    const auto scan = cyclic_gap_dispersion_1d(p);
    const auto full = exact_dispersion_periodic(p);
    std::ostringstream tag;
    tag << "set k=" << k << " (n=" << n << ")";
    expect(scan.volume == full.volume, tag.str() + ": gap scan disagrees with the search");
    expect(scan.box->intervals[0].anchor == full.box->intervals[0].anchor,
           tag.str() + ": gap scan picked a different witness");
  }
}

// C5: anchored dispersion never exceeds periodic dispersion (d <= 3 sets),
// and is at least 1/(n+1) on every set.
void c5_range_family_containment() {
  SearchOptions wide;
  wide.budget = 4'000'000'000'000'000;  // n <= d <= 8 cases have a large candidate product
  for (const auto& s : corpus()) {
    const int n = s.pts.size();
    const auto anc = exact_dispersion_boxes(s.pts, wide);
    expect(anc.volume >= split_cube_bound(n) - kFloatTolerance,
           s.name + ": anchored dispersion below 1/(n+1)");
    if (s.pts.dim() <= 3) {
      const auto per = exact_dispersion_periodic(s.pts, wide);
      expect(anc.volume <= per.volume + kFloatTolerance,
             s.name + ": anchored dispersion exceeds periodic dispersion");
    }
  }
}

// C6: equispaced n-point sets on the circle have dispersion exactly 1/n.
void c6_equispaced_tightness() {
  for (int n = 1; n <= 64; ++n) {
    const auto rq = exact_dispersion_periodic(gen_equispaced_1d<Rational>(n));
    expect(rq.volume == Rational(1) / n,
           "n=" + std::to_string(n) + ": rational volume is not exactly 1/n");
    const auto rf = exact_dispersion_periodic(gen_equispaced_1d<double>(n));
    expect(rf.volume >= 1.0 / n - kFloatTolerance && rf.volume <= 1.0 / n + kFloatTolerance,
           "n=" + std::to_string(n) + ": binary64 volume not within 1e-12 of 1/n");
  }
}

// C7: the worked 2-D instance. The witness takes the axis-1 window
// (0.1, length 0.5) and excludes the interior point at height 0.7; the
// independent rational oracle confirms the exact value is >= 0.5.
void c7_worked_instance() {
  const auto p =
      canonicalize<double>({{0.1, 0.3}, {0.3, 0.7}, {0.6, 0.2}, {0.8, 0.9}});
  const auto w = witness_theorem1(p);
  expect(w.volume == 0.5, "witness volume is not 0.5");
  expect(w.window_axis == 0, "window not on the first axis");
  expect(w.box.intervals[0].anchor == 0.1, "window anchor is not 0.1");
  expect(w.box.intervals[0].length == 0.5, "window length is not 0.5");
  expect(w.box.intervals[1].anchor == 0.7, "second axis not anchored at 0.7");
  expect(w.box.intervals[1].length == 1.0, "second axis is not a full circle");
  for (int i = 0; i < p.size(); ++i)
    expect(!w.box.contains(p.point(i)), "witness box not empty");

  const Rational tenth = Rational(1) / 10;
  const PointSet<Rational> pq(2, {1 * tenth, 3 * tenth, 3 * tenth, 7 * tenth, 6 * tenth,
                                  2 * tenth, 8 * tenth, 9 * tenth});
  const auto ref = oracle::periodic_dispersion(pq);
  expect(ref.volume >= Rational(1) / 2, "oracle exact value below 0.5");
}

// C8: translation and coordinate-permutation invariance on 50 randomized
// (set, transform) pairs, exact in rational arithmetic. Translations apply to
// the periodic family; permutations to both families.
void c8_invariance() {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    const int d = 1 + k % 3;
    const int n = 1 + k % 8;
    const auto p = to_rational(gen_random<double>(n, d, 5000 + k));
    std::ostringstream tag;
    tag << "pair k=" << k << " (n=" << n << ", d=" << d << ")";

    if (k % 2 == 0) {
      std::vector<Rational> shift;
      for (int a = 0; a < d; ++a)
        shift.push_back(Rational(static_cast<long>(rng() % 97)) / 97);
      std::vector<Rational> flat;
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < d; ++a)
          flat.push_back(wrap_unit(Rational(p.coord(i, a) + shift[a])));
      const PointSet<Rational> moved(d, std::move(flat));
      expect(exact_dispersion_periodic(moved).volume == exact_dispersion_periodic(p).volume,
             tag.str() + ": periodic dispersion changed under translation");
    } else {
      std::vector<int> perm(d);
      for (int a = 0; a < d; ++a) perm[a] = a;
      for (int a = d - 1; a > 0; --a)
        std::swap(perm[a], perm[static_cast<int>(rng() % (a + 1))]);
      std::vector<Rational> flat;
      for (int i = 0; i < n; ++i)
        for (int a = 0; a < d; ++a) flat.push_back(p.coord(i, perm[a]));
      const PointSet<Rational> permuted(d, std::move(flat));
      expect(exact_dispersion_periodic(permuted).volume ==
                 exact_dispersion_periodic(p).volume,
             tag.str() + ": periodic dispersion changed under permutation");
      expect(exact_dispersion_boxes(permuted).volume == exact_dispersion_boxes(p).volume,
             tag.str() + ": anchored dispersion changed under permutation");
    }
  }
}

// C9: the CLI emits byte-identical JSON across repeated runs and across
// worker counts 1, 2 and 8.
void c9_determinism() {
  const std::string base = "compute --kind random --n 8 --d 3 --seed 99 --workers ";
  const auto w1a = run_cli(base + "1");
  const auto w1b = run_cli(base + "1");
  const auto w2 = run_cli(base + "2");
  const auto w8 = run_cli(base + "8");
  expect(w1a.exit_code == 0, "CLI run failed");
  expect(w1a.out == w1b.out, "repeated runs differ");
  expect(w1a.out == w2.out, "workers=2 output differs from workers=1");
  expect(w1a.out == w8.out, "workers=8 output differs from workers=1");
  expect(!w1a.out.empty(), "CLI produced no output");
}

// C10: formula-level checks for the prior published bounds.
void c10_bound_formulas() {
  expect(ahr_lower_bound(1, 2) == 0.125, "ahr_lower_bound(1,2) is not 0.125");
  expect(hinrichs_constant() >= 0.004229, "Hinrichs constant below 0.004229");
}

struct Criterion {
  std::string label;
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"C1  exact dispersion meets min{1, d/n} on 200 random sets", c1_theorem1_reproduction},
      {"C2  witness reaches volume 1 when n <= d (50 sets)", c2_full_volume_case},
      {"C3  witness valid and below exact on every corpus set", c3_witness_validity},
      {"C4  1-D gap scan agrees with the search (100 sets)", c4_1d_oracle_agreement},
      {"C5  anchored <= periodic and >= 1/(n+1)", c5_range_family_containment},
      {"C6  equispaced sets are tight: dispersion = 1/n", c6_equispaced_tightness},
      {"C7  worked 2-D instance: witness 0.5, oracle >= 0.5", c7_worked_instance},
      {"C8  translation/permutation invariance (50 pairs)", c8_invariance},
      {"C9  byte-identical CLI output across runs and workers", c9_determinism},
      {"C10 published bound formulas", c10_bound_formulas},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string reason;
    try {
      c.body();
    } catch (const std::exception& e) {
      reason = e.what();
    }
    const double elapsed = seconds_since(start);
    char timing[32];
    std::snprintf(timing, sizeof(timing), "%.2fs", elapsed);
    if (reason.empty()) {
      std::cout << "[PASS] " << c.label << " (" << timing << ")\n";
    } else {
      ++failures;
      std::cout << "[FAIL] " << c.label << " (" << timing << "): " << reason << "\n";
    }
  }
  if (failures) std::cout << failures << " criteria failed\n";
  return failures == 0 ? 0 : 1;
}
