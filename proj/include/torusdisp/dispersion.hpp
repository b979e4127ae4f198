#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "torusdisp/boxes.hpp"
#include "torusdisp/point_set.hpp"
#include "torusdisp/scalar.hpp"

namespace torusdisp {

enum class Method { exact_enumeration, gap_scan_1d, sampling, witness_construction };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::exact_enumeration: return "exact-enumeration";
    case Method::gap_scan_1d: return "gap-scan-1d";
    case Method::sampling: return "sampling";
    case Method::witness_construction: return "witness-construction";
  }
  return "unknown";
}

// Thrown before any search work when the candidate product exceeds the
// configured budget.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchOptions {
  // Cap on the product of per-axis candidate counts.
  std::int64_t budget = 1'000'000'000;
  int workers = 1;
};

template <class Real, class Box>
struct DispersionResult {
  Real volume{};
  // Unset only for sampling runs in which no sampled box was empty.
  std::optional<Box> box;
  Method method = Method::exact_enumeration;
  // Completed boxes evaluated; independent of the worker count.
  std::int64_t candidates_examined = 0;
  bool exact = true;
};

template <class Real>
using PeriodicDispersion = DispersionResult<Real, PeriodicBox<Real>>;
template <class Real>
using AnchoredDispersion = DispersionResult<Real, AnchoredBox<Real>>;

// Every side an inclusion-maximal empty periodic box can have on this axis:
// for the m sorted distinct coordinate values, the arcs between each ordered
// pair of distinct values plus one full-circle arc anchored at each value,
// m*m candidates in total. Any empty box can be grown side by side until each
// side either hits a coordinate value at both ends or covers the whole
// circle, so searching these products finds the supremum.
template <class Real>
std::vector<PeriodicInterval<Real>> axis_candidates(const PointSet<Real>& p, int axis) {
  if (p.size() < 1) throw std::invalid_argument("axis_candidates: empty point set");
  if (axis < 0 || axis >= p.dim()) throw std::invalid_argument("axis_candidates: axis out of range");
  std::vector<Real> vals = p.column(axis);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  const int m = static_cast<int>(vals.size());
  std::vector<PeriodicInterval<Real>> out;
  out.reserve(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j)
      if (j != i) out.push_back({vals[i], torus_gap(vals[i], vals[j])});
    out.push_back({vals[i], Real(1)});
  }
  return out;
}

namespace detail {

// One axis of a candidate anchored box. length is computed once from the
// endpoints so that sorting, pruning and reported volumes all agree.
template <class Real>
struct AxisSegment {
  Real anchor{};  // lower endpoint
  Real upper{};
  Real length{};

  bool contains(const Real& z) const { return anchor < z && z < upper; }
};

template <class Real>
std::vector<Real> sorted_distinct(std::vector<Real> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Coordinate values plus both walls, sorted distinct.
template <class Real>
std::vector<Real> anchored_grid(const PointSet<Real>& p, int axis) {
  std::vector<Real> g = p.column(axis);
  g.push_back(Real(0));
  g.push_back(Real(1));
  return sorted_distinct(std::move(g));
}

template <class Real>
struct PeriodicPolicy {
  using Candidate = PeriodicInterval<Real>;
  using Box = PeriodicBox<Real>;

  static std::int64_t candidate_count(const PointSet<Real>& p, int axis) {
    const auto m = static_cast<std::int64_t>(sorted_distinct(p.column(axis)).size());
    return m * m;
  }

  static std::vector<Candidate> candidates(const PointSet<Real>& p, int axis) {
    return axis_candidates(p, axis);
  }

  // Longest empty arc given the values still to avoid: the widest gap between
  // cyclically consecutive distinct values, anchored at the value that starts
  // it; the full circle when only one value remains. Ties keep the smallest
  // anchor (the wrap-around gap, whose anchor is the largest value, is
  // scanned last).
  static Candidate closing(std::vector<Real> vals) {
    vals = sorted_distinct(std::move(vals));
    const int m = static_cast<int>(vals.size());
    if (m == 1) return {vals[0], Real(1)};
    Candidate best{vals[0], torus_gap(vals[0], vals[1])};
    for (int i = 1; i < m; ++i) {
      Real gap = torus_gap(vals[i], vals[(i + 1) % m]);
      if (gap > best.length) best = {vals[i], gap};
    }
    return best;
  }

  // Side for an axis with nothing left to avoid. Anchoring at the smallest
  // coordinate value keeps tied optima identical to what exhaustive
  // enumeration with the lexicographic tie-break would return.
  static Candidate unconstrained(const PointSet<Real>& p, int axis) {
    std::vector<Real> col = p.column(axis);
    return {*std::min_element(col.begin(), col.end()), Real(1)};
  }

  static bool search_less(const Candidate& a, const Candidate& b) {
    if (a.length != b.length) return a.length > b.length;
    return a.anchor < b.anchor;
  }

  static void append_key(const Candidate& c, std::vector<Real>& key) {
    key.push_back(c.anchor);
    key.push_back(c.length);
  }

  static Box make_box(std::vector<Candidate> chosen) { return Box{std::move(chosen)}; }
};

template <class Real>
struct AnchoredPolicy {
  using Candidate = AxisSegment<Real>;
  using Box = AnchoredBox<Real>;

  static std::int64_t candidate_count(const PointSet<Real>& p, int axis) {
    const auto k = static_cast<std::int64_t>(anchored_grid(p, axis).size());
    return k * (k - 1) / 2;
  }

  static std::vector<Candidate> candidates(const PointSet<Real>& p, int axis) {
    const std::vector<Real> g = anchored_grid(p, axis);
    const int k = static_cast<int>(g.size());
    std::vector<Candidate> out;
    out.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) out.push_back({g[i], g[j], g[j] - g[i]});
    return out;
  }

  // Widest gap between consecutive blocked values, walls included. Ties keep
  // the smallest anchor.
  static Candidate closing(std::vector<Real> vals) {
    vals.push_back(Real(0));
    vals.push_back(Real(1));
    vals = sorted_distinct(std::move(vals));
    Candidate best{vals[0], vals[1], vals[1] - vals[0]};
    for (std::size_t i = 1; i + 1 < vals.size(); ++i) {
      Real len = vals[i + 1] - vals[i];
      if (len > best.length) best = {vals[i], vals[i + 1], len};
    }
    return best;
  }

  static Candidate unconstrained(const PointSet<Real>&, int) {
    return {Real(0), Real(1), Real(1)};
  }

  static bool search_less(const Candidate& a, const Candidate& b) {
    if (a.length != b.length) return a.length > b.length;
    if (a.anchor != b.anchor) return a.anchor < b.anchor;
    return a.upper < b.upper;
  }

  static void append_key(const Candidate& c, std::vector<Real>& key) {
    key.push_back(c.anchor);
    key.push_back(c.upper);
  }

  static Box make_box(std::vector<Candidate> chosen) {
    Box b;
    b.lower.reserve(chosen.size());
    b.upper.reserve(chosen.size());
    for (const Candidate& c : chosen) {
      b.lower.push_back(c.anchor);
      b.upper.push_back(c.upper);
    }
    return b;
  }
};

template <class Real>
bool improves(const Real& vol, const std::vector<Real>& key, bool best_found,
              const Real& best_vol, const std::vector<Real>& best_key) {
  if (!best_found) return true;
  if (vol != best_vol) return vol > best_vol;
  return std::lexicographical_compare(key.begin(), key.end(), best_key.begin(), best_key.end());
}

// Depth-first search over per-axis candidate products with pruning.
//
// Axes are visited in ascending order of distinct-value count; the final axis
// is never enumerated but closed in one step (given the points that survived
// every earlier side, its best interval is a widest-gap computation). Each
// candidate of the first search axis forms one logical task; tasks are
// distributed over workers but every task starts from the same precomputed
// incumbent (the best single-axis slab), so the result and the examined count
// do not depend on the worker count. Tie-breaking is by lexicographically
// smallest per-axis key in original axis order.
template <class Real, class Policy>
class BoxSearch {
 public:
  using Candidate = typename Policy::Candidate;
  using Box = typename Policy::Box;

  BoxSearch(const PointSet<Real>& p, const SearchOptions& opt) : p_(p), opt_(opt) {}

  DispersionResult<Real, Box> run() {
    const int d = p_.dim();

    double product = 1.0;
    for (int a = 0; a < d; ++a)
      product *= static_cast<double>(Policy::candidate_count(p_, a));
    if (product > static_cast<double>(opt_.budget))
      throw budget_error("candidate product " + format_count(product) + " exceeds budget " +
                         std::to_string(opt_.budget) +
                         "; use sampling mode or raise the budget");

    order_axes();
    for (int pos = 0; pos + 1 < d; ++pos) {
      cands_.push_back(Policy::candidates(p_, search_axes_[pos]));
      std::sort(cands_.back().begin(), cands_.back().end(), Policy::search_less);
    }
    all_points_.resize(p_.size());
    for (int i = 0; i < p_.size(); ++i) all_points_[i] = i;

    make_seed();

    const int tasks = (d == 1) ? 1 : static_cast<int>(cands_[0].size());
    std::vector<TaskOutcome> outs(tasks);
    std::atomic<int> next{0};
    auto work = [&] {
      for (;;) {
        const int t = next.fetch_add(1);
        if (t >= tasks) break;
        outs[t] = run_task(t);
      }
    };
    const int workers = std::clamp(opt_.workers, 1, tasks);
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }

    Incumbent global = seed_;
    std::int64_t examined = 1;  // the seed
    for (const TaskOutcome& out : outs) {
      examined += out.examined;
      if (improves(out.inc.volume, out.inc.key, global.found, global.volume, global.key))
        global = out.inc;
    }

    DispersionResult<Real, Box> res;
    res.volume = global.volume;
    res.box = Policy::make_box(global.chosen);
    res.method = Method::exact_enumeration;
    res.candidates_examined = examined;
    res.exact = true;
    for (int i = 0; i < p_.size(); ++i)
      if (res.box->contains(p_.point(i)))
        throw std::logic_error("dispersion search produced a non-empty box");
    return res;
  }

 private:
  struct Incumbent {
    bool found = false;
    Real volume{};
    std::vector<Real> key;
    std::vector<Candidate> chosen;  // original axis order
  };

  struct TaskOutcome {
    Incumbent inc;
    std::int64_t examined = 0;
  };

  struct TaskState {
    Incumbent inc;
    std::int64_t examined = 0;
    std::vector<std::vector<int>> survivors;   // per depth
    std::vector<const Candidate*> chosen;      // per depth, search order
  };

  static std::string format_count(double product) {
    return std::to_string(static_cast<long long>(std::min(product, 9.2e18)));
  }

  // Stable order by ascending distinct-value count, so cheap axes are
  // enumerated and the most crowded axis is closed in one step.
  void order_axes() {
    const int d = p_.dim();
    std::vector<std::int64_t> counts(d);
    for (int a = 0; a < d; ++a)
      counts[a] = static_cast<std::int64_t>(sorted_distinct(p_.column(a)).size());
    search_axes_.resize(d);
    for (int a = 0; a < d; ++a) search_axes_[a] = a;
    std::stable_sort(search_axes_.begin(), search_axes_.end(),
                     [&](int a, int b) { return counts[a] < counts[b]; });
  }

  // Best single-axis slab: for each axis, the widest empty interval times the
  // full range everywhere else. Valid and cheap, and identical for every
  // task, which keeps pruning independent of the execution schedule.
  void make_seed() {
    const int d = p_.dim();
    int best_axis = 0;
    Candidate best = Policy::closing(p_.column(0));
    for (int a = 1; a < d; ++a) {
      Candidate c = Policy::closing(p_.column(a));
      if (c.length > best.length) {
        best = c;
        best_axis = a;
      }
    }
    std::vector<Candidate> chosen(d);
    for (int a = 0; a < d; ++a)
      chosen[a] = (a == best_axis) ? best : Policy::unconstrained(p_, a);
    seed_ = to_incumbent(best.length, std::move(chosen));
  }

  Incumbent to_incumbent(Real volume, std::vector<Candidate> chosen) const {
    Incumbent inc;
    inc.found = true;
    inc.volume = std::move(volume);
    inc.key.reserve(2 * chosen.size());
    for (const Candidate& c : chosen) Policy::append_key(c, inc.key);
    inc.chosen = std::move(chosen);
    return inc;
  }

  TaskOutcome run_task(int t) const {
    const int d = p_.dim();
    TaskState ts;
    ts.inc = seed_;
    ts.survivors.resize(d);
    for (auto& s : ts.survivors) s.reserve(p_.size());
    ts.chosen.resize(d, nullptr);
    ts.survivors[0] = all_points_;

    if (d == 1) {
      dfs(0, Real(1), ts);
    } else {
      const Candidate& c0 = cands_[0][t];
      if (!(c0.length < ts.inc.volume)) {
        filter(ts.survivors[0], c0, search_axes_[0], ts.survivors[1]);
        ts.chosen[0] = &c0;
        dfs(1, c0.length, ts);
      }
    }
    return {std::move(ts.inc), ts.examined};
  }

  void filter(const std::vector<int>& in, const Candidate& c, int axis,
              std::vector<int>& out) const {
    out.clear();
    for (int i : in)
      if (c.contains(p_.coord(i, axis))) out.push_back(i);
  }

  void dfs(int depth, const Real& partial, TaskState& ts) const {
    const int d = p_.dim();
    if (ts.survivors[depth].empty()) {
      complete_unconstrained(depth, partial, ts);
      return;
    }
    if (depth == d - 1) {
      complete_closing(partial, ts);
      return;
    }
    const int axis = search_axes_[depth];
    for (const Candidate& c : cands_[depth]) {
      Real ext = partial * c.length;
      // Sorted by descending length: once one candidate cannot reach the
      // incumbent, none of the rest can. Ties survive for key comparison.
      if (ext < ts.inc.volume) break;
      filter(ts.survivors[depth], c, axis, ts.survivors[depth + 1]);
      ts.chosen[depth] = &c;
      dfs(depth + 1, ext, ts);
    }
  }

  // No points left to avoid: this and all remaining axes take a full-length
  // side.
  void complete_unconstrained(int depth, const Real& partial, TaskState& ts) const {
    const int d = p_.dim();
    std::vector<Candidate> chosen(d);
    for (int pos = 0; pos < depth; ++pos) chosen[search_axes_[pos]] = *ts.chosen[pos];
    for (int pos = depth; pos < d; ++pos) {
      const int axis = search_axes_[pos];
      chosen[axis] = Policy::unconstrained(p_, axis);
    }
    consider(partial, std::move(chosen), ts);
  }

  void complete_closing(const Real& partial, TaskState& ts) const {
    const int d = p_.dim();
    const int axis = search_axes_[d - 1];
    std::vector<Real> vals;
    vals.reserve(ts.survivors[d - 1].size());
    for (int i : ts.survivors[d - 1]) vals.push_back(p_.coord(i, axis));
    Candidate close = Policy::closing(std::move(vals));
    Real vol = partial * close.length;
    std::vector<Candidate> chosen(d);
    for (int pos = 0; pos + 1 < d; ++pos) chosen[search_axes_[pos]] = *ts.chosen[pos];
    chosen[axis] = std::move(close);
    consider(std::move(vol), std::move(chosen), ts);
  }

  void consider(Real vol, std::vector<Candidate> chosen, TaskState& ts) const {
    ++ts.examined;
    std::vector<Real> key;
    key.reserve(2 * chosen.size());
    for (const Candidate& c : chosen) Policy::append_key(c, key);
    if (improves(vol, key, ts.inc.found, ts.inc.volume, ts.inc.key)) {
      ts.inc.found = true;
      ts.inc.volume = std::move(vol);
      ts.inc.key = std::move(key);
      ts.inc.chosen = std::move(chosen);
    }
  }

  const PointSet<Real>& p_;
  SearchOptions opt_;
  std::vector<int> search_axes_;
  std::vector<std::vector<Candidate>> cands_;  // per search position, last axis omitted
  std::vector<int> all_points_;
  Incumbent seed_;
};

}  // namespace detail

// Largest empty periodic box by exhaustive candidate search with pruning.
// Deterministic: ties go to the lexicographically smallest per-axis
// (anchor, length) vector, and the result is independent of opt.workers.
template <class Real>
PeriodicDispersion<Real> exact_dispersion_periodic(const PointSet<Real>& p,
                                                  const SearchOptions& opt = {}) {
  if (p.size() == 0) {
    PeriodicDispersion<Real> res;
    PeriodicBox<Real> box;
    box.intervals.assign(p.dim(), PeriodicInterval<Real>{Real(0), Real(1)});
    res.volume = Real(1);
    res.box = std::move(box);
    res.method = Method::exact_enumeration;
    res.candidates_examined = 0;
    res.exact = true;
    return res;
  }
  detail::BoxSearch<Real, detail::PeriodicPolicy<Real>> search(p, opt);
  return search.run();
}

// Largest empty ordinary open box in [0,1]^d; endpoints come from the
// coordinate values and the two walls.
template <class Real>
AnchoredDispersion<Real> exact_dispersion_boxes(const PointSet<Real>& p,
                                                const SearchOptions& opt = {}) {
  if (p.size() == 0) {
    AnchoredDispersion<Real> res;
    AnchoredBox<Real> box;
    box.lower.assign(p.dim(), Real(0));
    box.upper.assign(p.dim(), Real(1));
    res.volume = Real(1);
    res.box = std::move(box);
    res.method = Method::exact_enumeration;
    res.candidates_examined = 0;
    res.exact = true;
    return res;
  }
  detail::BoxSearch<Real, detail::AnchoredPolicy<Real>> search(p, opt);
  return search.run();
}

// One-dimensional special case: sort, scan cyclic gaps between distinct
// values, O(n log n). Kept independent of the generic search so the two can
// be checked against each other.
template <class Real>
PeriodicDispersion<Real> cyclic_gap_dispersion_1d(const PointSet<Real>& p) {
  if (p.dim() != 1) throw std::invalid_argument("cyclic_gap_dispersion_1d: requires d = 1");
  if (p.size() < 1) throw std::invalid_argument("cyclic_gap_dispersion_1d: empty point set");
  std::vector<Real> vals = detail::sorted_distinct(p.column(0));
  const int m = static_cast<int>(vals.size());
  PeriodicInterval<Real> best{vals[0], Real(1)};
  if (m > 1) {
    best = {vals[0], torus_gap(vals[0], vals[1])};
    for (int i = 1; i < m; ++i) {
      Real gap = torus_gap(vals[i], vals[(i + 1) % m]);
      if (gap > best.length) best = {vals[i], gap};
    }
  }
  PeriodicDispersion<Real> res;
  res.volume = best.length;
  res.box = PeriodicBox<Real>{{best}};
  res.method = Method::gap_scan_1d;
  res.candidates_examined = m;
  res.exact = true;
  return res;
}

// Seeded random search over the candidate product: per trial one candidate
// per axis is drawn (index = rng() % count, mt19937_64), and the best empty
// box found is kept under the same tie-break as the exact search. Always a
// lower bound on the exact value. If no sampled box is empty the result has
// volume 0 and no box.
template <class Real>
PeriodicDispersion<Real> sampled_dispersion_lower_bound(const PointSet<Real>& p, int trials,
                                                        std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("sampled_dispersion_lower_bound: trials must be >= 1");
  if (p.size() == 0) {
    auto res = exact_dispersion_periodic(p);
    res.method = Method::sampling;
    res.exact = false;
    return res;
  }
  const int d = p.dim();
  std::vector<std::vector<PeriodicInterval<Real>>> cands;
  cands.reserve(d);
  for (int a = 0; a < d; ++a) cands.push_back(axis_candidates(p, a));

  std::mt19937_64 rng(seed);
  bool found = false;
  Real best_vol{};
  std::vector<Real> best_key;
  std::vector<PeriodicInterval<Real>> best_box;

  std::vector<const PeriodicInterval<Real>*> pick(d);
  for (int t = 0; t < trials; ++t) {
    for (int a = 0; a < d; ++a)
      pick[a] = &cands[a][static_cast<std::size_t>(rng() % cands[a].size())];
    bool empty = true;
    for (int i = 0; i < p.size() && empty; ++i) {
      bool inside = true;
      for (int a = 0; a < d && inside; ++a) inside = pick[a]->contains(p.coord(i, a));
      if (inside) empty = false;
    }
    if (!empty) continue;
    Real vol(1);
    std::vector<Real> key;
    key.reserve(2 * d);
    for (int a = 0; a < d; ++a) {
      vol *= pick[a]->length;
      key.push_back(pick[a]->anchor);
      key.push_back(pick[a]->length);
    }
    if (detail::improves(vol, key, found, best_vol, best_key)) {
      found = true;
      best_vol = std::move(vol);
      best_key = std::move(key);
      best_box.clear();
      for (int a = 0; a < d; ++a) best_box.push_back(*pick[a]);
    }
  }

  PeriodicDispersion<Real> res;
  res.method = Method::sampling;
  res.candidates_examined = trials;
  res.exact = false;
  if (found) {
    res.volume = best_vol;
    res.box = PeriodicBox<Real>{std::move(best_box)};
  } else {
    res.volume = Real(0);
  }
  return res;
}

}  // namespace torusdisp
