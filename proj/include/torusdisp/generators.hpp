#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "torusdisp/point_set.hpp"

namespace torusdisp {

enum class GeneratorKind { random, grid, kronecker, fibonacci, equispaced_1d };

// Deterministic description of a generated point set. Generation depends on
// nothing but these fields.
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::random;
  int n = 0;                   // point count (random, kronecker, fibonacci, equispaced)
  int m = 0;                   // per-axis resolution (grid)
  int d = 1;
  std::uint64_t seed = 0;      // random only
  std::vector<double> alpha;   // kronecker directions; empty = default
};

namespace detail {

// Uniform double in [0,1) from the top 53 bits of one mt19937_64 draw.
// mt19937_64 is fully specified by the standard, so generated sets are
// identical across platforms.
inline double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace detail

// n i.i.d.-uniform points from mt19937_64(seed), coordinates drawn in row
// order. Values are computed in binary64 and converted exactly to Real.
template <class Real>
PointSet<Real> gen_random(int n, int d, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("gen_random: n must be >= 0");
  if (d < 1) throw std::invalid_argument("gen_random: d must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Real> flat;
  flat.reserve(static_cast<std::size_t>(n) * d);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) flat.push_back(Real(detail::unit_from_bits(rng())));
  return PointSet<Real>(d, std::move(flat));
}

// The m^d lattice {0, 1/m, ..., (m-1)/m}^d, first axis slowest. Fractions are
// formed in Real arithmetic, so the rational instantiation is exact.
template <class Real>
PointSet<Real> gen_grid(int m, int d, std::int64_t max_points = 10'000'000) {
  if (m < 1) throw std::invalid_argument("gen_grid: m must be >= 1");
  if (d < 1) throw std::invalid_argument("gen_grid: d must be >= 1");
  std::int64_t count = 1;
  for (int a = 0; a < d; ++a) {
    count *= m;
    if (count > max_points)
      throw std::invalid_argument("gen_grid: m^d exceeds the point budget of " +
                                  std::to_string(max_points));
  }
  std::vector<Real> fractions;
  fractions.reserve(m);
  for (int i = 0; i < m; ++i) fractions.push_back(Real(i) / Real(m));

  std::vector<Real> flat;
  flat.reserve(static_cast<std::size_t>(count) * d);
  std::vector<int> idx(d, 0);
  for (std::int64_t p = 0; p < count; ++p) {
    for (int a = 0; a < d; ++a) flat.push_back(fractions[idx[a]]);
    for (int a = d - 1; a >= 0; --a) {
      if (++idx[a] < m) break;
      idx[a] = 0;
    }
  }
  return PointSet<Real>(d, std::move(flat));
}

// Fractional parts of the square roots of the first d primes.
inline std::vector<double> default_kronecker_alpha(int d) {
  std::vector<double> alpha;
  alpha.reserve(d);
  int candidate = 2;
  while (static_cast<int>(alpha.size()) < d) {
    bool prime = true;
    for (int f = 2; f * f <= candidate; ++f)
      if (candidate % f == 0) {
        prime = false;
        break;
      }
    if (prime) {
      double r = std::sqrt(static_cast<double>(candidate));
      alpha.push_back(r - std::floor(r));
    }
    ++candidate;
  }
  return alpha;
}

// Kronecker sequence {i * alpha mod 1 : i = 0..n-1}, computed in binary64.
template <class Real>
PointSet<Real> gen_kronecker(int n, int d, std::optional<std::vector<double>> alpha = {}) {
  if (n < 1) throw std::invalid_argument("gen_kronecker: n must be >= 1");
  if (d < 1) throw std::invalid_argument("gen_kronecker: d must be >= 1");
  std::vector<double> dirs = alpha ? *alpha : default_kronecker_alpha(d);
  if (static_cast<int>(dirs.size()) != d)
    throw std::invalid_argument("gen_kronecker: alpha must have d entries");
  std::vector<Real> flat;
  flat.reserve(static_cast<std::size_t>(n) * d);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < d; ++a) flat.push_back(Real(wrap_unit(i * dirs[a])));
  return PointSet<Real>(d, std::move(flat));
}

// Fibonacci rank-1 lattice in d = 2: n must be a Fibonacci number F_k, the
// points are (i/n, {i F_{k-1} / n}). First coordinates are equispaced.
template <class Real>
PointSet<Real> gen_fibonacci(int n) {
  if (n < 1) throw std::invalid_argument("gen_fibonacci: n must be >= 1");
  std::int64_t prev = 1, cur = 1;
  while (cur < n) {
    std::int64_t next = prev + cur;
    prev = cur;
    cur = next;
  }
  if (cur != n)
    throw std::invalid_argument("gen_fibonacci: n = " + std::to_string(n) +
                                " is not a Fibonacci number");
  std::int64_t z = (n == 1) ? 1 : prev;
  std::vector<Real> flat;
  flat.reserve(static_cast<std::size_t>(n) * 2);
  for (std::int64_t i = 0; i < n; ++i) {
    flat.push_back(Real(i) / Real(n));
    flat.push_back(Real((i * z) % n) / Real(n));
  }
  return PointSet<Real>(2, std::move(flat));
}

// {i/n : 0 <= i < n} on the circle.
template <class Real>
PointSet<Real> gen_equispaced_1d(int n) {
  if (n < 1) throw std::invalid_argument("gen_equispaced_1d: n must be >= 1");
  std::vector<Real> flat;
  flat.reserve(n);
  for (int i = 0; i < n; ++i) flat.push_back(Real(i) / Real(n));
  return PointSet<Real>(1, std::move(flat));
}

template <class Real>
PointSet<Real> generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorKind::random:
      return gen_random<Real>(spec.n, spec.d, spec.seed);
    case GeneratorKind::grid:
      return gen_grid<Real>(spec.m, spec.d);
    case GeneratorKind::kronecker:
      return gen_kronecker<Real>(spec.n, spec.d,
                                 spec.alpha.empty() ? std::nullopt
                                                    : std::optional(spec.alpha));
    case GeneratorKind::fibonacci:
      return gen_fibonacci<Real>(spec.n);
    case GeneratorKind::equispaced_1d:
      return gen_equispaced_1d<Real>(spec.n);
  }
  throw std::invalid_argument("generate: unknown generator kind");
}

inline std::string to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::random: return "random";
    case GeneratorKind::grid: return "grid";
    case GeneratorKind::kronecker: return "kronecker";
    case GeneratorKind::fibonacci: return "fibonacci";
    case GeneratorKind::equispaced_1d: return "equispaced-1d";
  }
  return "unknown";
}

inline GeneratorKind generator_kind_from_string(const std::string& s) {
  if (s == "random") return GeneratorKind::random;
  if (s == "grid") return GeneratorKind::grid;
  if (s == "kronecker") return GeneratorKind::kronecker;
  if (s == "fibonacci") return GeneratorKind::fibonacci;
  if (s == "equispaced-1d" || s == "equispaced") return GeneratorKind::equispaced_1d;
  throw std::invalid_argument("unknown generator kind: " + s);
}

}  // namespace torusdisp
