#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torusdisp/scalar.hpp"

namespace torusdisp {

// n points in [0,1)^d in torus-canonical form. Duplicates are kept and
// counted with multiplicity. Immutable after construction.
template <class Real>
class PointSet {
 public:
  PointSet(int dim, std::vector<Real> flat) : dim_(dim), coords_(std::move(flat)) {
    if (dim_ < 1) throw std::invalid_argument("PointSet: dimension must be >= 1");
    if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
      throw std::invalid_argument("PointSet: coordinate count not a multiple of dim");
    for (const Real& c : coords_) {
      if (!is_finite_value(c)) throw std::invalid_argument("PointSet: non-finite coordinate");
      if (c < Real(0) || c >= Real(1))
        throw std::invalid_argument("PointSet: coordinate outside [0,1)");
    }
  }

  int dim() const { return dim_; }
  int size() const { return static_cast<int>(coords_.size()) / dim_; }
  bool empty() const { return coords_.empty(); }

  const Real& coord(int i, int axis) const {
    return coords_[static_cast<std::size_t>(i) * dim_ + axis];
  }
  std::span<const Real> point(int i) const {
    return {coords_.data() + static_cast<std::size_t>(i) * dim_, static_cast<std::size_t>(dim_)};
  }
  const std::vector<Real>& flat() const { return coords_; }

  // All values on one axis, in point order.
  std::vector<Real> column(int axis) const {
    std::vector<Real> out;
    out.reserve(size());
    for (int i = 0; i < size(); ++i) out.push_back(coord(i, axis));
    return out;
  }

 private:
  int dim_;
  std::vector<Real> coords_;
};

// Maps raw coordinate rows onto the torus: every entry is replaced by its
// fractional part, with exact integers (in particular 1) becoming 0.
// `declared_dim` is required when `rows` is empty and otherwise must match.
template <class Real>
PointSet<Real> canonicalize(const std::vector<std::vector<Real>>& rows,
                            std::optional<int> declared_dim = std::nullopt) {
  int dim;
  if (rows.empty()) {
    if (!declared_dim) throw std::invalid_argument("canonicalize: empty input needs a dimension");
    dim = *declared_dim;
    if (dim < 1) throw std::invalid_argument("canonicalize: dimension must be >= 1");
    return PointSet<Real>(dim, {});
  }
  dim = static_cast<int>(rows.front().size());
  if (declared_dim && *declared_dim != dim)
    throw std::invalid_argument("canonicalize: declared dimension does not match rows");
  if (dim < 1) throw std::invalid_argument("canonicalize: dimension must be >= 1");

  std::vector<Real> flat;
  flat.reserve(rows.size() * dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != dim)
      throw std::invalid_argument("canonicalize: row " + std::to_string(r) +
                                  " has mismatched dimension");
    for (const Real& c : rows[r]) {
      if (!is_finite_value(c))
        throw std::invalid_argument("canonicalize: non-finite coordinate in row " +
                                    std::to_string(r));
      flat.push_back(wrap_unit(c));
    }
  }
  return PointSet<Real>(dim, std::move(flat));
}

// Restriction to the first k coordinates; multiplicities preserved.
template <class Real>
PointSet<Real> project(const PointSet<Real>& p, int k) {
  if (k < 1 || k > p.dim()) throw std::invalid_argument("project: k out of range");
  std::vector<Real> flat;
  flat.reserve(static_cast<std::size_t>(p.size()) * k);
  for (int i = 0; i < p.size(); ++i)
    for (int a = 0; a < k; ++a) flat.push_back(p.coord(i, a));
  return PointSet<Real>(k, std::move(flat));
}

}  // namespace torusdisp
