#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "subshift/lattice.hpp"
#include "subshift/rational.hpp"

namespace subshift {

/// A finite piece of a subset of Z^d, kept as a sorted list of distinct points.
class SparseSet {
 public:
  SparseSet() = default;
  SparseSet(int dimension, std::vector<Point> points);

  int dimension() const noexcept { return dimension_; }
  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  bool contains(const Point& p) const;
  /// Points inside `box`, sorted.
  std::vector<Point> points_in(const Box& box) const;
  std::size_t count_in(const Box& box) const;
  SparseSet restricted(const Box& box) const;

  SparseSet unite(const SparseSet& other) const;
  bool disjoint(const SparseSet& other) const;

 private:
  int dimension_ = 1;
  std::vector<Point> points_;
};

/// {(p_1(t), ..., p_d(t)) : t in [a, b)}; coeffs[i] = {c_0, c_1, ...} for
/// p_i(t) = c_0 + c_1 t + ... Throws InvalidArgument on 64-bit overflow.
SparseSet polynomial_orbit(const std::vector<std::vector<Coord>>& coeffs, Coord a, Coord b);

struct DensityScan {
  Coord grid = 1;      // rectangle corners on window.corner + grid * Z^d
  Coord min_side = 0;  // 0: max(1, smallest window extent / 4)
};

/// Max of |P cap R| / |R| over scanned rectangles R inside the window: per
/// axis the sides are the powers of two in [min_side, extent] plus the
/// extent itself. A finite lower estimate of the upper Banach density.
Rational banach_density(const SparseSet& p, const Box& window, const DensityScan& scan = {});

/// max over g in `placements` of |P cap (cells + g)| / |cells|.
Rational placement_density(const SparseSet& p, const std::vector<Point>& cells,
                           const Box& placements);

/// Lines of d integers (blank lines and '#' comments skipped), or JSON
/// {"polynomial": [[c0, c1, ...], ...], "range": [a, b]}.
SparseSet parse_sparse_set(std::string_view text);

}  // namespace subshift
