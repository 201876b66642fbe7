#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace subshift {

using Coord = std::int64_t;
using Point = std::vector<Coord>;

/// Axis-aligned box [g_1, g_1 + e_1) x ... x [g_d, g_d + e_d) in Z^d.
///
/// Cubes are the common case (all extents equal), but rectangular boxes are
/// allowed so that windows and sub-windows can be expressed directly.
/// Cells are laid out row-major with the last coordinate fastest.
class Box {
 public:
  Box() = default;
  Box(Point corner, std::vector<Coord> extents);

  /// [0, side)^d
  static Box cube(int dimension, Coord side);
  /// [corner, corner + side)
  static Box cube(Point corner, Coord side);

  int dimension() const noexcept { return static_cast<int>(corner_.size()); }
  const Point& corner() const noexcept { return corner_; }
  const std::vector<Coord>& extents() const noexcept { return extents_; }
  Coord extent(int axis) const { return extents_.at(static_cast<std::size_t>(axis)); }

  bool is_cube() const noexcept;
  /// Side length of a cubic box; throws InvalidArgument for rectangles.
  Coord side() const;

  std::uint64_t cell_count() const noexcept;
  bool empty() const noexcept { return cell_count() == 0; }

  bool contains(const Point& p) const noexcept;
  /// Empty boxes are contained in every box of the same dimension.
  bool contains(const Box& other) const noexcept;

  Box translated(const Point& g) const;

  /// Row-major offset of an interior point.
  std::size_t offset_of(const Point& p) const;
  Point point_at(std::size_t offset) const;
  /// Row-major strides (last axis has stride 1).
  std::vector<std::size_t> strides() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  Point corner_;
  std::vector<Coord> extents_;
};

/// Calls fn(const Point&) for every cell of the box in row-major order.
template <class Fn>
void for_each_point(const Box& box, Fn&& fn) {
  if (box.empty()) return;
  const int d = box.dimension();
  Point p = box.corner();
  while (true) {
    fn(static_cast<const Point&>(p));
    int axis = d - 1;
    while (axis >= 0) {
      const auto a = static_cast<std::size_t>(axis);
      if (++p[a] < box.corner()[a] + box.extents()[a]) break;
      p[a] = box.corner()[a];
      --axis;
    }
    if (axis < 0) return;
  }
}

/// Intersection of two boxes (possibly empty, extents clamped at 0).
Box intersect(const Box& a, const Box& b);

/// Diagonal finite-index subgroup m * Z^d.
class Sublattice {
 public:
  Sublattice(int dimension, Coord modulus);

  int dimension() const noexcept { return dimension_; }
  Coord modulus() const noexcept { return modulus_; }

  bool contains(const Point& g) const;
  /// Canonical representative in [0, m)^d.
  Point reduce(const Point& g) const;

  friend bool operator==(const Sublattice&, const Sublattice&) = default;

 private:
  int dimension_;
  Coord modulus_;
};

/// (Z^d : F) = m^d.
std::uint64_t index(const Sublattice& f);

/// True iff every coordinate of g1 - g2 is divisible by m.
bool congruent(const Point& g1, const Point& g2, const Sublattice& f);

/// [0, m)^d in lexicographic order: a complete residue set modulo F.
std::vector<Point> residues(const Sublattice& f);

/// Row-major index of reduce(g) inside residues(f).
std::size_t residue_index(const Point& g, const Sublattice& f);

/// m Z^d intersected with m' Z^d, i.e. lcm(m, m') Z^d.
Sublattice intersect(const Sublattice& a, const Sublattice& b);

/// Strictly increasing moduli m_1 < m_2 < ... for the subgroups F_k = m_k Z^d.
class SubgroupSchedule {
 public:
  explicit SubgroupSchedule(std::vector<Coord> moduli);

  /// m_k = k! for k = 1..count.
  static SubgroupSchedule factorial(int count);

  const std::vector<Coord>& moduli() const noexcept { return moduli_; }

 private:
  std::vector<Coord> moduli_;
};

/// Finite proxy for cofinality: every m in [1, bound] divides some m_k.
bool schedule_cofinal(const SubgroupSchedule& schedule, Coord bound);

Coord floor_mod(Coord a, Coord m) noexcept;
Coord floor_div(Coord a, Coord m) noexcept;

}  // namespace subshift
