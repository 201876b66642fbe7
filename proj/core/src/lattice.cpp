#include "subshift/lattice.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "subshift/error.hpp"

namespace subshift {

Coord floor_mod(Coord a, Coord m) noexcept {
  Coord r = a % m;
  return r < 0 ? r + m : r;
}

Coord floor_div(Coord a, Coord m) noexcept { return (a - floor_mod(a, m)) / m; }

Box::Box(Point corner, std::vector<Coord> extents)
    : corner_(std::move(corner)), extents_(std::move(extents)) {
  if (corner_.size() != extents_.size()) {
    throw InvalidArgument("box corner and extents differ in dimension");
  }
  if (corner_.empty()) throw InvalidArgument("box dimension must be positive");
  for (Coord e : extents_) {
    if (e < 0) throw InvalidArgument("box extent must be non-negative");
  }
}

Box Box::cube(int dimension, Coord side) {
  if (dimension < 1) throw InvalidArgument("dimension must be positive");
  return Box(Point(static_cast<std::size_t>(dimension), 0),
             std::vector<Coord>(static_cast<std::size_t>(dimension), side));
}

Box Box::cube(Point corner, Coord side) {
  std::vector<Coord> extents(corner.size(), side);
  return Box(std::move(corner), std::move(extents));
}

bool Box::is_cube() const noexcept {
  return std::adjacent_find(extents_.begin(), extents_.end(), std::not_equal_to<>()) ==
         extents_.end();
}

Coord Box::side() const {
  if (!is_cube()) throw InvalidArgument("box is not a cube");
  return extents_.front();
}

std::uint64_t Box::cell_count() const noexcept {
  std::uint64_t n = 1;
  for (Coord e : extents_) n *= static_cast<std::uint64_t>(e);
  return extents_.empty() ? 0 : n;
}

bool Box::contains(const Point& p) const noexcept {
  if (p.size() != corner_.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < corner_[i] || p[i] >= corner_[i] + extents_[i]) return false;
  }
  return true;
}

bool Box::contains(const Box& other) const noexcept {
  if (other.dimension() != dimension()) return false;
  if (other.empty()) return true;
  for (std::size_t i = 0; i < corner_.size(); ++i) {
    if (other.corner_[i] < corner_[i]) return false;
    if (other.corner_[i] + other.extents_[i] > corner_[i] + extents_[i]) return false;
  }
  return true;
}

Box Box::translated(const Point& g) const {
  if (g.size() != corner_.size()) throw InvalidArgument("translation has wrong dimension");
  Point c = corner_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += g[i];
  return Box(std::move(c), extents_);
}

std::vector<std::size_t> Box::strides() const {
  std::vector<std::size_t> s(extents_.size(), 1);
  for (std::size_t i = extents_.size(); i-- > 1;) {
    s[i - 1] = s[i] * static_cast<std::size_t>(extents_[i]);
  }
  return s;
}

std::size_t Box::offset_of(const Point& p) const {
  if (!contains(p)) throw InvalidArgument("point outside box");
  std::size_t off = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    off = off * static_cast<std::size_t>(extents_[i]) + static_cast<std::size_t>(p[i] - corner_[i]);
  }
  return off;
}

Point Box::point_at(std::size_t offset) const {
  Point p(corner_.size());
  for (std::size_t i = corner_.size(); i-- > 0;) {
    const auto e = static_cast<std::size_t>(extents_[i]);
    p[i] = corner_[i] + static_cast<Coord>(offset % e);
    offset /= e;
  }
  return p;
}

Box intersect(const Box& a, const Box& b) {
  if (a.dimension() != b.dimension()) throw InvalidArgument("box dimension mismatch");
  Point corner(a.corner().size());
  std::vector<Coord> extents(a.corner().size());
  for (std::size_t i = 0; i < corner.size(); ++i) {
    Coord lo = std::max(a.corner()[i], b.corner()[i]);
    Coord hi = std::min(a.corner()[i] + a.extents()[i], b.corner()[i] + b.extents()[i]);
    corner[i] = lo;
    extents[i] = std::max<Coord>(0, hi - lo);
  }
  return Box(std::move(corner), std::move(extents));
}

Sublattice::Sublattice(int dimension, Coord modulus) : dimension_(dimension), modulus_(modulus) {
  if (dimension < 1) throw InvalidArgument("dimension must be positive");
  if (modulus < 1) throw InvalidArgument("modulus must be positive");
}

bool Sublattice::contains(const Point& g) const {
  if (static_cast<int>(g.size()) != dimension_) throw InvalidArgument("dimension mismatch");
  return std::all_of(g.begin(), g.end(), [&](Coord c) { return floor_mod(c, modulus_) == 0; });
}

Point Sublattice::reduce(const Point& g) const {
  if (static_cast<int>(g.size()) != dimension_) throw InvalidArgument("dimension mismatch");
  Point r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = floor_mod(g[i], modulus_);
  return r;
}

std::uint64_t index(const Sublattice& f) {
  std::uint64_t result = 1;
  const auto m = static_cast<std::uint64_t>(f.modulus());
  for (int i = 0; i < f.dimension(); ++i) {
    if (result > std::numeric_limits<std::uint64_t>::max() / m) {
      throw InvalidArgument("sublattice index overflows 64 bits");
    }
    result *= m;
  }
  return result;
}

bool congruent(const Point& g1, const Point& g2, const Sublattice& f) {
  if (g1.size() != g2.size() || static_cast<int>(g1.size()) != f.dimension()) {
    throw InvalidArgument("dimension mismatch in congruence test");
  }
  for (std::size_t i = 0; i < g1.size(); ++i) {
    if (floor_mod(g1[i] - g2[i], f.modulus()) != 0) return false;
  }
  return true;
}

std::vector<Point> residues(const Sublattice& f) {
  std::vector<Point> out;
  out.reserve(index(f));
  for_each_point(Box::cube(f.dimension(), f.modulus()), [&](const Point& p) { out.push_back(p); });
  return out;
}

std::size_t residue_index(const Point& g, const Sublattice& f) {
  std::size_t idx = 0;
  const Coord m = f.modulus();
  for (Coord c : g) idx = idx * static_cast<std::size_t>(m) + static_cast<std::size_t>(floor_mod(c, m));
  return idx;
}

Sublattice intersect(const Sublattice& a, const Sublattice& b) {
  if (a.dimension() != b.dimension()) throw InvalidArgument("dimension mismatch");
  return Sublattice(a.dimension(), std::lcm(a.modulus(), b.modulus()));
}

SubgroupSchedule::SubgroupSchedule(std::vector<Coord> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw InvalidArgument("schedule must be non-empty");
  for (std::size_t i = 0; i < moduli_.size(); ++i) {
    if (moduli_[i] < 1) throw InvalidArgument("moduli must be positive");
    if (i > 0 && moduli_[i] <= moduli_[i - 1]) {
      throw InvalidArgument("moduli must be strictly increasing");
    }
  }
}

SubgroupSchedule SubgroupSchedule::factorial(int count) {
  if (count < 1) throw InvalidArgument("schedule length must be positive");
  std::vector<Coord> m;
  Coord f = 1;
  for (int k = 1; k <= count; ++k) {
    if (f > std::numeric_limits<Coord>::max() / k) throw InvalidArgument("k! overflows 64 bits");
    f *= k;
    m.push_back(f);
  }
  return SubgroupSchedule(std::move(m));
}

bool schedule_cofinal(const SubgroupSchedule& schedule, Coord bound) {
  for (Coord m = 1; m <= bound; ++m) {
    bool hit = std::any_of(schedule.moduli().begin(), schedule.moduli().end(),
                           [m](Coord mk) { return mk % m == 0; });
    if (!hit) return false;
  }
  return true;
}

}  // namespace subshift
