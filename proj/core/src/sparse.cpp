#include "subshift/sparse.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "subshift/error.hpp"

namespace subshift {

SparseSet::SparseSet(int dimension, std::vector<Point> points)
    : dimension_(dimension), points_(std::move(points)) {
  if (dimension < 1) throw InvalidArgument("dimension must be positive");
  for (const Point& p : points_) {
    if (static_cast<int>(p.size()) != dimension) throw InvalidArgument("point has wrong dimension");
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

bool SparseSet::contains(const Point& p) const {
  return std::binary_search(points_.begin(), points_.end(), p);
}

std::vector<Point> SparseSet::points_in(const Box& box) const {
  if (box.dimension() != dimension_) throw InvalidArgument("box has wrong dimension");
  std::vector<Point> out;
  if (box.empty()) return out;
  // lexicographic order bounds the first coordinate
  Point lo(static_cast<std::size_t>(dimension_), std::numeric_limits<Coord>::min());
  lo[0] = box.corner()[0];
  Point hi(static_cast<std::size_t>(dimension_), std::numeric_limits<Coord>::min());
  hi[0] = box.corner()[0] + box.extents()[0];
  auto first = std::lower_bound(points_.begin(), points_.end(), lo);
  auto last = std::lower_bound(first, points_.end(), hi);
  for (auto it = first; it != last; ++it) {
    if (box.contains(*it)) out.push_back(*it);
  }
  return out;
}

std::size_t SparseSet::count_in(const Box& box) const { return points_in(box).size(); }

SparseSet SparseSet::restricted(const Box& box) const { return SparseSet(dimension_, points_in(box)); }

SparseSet SparseSet::unite(const SparseSet& other) const {
  if (other.dimension_ != dimension_) throw InvalidArgument("dimension mismatch");
  std::vector<Point> all = points_;
  all.insert(all.end(), other.points_.begin(), other.points_.end());
  return SparseSet(dimension_, std::move(all));
}

bool SparseSet::disjoint(const SparseSet& other) const {
  auto a = points_.begin();
  auto b = other.points_.begin();
  while (a != points_.end() && b != other.points_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      return false;
    }
  }
  return true;
}

SparseSet polynomial_orbit(const std::vector<std::vector<Coord>>& coeffs, Coord a, Coord b) {
  if (coeffs.empty()) throw InvalidArgument("need at least one polynomial");
  for (const auto& c : coeffs) {
    if (c.empty()) throw InvalidArgument("empty coefficient list");
  }
  std::vector<Point> pts;
  for (Coord t = a; t < b; ++t) {
    Point p;
    for (const auto& c : coeffs) {
      BigInt v = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
      if (v > std::numeric_limits<Coord>::max() || v < std::numeric_limits<Coord>::min()) {
        throw InvalidArgument("polynomial value overflows 64 bits");
      }
      p.push_back(static_cast<Coord>(v));
    }
    pts.push_back(std::move(p));
  }
  return SparseSet(static_cast<int>(coeffs.size()), std::move(pts));
}

namespace {

std::vector<Coord> ladder(Coord extent, Coord min_side) {
  std::vector<Coord> sides;
  for (Coord s = 1; s <= extent; s *= 2) {
    if (s >= min_side) sides.push_back(s);
    if (s > extent / 2) break;
  }
  if (sides.empty() || sides.back() != extent) sides.push_back(extent);
  return sides;
}

}  // namespace

Rational banach_density(const SparseSet& p, const Box& window, const DensityScan& scan) {
  if (window.empty()) throw InvalidArgument("empty density window");
  if (window.dimension() != p.dimension()) throw InvalidArgument("dimension mismatch");
  if (scan.grid < 1) throw InvalidArgument("grid must be positive");
  const int d = window.dimension();
  Coord min_side = scan.min_side;
  if (min_side <= 0) {
    min_side = std::max<Coord>(1, *std::min_element(window.extents().begin(), window.extents().end()) / 4);
  }
  // prefix sums over the box [0, e_1] x ... x [0, e_d]
  std::vector<Coord> pe(window.extents());
  for (auto& e : pe) ++e;
  const Box pbox(Point(static_cast<std::size_t>(d), 0), pe);
  const auto ps = pbox.strides();
  std::vector<std::uint64_t> sum(pbox.cell_count(), 0);
  for (const Point& q : p.points_in(window)) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < q.size(); ++i) o += static_cast<std::size_t>(q[i] - window.corner()[i] + 1) * ps[i];
    ++sum[o];
  }
  for (int axis = 0; axis < d; ++axis) {
    const auto a = static_cast<std::size_t>(axis);
    for (std::size_t o = 0; o < sum.size(); ++o) {
      if ((o / ps[a]) % static_cast<std::size_t>(pe[a]) != 0) sum[o] += sum[o - ps[a]];
    }
  }
  auto rect_count = [&](const std::vector<Coord>& lo, const std::vector<Coord>& side) {
    std::int64_t total = 0;
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      std::size_t o = 0;
      int sign = 1;
      for (int i = 0; i < d; ++i) {
        const auto a = static_cast<std::size_t>(i);
        Coord c = lo[a];
        if (mask & (1u << i)) {
          sign = -sign;
        } else {
          c += side[a];
        }
        o += static_cast<std::size_t>(c) * ps[a];
      }
      total += sign * static_cast<std::int64_t>(sum[o]);
    }
    return total;
  };

  std::vector<std::vector<Coord>> sides;
  for (int i = 0; i < d; ++i) sides.push_back(ladder(window.extent(i), std::min(min_side, window.extent(i))));
  Rational best = 0;
  std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
  while (true) {
    std::vector<Coord> side(static_cast<std::size_t>(d));
    std::vector<Coord> span(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < side.size(); ++i) {
      side[i] = sides[i][pick[i]];
      span[i] = (window.extents()[i] - side[i]) / scan.grid + 1;
    }
    std::int64_t best_count = 0;
    for_each_point(Box(Point(static_cast<std::size_t>(d), 0), span), [&](const Point& c) {
      std::vector<Coord> lo(c.begin(), c.end());
      for (auto& x : lo) x *= scan.grid;
      best_count = std::max(best_count, rect_count(lo, side));
    });
    BigInt area = 1;
    for (Coord s : side) area *= s;
    best = std::max(best, Rational(BigInt(best_count), area));
    std::size_t axis = pick.size();
    while (axis-- > 0) {
      if (++pick[axis] < sides[axis].size()) break;
      pick[axis] = 0;
    }
    if (axis == static_cast<std::size_t>(-1)) break;
  }
  return best;
}

Rational placement_density(const SparseSet& p, const std::vector<Point>& cells,
                           const Box& placements) {
  if (cells.empty()) throw InvalidArgument("empty cell set");
  std::vector<Point> sorted(cells);
  std::sort(sorted.begin(), sorted.end());
  // bounding box of the cells
  Point lo = sorted.front(), hi = sorted.front();
  for (const Point& c : sorted) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i]);
    }
  }
  std::vector<Coord> ext(lo.size());
  for (std::size_t i = 0; i < ext.size(); ++i) ext[i] = hi[i] - lo[i] + 1;
  std::size_t best = 0;
  for_each_point(placements, [&](const Point& g) {
    Point corner(lo);
    for (std::size_t i = 0; i < g.size(); ++i) corner[i] += g[i];
    std::size_t count = 0;
    Point rel(g.size());
    for (const Point& q : p.points_in(Box(corner, ext))) {
      for (std::size_t i = 0; i < g.size(); ++i) rel[i] = q[i] - g[i];
      if (std::binary_search(sorted.begin(), sorted.end(), rel)) ++count;
    }
    best = std::max(best, count);
  });
  return Rational(BigInt(best), BigInt(sorted.size()));
}

SparseSet parse_sparse_set(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
      auto coeffs = j.at("polynomial").get<std::vector<std::vector<Coord>>>();
      auto range = j.at("range").get<std::vector<Coord>>();
      if (range.size() != 2) throw FormatError("range must be [a, b]");
      try {
        return polynomial_orbit(coeffs, range[0], range[1]);
      } catch (const InvalidArgument& e) {
        throw FormatError(e.what());
      }
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("bad sparse-set JSON: ") + e.what());
    }
  }
  std::istringstream is{std::string(text)};
  std::string line;
  std::vector<Point> pts;
  int d = 0;
  while (std::getline(is, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    Point p;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        p.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw FormatError("bad integer '" + tok + "'");
      } catch (const std::logic_error&) {
        throw FormatError("bad integer '" + tok + "'");
      }
    }
    if (p.empty()) continue;
    if (d == 0) d = static_cast<int>(p.size());
    if (static_cast<int>(p.size()) != d) throw FormatError("points have different dimensions");
    pts.push_back(std::move(p));
  }
  if (d == 0) throw FormatError("sparse-set file has no points");
  return SparseSet(d, std::move(pts));
}

}  // namespace subshift
