#include "subshift/demos.hpp"

#include <algorithm>

#include "subshift/error.hpp"

namespace subshift {

Box centered_cube(int d, Coord n) {
  if (n < 1) throw InvalidArgument("radius must be positive");
  return Box::cube(Point(static_cast<std::size_t>(d), -n + 1), 2 * n - 1);
}

Rational sparse_average(const Pattern& x, const SparseSet& p, Coord n) {
  const Box box = centered_cube(x.dimension(), n);
  if (!x.support().contains(box)) throw InvalidArgument("(-n, n)^d is not inside the pattern");
  const auto pts = p.points_in(box);
  if (pts.empty()) throw EmptyIntersection("P has no points in (-" + std::to_string(n) + ", " +
                                           std::to_string(n) + ")^d");
  std::uint64_t ones = 0;
  for (const Point& h : pts) ones += x.at(h) == 1 ? 1 : 0;
  return Rational(BigInt(ones), BigInt(pts.size()));
}

namespace {

const Stage& last_stage(const std::vector<Stage>& stages) {
  if (stages.empty()) throw InvalidArgument("no stages");
  return *std::max_element(stages.begin(), stages.end(),
                           [](const Stage& a, const Stage& b) { return a.k < b.k; });
}

}  // namespace

DivergenceReport demo_divergence(const std::vector<Stage>& stages, const SparseSet& p, Coord k0,
                                 std::vector<Coord> radii, std::optional<std::size_t> template_index) {
  const Stage& top = last_stage(stages);
  if (top.k < 2) throw InvalidArgument("the demo needs at least two stages");
  if (k0 < 1) throw InvalidArgument("k0 must be positive");
  const int d = top.d;
  const StepGeometry g = step_geometry(top, top.k - 1);
  const Coord side = 2 * k0 - 1;
  if (side > g.n_k) {
    throw InvalidArgument("(-k0, k0)^d does not fit in a level-" + std::to_string(top.k - 1) + " block");
  }
  // block corner so that (-k0, k0) sits in its middle; g0 puts block L/2 there
  const Coord corner = -k0 + 1 - (g.n_k - side) / 2;
  const Coord g0 = corner - g.block_origin(g.L / 2);
  DivergenceReport rep;
  rep.preserved_radius = k0;
  rep.base = Point(static_cast<std::size_t>(d), g0);
  const Box placed = Box::cube(rep.base, top.n);
  const Box preserve = centered_cube(d, k0);

  EmbedOptions opts;
  opts.template_index = template_index;
  const auto r0 = embed_except(stages, top.k, preserve, Assignment::constant(p, placed, 0), p, opts);
  const auto r1 = embed_except(stages, top.k, preserve, Assignment::constant(p, placed, 1), p, opts);
  rep.template_index = r0.embedded.template_index;
  rep.radius0 = r0.radius;
  rep.radius1 = r1.radius;
  rep.y0 = r0.embedded.placed();
  rep.y1 = r1.embedded.placed();
  const Pattern x = translate(top.patterns[rep.template_index], rep.base);
  rep.shared_window = true;
  for_each_point(preserve, [&](const Point& h) {
    if (rep.y0.at(h) != rep.y1.at(h) || rep.y0.at(h) != x.at(h)) rep.shared_window = false;
  });

  const Coord largest = std::min(g0 + top.n, 1 - g0);
  if (radii.empty()) {
    for (Coord n = k0; n < largest; n *= 2) radii.push_back(n);
    radii.push_back(largest);
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  for (Coord n : radii) {
    if (n > largest) throw InvalidArgument("radius " + std::to_string(n) + " exceeds the built window");
    rep.series0.values.emplace_back(n, sparse_average(rep.y0, p, n));
    rep.series1.values.emplace_back(n, sparse_average(rep.y1, p, n));
  }
  return rep;
}

EscapeReport demo_escape(const std::vector<Stage>& stages, const SparseSet& p, const SparseSet& g,
                         const Box& window, const std::map<Point, Symbol>& g_bits,
                         std::optional<std::size_t> template_index) {
  const Stage& top = last_stage(stages);
  const int d = top.d;
  if (p.dimension() != d || g.dimension() != d || window.dimension() != d) {
    throw InvalidArgument("dimension mismatch");
  }
  const Point zero(static_cast<std::size_t>(d), 0);
  if (!p.disjoint(g)) throw InvalidArgument("G must be disjoint from P");
  if (p.contains(zero) || g.contains(zero)) throw InvalidArgument("0 must lie outside P and G");
  EscapeReport rep;
  rep.window = window;
  rep.base = Point(static_cast<std::size_t>(d), -(top.n / 2));
  const Box placed = Box::cube(rep.base, top.n);
  if (!placed.contains(window)) throw InvalidArgument("window does not fit in the centred copy of A_K");

  const SparseSet all = p.unite(g).unite(SparseSet(d, {zero}));
  auto assignment = [&](const std::map<Point, Symbol>& bits) {
    std::map<Point, Symbol> values;
    for (const Point& h : all.points_in(placed)) {
      Symbol v = 0;
      if (p.contains(h)) {
        v = 1;
      } else if (auto it = bits.find(h); it != bits.end()) {
        v = it->second;
      }
      values.emplace(h, v);
    }
    return Assignment(rep.base, std::move(values));
  };

  EmbedOptions opts;
  opts.template_index = template_index;
  if (!opts.template_index) opts.template_index = embed(stages, top.k, assignment(g_bits), all).template_index;
  const EmbedResult r = embed(stages, top.k, assignment(g_bits), all, opts);
  const Pattern x = r.placed();
  rep.x = restrict(x, window);
  rep.verified = true;
  for (const Point& h : p.points_in(window)) {
    EscapeCheck c{h, x.at(h), x.at(zero)};
    if (c.at_g == c.at_origin) rep.verified = false;
    rep.checks.push_back(std::move(c));
  }

  const auto in_window = g.points_in(window);
  if (!in_window.empty()) {
    const Point flip = in_window.front();
    std::map<Point, Symbol> other = g_bits;
    const auto it = g_bits.find(flip);
    other[flip] = (it == g_bits.end() || it->second == 0) ? 1 : 0;
    const Pattern x2 = restrict(embed(stages, top.k, assignment(other), all, opts).placed(), window);
    rep.flipped = flip;
    for_each_point(window, [&](const Point& h) {
      if (rep.x.at(h) != x2.at(h)) rep.differences.push_back(h);
    });
    rep.witness_exact = rep.differences.size() == 1 && rep.differences.front() == flip;
  }
  return rep;
}

}  // namespace subshift
