#include <gtest/gtest.h>

#include <subshift/demos.hpp>
#include <subshift/error.hpp>

#include "support/reference.hpp"

using namespace subshift;
using namespace subshift::testing;

namespace {

SparseSet odd_powers_of_two(int count) {
  std::vector<Point> g;
  for (int i = 0; i < count; ++i) g.push_back({Coord(1) << (2 * i + 1)});
  return SparseSet(1, g);
}

}  // namespace

TEST(SparseAverage, Examples) {
  const SparseSet p = squares(0, 10);
  const Box box = centered_cube(1, 100);
  EXPECT_EQ(box, Box::cube(Point{-99}, 199));
  Pattern x = Pattern::filled(box, 2, 0);
  EXPECT_EQ(sparse_average(x, p, 100), 0);
  for (Coord h : {0, 1, 4}) x.set({h}, 1);
  EXPECT_EQ(sparse_average(x, p, 100), make_rational(3, 10));
  EXPECT_EQ(sparse_average(Pattern::filled(box, 2, 1), p, 100), 1);
  // (-3, 3) holds 0 and 1 only
  EXPECT_EQ(sparse_average(x, p, 3), 1);
  EXPECT_THROW(sparse_average(x, squares(20, 30), 100), EmptyIntersection);
  EXPECT_THROW(sparse_average(x, p, 101), InvalidArgument);
}

TEST(Divergence, SeriesSeparateAndShareTheCentre) {
  const auto& st = variant_stages();
  const SparseSet p = squares(0, 1000);
  const DivergenceReport r = demo_divergence(st, p, 8);
  EXPECT_TRUE(r.shared_window);
  EXPECT_EQ(r.preserved_radius, 8);
  ASSERT_FALSE(r.series0.values.empty());
  ASSERT_EQ(r.series0.values.size(), r.series1.values.size());
  EXPECT_LE(r.series0.values.back().second, make_rational(1, 20));
  EXPECT_GE(r.series1.values.back().second, make_rational(19, 20));

  // the preserved cells are the only ones that can disagree with the target value
  const auto near0 = static_cast<std::int64_t>(p.count_in(centered_cube(1, r.radius0)));
  const auto near1 = static_cast<std::int64_t>(p.count_in(centered_cube(1, r.radius1)));
  Coord last = 0;
  for (std::size_t i = 0; i < r.series0.values.size(); ++i) {
    const auto& [n, v0] = r.series0.values[i];
    const auto& [n1, v1] = r.series1.values[i];
    EXPECT_EQ(n, n1);
    EXPECT_GT(n, last);
    last = n;
    const auto total = static_cast<std::int64_t>(p.count_in(centered_cube(1, n)));
    EXPECT_LE(v0, Rational(std::min(near0, total), total));
    EXPECT_LE(1 - v1, Rational(std::min(near1, total), total));
  }
  // y0 and y1 agree cell by cell on (-k0, k0)
  for (Coord h = -7; h <= 7; ++h) EXPECT_EQ(r.y0.at({h}), r.y1.at({h}));
}

TEST(Divergence, ExplicitRadiiAndLimits) {
  const auto& st = variant_stages();
  const SparseSet p = squares(0, 1000);
  const DivergenceReport r = demo_divergence(st, p, 8, {100, 10, 1000});
  ASSERT_EQ(r.series0.values.size(), 3u);
  EXPECT_EQ(r.series0.values[0].first, 10);
  EXPECT_THROW(demo_divergence(st, p, 8, {10000000}), InvalidArgument);
  EXPECT_THROW(demo_divergence(st, p, 100), InvalidArgument);
}

TEST(Escape, VerifiedWithOneCellWitness) {
  const auto& st = variant_stages();
  const EscapeReport r = demo_escape(st, squares(1, 1000), odd_powers_of_two(9), Box::cube(Point{-1000}, 2001));
  EXPECT_TRUE(r.verified);
  EXPECT_EQ(r.checks.size(), 31u);
  for (const auto& c : r.checks) {
    EXPECT_EQ(c.at_g, 1);
    EXPECT_EQ(c.at_origin, 0);
  }
  ASSERT_TRUE(r.flipped.has_value());
  EXPECT_EQ(*r.flipped, (Point{2}));
  EXPECT_TRUE(r.witness_exact);
  EXPECT_EQ(r.differences, (std::vector<Point>{{2}}));
}

TEST(Escape, EmptyIntersectionIsTriviallyVerified) {
  const auto& st = variant_stages();
  const EscapeReport r = demo_escape(st, squares(100, 200), SparseSet(1, {}), Box::cube(Point{-50}, 101));
  EXPECT_TRUE(r.verified);
  EXPECT_TRUE(r.checks.empty());
  EXPECT_FALSE(r.flipped.has_value());
}

TEST(Escape, RejectsOverlapsAndOrigin) {
  const auto& st = variant_stages();
  EXPECT_THROW(demo_escape(st, squares(1, 10), SparseSet(1, {{4}}), Box::cube(Point{-10}, 21)),
               InvalidArgument);
  EXPECT_THROW(demo_escape(st, squares(0, 10), SparseSet(1, {{2}}), Box::cube(Point{-10}, 21)),
               InvalidArgument);
  EXPECT_THROW(demo_escape(st, squares(1, 10), SparseSet(1, {{2}}), Box::cube(Point{-10}, 500000)),
               InvalidArgument);
}
