#include <gtest/gtest.h>

#include <random>

#include <subshift/error.hpp>
#include <subshift/sparse.hpp>

#include "support/reference.hpp"

using namespace subshift;
using subshift::testing::squares;

namespace {

SparseSet evens(Coord from, Coord to) { return polynomial_orbit({{0, 2}}, from / 2, (to + 1) / 2); }

// every corner, every side on the same ladder, counted point by point
Rational naive_density_1d(const SparseSet& p, Coord lo, Coord extent, Coord min_side) {
  std::vector<Coord> sides;
  for (Coord s = 1; s <= extent; s *= 2) {
    if (s >= min_side) sides.push_back(s);
  }
  if (sides.empty() || sides.back() != extent) sides.push_back(extent);
  Rational best = 0;
  for (Coord s : sides) {
    for (Coord c = lo; c + s <= lo + extent; ++c) {
      Coord n = 0;
      for (Coord x = c; x < c + s; ++x) n += p.contains({x}) ? 1 : 0;
      best = std::max(best, Rational(n, s));
    }
  }
  return best;
}

}  // namespace

TEST(PolynomialOrbit, Examples) {
  EXPECT_EQ(squares(0, 4).points(), (std::vector<Point>{{0}, {1}, {4}, {9}}));
  EXPECT_EQ(polynomial_orbit({{0, 1}, {0, 0, 1}}, 0, 3).points(),
            (std::vector<Point>{{0, 0}, {1, 1}, {2, 4}}));
  EXPECT_EQ(polynomial_orbit({{7}, {-3}}, -5, 5).points(), (std::vector<Point>{{7, -3}}));
  // n^2 over [-3, 4) repeats values
  EXPECT_EQ(squares(-3, 4).size(), 4u);
  EXPECT_THROW(polynomial_orbit({{}}, 0, 3), InvalidArgument);
  EXPECT_THROW(polynomial_orbit({{0, 0, 0, 0, 0, 1}}, 0, 10000), InvalidArgument);
}

TEST(SparseSet, SetOperations) {
  const SparseSet a(1, {{5}, {1}, {5}, {3}});
  EXPECT_EQ(a.points(), (std::vector<Point>{{1}, {3}, {5}}));
  EXPECT_TRUE(a.contains({3}));
  EXPECT_FALSE(a.contains({4}));
  EXPECT_EQ(a.count_in(Box::cube(Point{2}, 4)), 2u);
  EXPECT_EQ(a.restricted(Box::cube(Point{0}, 2)).points(), (std::vector<Point>{{1}}));
  const SparseSet b(1, {{2}, {3}});
  EXPECT_FALSE(a.disjoint(b));
  EXPECT_TRUE(a.disjoint(SparseSet(1, {{0}, {4}})));
  EXPECT_EQ(a.unite(b).size(), 4u);
  EXPECT_THROW(SparseSet(2, {{1}}), InvalidArgument);
}

TEST(BanachDensity, Examples) {
  EXPECT_EQ(banach_density(evens(0, 100), Box::cube(1, 100)), make_rational(1, 2));
  EXPECT_EQ(banach_density(squares(0, 100), Box::cube(1, 10000), {1, 10000}), make_rational(1, 100));
  EXPECT_EQ(banach_density(SparseSet(1, {}), Box::cube(1, 50)), 0);
  EXPECT_EQ(banach_density(SparseSet(2, {{1, 1}}), Box::cube(2, 2), {1, 1}), 1);
  EXPECT_THROW(banach_density(SparseSet(1, {}), Box::cube(1, 0)), InvalidArgument);
}

TEST(BanachDensity, MatchesNaiveScan) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Point> pts;
    const Coord lo = static_cast<Coord>(rng() % 20) - 10;
    const Coord extent = 5 + static_cast<Coord>(rng() % 80);
    for (Coord x = lo - 5; x < lo + extent + 5; ++x) {
      if (rng() % 5 == 0) pts.push_back({x});
    }
    const SparseSet p(1, pts);
    const Coord min_side = 1 + static_cast<Coord>(rng() % 10);
    ASSERT_EQ(banach_density(p, Box::cube(Point{lo}, extent), {1, min_side}),
              naive_density_1d(p, lo, extent, min_side))
        << "trial " << trial;
  }
}

TEST(BanachDensity, MonotoneInSetAntitoneInCutoff) {
  std::mt19937_64 rng(23);
  const Box window = Box::cube(Point{0, 0}, 40);
  std::vector<Point> pts;
  Rational last = 0;
  for (int round = 0; round < 10; ++round) {
    for (int i = 0; i < 15; ++i) pts.push_back({static_cast<Coord>(rng() % 40), static_cast<Coord>(rng() % 40)});
    const Rational v = banach_density(SparseSet(2, pts), window, {2, 4});
    EXPECT_GE(v, last);
    last = v;
  }
  const SparseSet p(2, pts);
  Rational prev = 2;
  for (Coord cut : {1, 2, 4, 8, 16, 32, 40}) {
    const Rational v = banach_density(p, window, {1, cut});
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(BanachDensity, SquaresThinOutOverDoublings) {
  Rational last = 2;
  for (Coord n = 1000; n <= 16000; n *= 2) {
    const Rational v = banach_density(squares(0, 200), Box::cube(1, n));
    EXPECT_LT(v, last) << "side " << n;
    last = v;
  }
  // a degree-2 coordinate in the plane
  Rational last2 = 2;
  for (Coord n = 32; n <= 256; n *= 2) {
    const Rational v = banach_density(polynomial_orbit({{0, 1}, {0, 0, 1}}, 0, 20), Box::cube(2, n));
    EXPECT_LT(v, last2) << "side " << n;
    last2 = v;
  }
}

TEST(PlacementDensity, CountsWorstPlacement) {
  const SparseSet p(1, {{0}, {1}, {4}, {9}});
  const std::vector<Point> cells{{0}, {1}, {3}};
  // cells + 0 meets {0, 1}; cells + 1 meets {1, 4}; cells + 8 meets {9}
  EXPECT_EQ(placement_density(p, cells, Box::cube(Point{0}, 9)), make_rational(2, 3));
  EXPECT_EQ(placement_density(p, cells, Box::cube(Point{10}, 5)), 0);
}

TEST(ParseSparseSet, LinesAndJson) {
  EXPECT_EQ(parse_sparse_set("# squares\n0\n1\n\n4\n").points(), (std::vector<Point>{{0}, {1}, {4}}));
  EXPECT_EQ(parse_sparse_set("1 2\n-3 4\n").points(), (std::vector<Point>{{-3, 4}, {1, 2}}));
  const SparseSet j = parse_sparse_set(R"({"polynomial": [[0, 0, 1]], "range": [0, 5]})");
  EXPECT_EQ(j.points(), squares(0, 5).points());
  EXPECT_THROW(parse_sparse_set("1 2\n3\n"), FormatError);
  EXPECT_THROW(parse_sparse_set("1 x\n"), FormatError);
  EXPECT_THROW(parse_sparse_set(R"({"polynomial": [[1]]})"), FormatError);
}
