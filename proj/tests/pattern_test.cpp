#include <gtest/gtest.h>

#include <random>

#include <subshift/error.hpp>
#include <subshift/pattern.hpp>

#include "support/oracles.hpp"

using namespace subshift;
using subshift::testing::naive_occurrences;
using subshift::testing::random_pattern;

namespace {

Pattern line(std::string_view digits) {
  return Pattern::from_digits(digits, Box::cube(1, static_cast<Coord>(digits.size())));
}

Pattern grid3() { return Pattern::from_digits("101010101", Box::cube(2, 3)); }

Box random_box(std::mt19937_64& rng, int d, Coord max_side, Coord min_side = 1) {
  Point corner(static_cast<std::size_t>(d));
  std::vector<Coord> ext(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    corner[static_cast<std::size_t>(i)] = static_cast<Coord>(rng() % 7) - 3;
    ext[static_cast<std::size_t>(i)] = min_side + static_cast<Coord>(rng() % static_cast<std::uint64_t>(max_side - min_side + 1));
  }
  return Box(corner, ext);
}

}  // namespace

TEST(Occurrences, SmallExamples) {
  EXPECT_EQ(occurrences(line("11"), line("0110")), (std::vector<Point>{{1}}));
  EXPECT_EQ(occurrences(line("1"), line("0110")), (std::vector<Point>{{1}, {2}}));
  EXPECT_TRUE(occurrences(line("111"), line("0110")).empty());
  // the pattern does not fit
  EXPECT_TRUE(occurrences(line("00000"), line("0000")).empty());
}

TEST(Frequency, SmallExamples) {
  EXPECT_EQ(frequency(line("11"), line("0110")), make_rational(1, 4));
  const Pattern one = Pattern::from_digits("1", Box::cube(2, 1));
  EXPECT_EQ(frequency(one, grid3()), make_rational(5, 9));
  EXPECT_EQ(frequency(one, grid3(), OccurrenceQuery({0, 0}, Sublattice(2, 2))), make_rational(4, 9));
  EXPECT_THROW(frequency(one, Pattern(Box::cube(2, 0), 2, {})), InvalidArgument);
}

TEST(Occurrences, SupportCornerIsTranslated) {
  const Pattern b1 = translate(line("1"), {5});
  // g moves the corner 5 onto the hit at 2
  EXPECT_EQ(occurrences(b1, line("001")), (std::vector<Point>{{-3}}));
}

TEST(Occurrences, ResidueDecompositionIsExact) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 2);
    const std::uint32_t c = 2 + static_cast<std::uint32_t>(rng() % 2);
    const Box a2 = random_box(rng, d, 12);
    const Box a1 = random_box(rng, d, 3);
    const Pattern b2 = random_pattern(rng, a2, c);
    const Pattern b1 = random_pattern(rng, a1, c);
    const Sublattice f(d, 1 + static_cast<Coord>(rng() % 4));
    Rational sum = 0;
    for (const Point& r : residues(f)) sum += frequency(b1, b2, OccurrenceQuery(r, f));
    ASSERT_EQ(frequency(b1, b2), sum) << "trial " << trial;
  }
}

TEST(Occurrences, MatchesNaiveScan) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 2);
    const Box a2 = d == 1 ? random_box(rng, 1, 10000, 50) : random_box(rng, 2, 100, 5);
    const Box a1 = random_box(rng, d, d == 1 ? 6 : 3);
    const std::uint32_t c = 2;
    const Pattern b2 = random_pattern(rng, a2, c);
    const Pattern b1 = random_pattern(rng, a1, c);
    if (trial % 2 == 0) {
      ASSERT_EQ(occurrences(b1, b2), naive_occurrences(b1, b2)) << "trial " << trial;
    } else {
      Point center(static_cast<std::size_t>(d));
      for (auto& x : center) x = static_cast<Coord>(rng() % 9) - 4;
      const Coord m = 1 + static_cast<Coord>(rng() % 4);
      ASSERT_EQ(occurrences(b1, b2, OccurrenceQuery(center, Sublattice(d, m))),
                naive_occurrences(b1, b2, std::make_pair(center, m)))
          << "trial " << trial;
    }
  }
}

TEST(Occurrences, ThreadCountDoesNotMatter) {
  std::mt19937_64 rng(3);
  const Pattern b2 = random_pattern(rng, Box::cube(2, 60), 2);
  const Pattern b1 = random_pattern(rng, Box::cube(2, 2), 2);
  const auto one = occurrences(b1, b2, {}, 1);
  for (unsigned t : {2u, 3u, 8u, 100u}) EXPECT_EQ(occurrences(b1, b2, {}, t), one);
  EXPECT_EQ(count_occurrences(b1, b2), one.size());
}

TEST(Flatten, UnitBlocksAreVerbatim) {
  PatternSet c1(Box::cube(1, 1), 2);
  c1.insert(line("0"));
  c1.insert(line("1"));
  const Pattern w = line("0110100");
  EXPECT_EQ(flatten(w, c1), w);
}

TEST(Flatten, ConcatenatesBlocks) {
  PatternSet blocks(Box::cube(1, 2), 2);
  blocks.insert(line("01"));
  blocks.insert(line("10"));
  EXPECT_EQ(flatten(line("01"), blocks).digits(), "0110");
  EXPECT_THROW(flatten(Pattern::from_digits("012", Box::cube(1, 3), 3), blocks), InvalidArgument);
}

TEST(Flatten, TransportsAlignedOccurrences) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + trial % 2;
    const Coord n = 2 + static_cast<Coord>(rng() % 3);
    PatternSet blocks(Box::cube(d, n), 2);
    while (blocks.size() < 3) blocks.insert(random_pattern(rng, Box::cube(d, n), 2));
    const Pattern w = random_pattern(rng, Box::cube(d, d == 1 ? 12 : 5), 3);
    const Pattern big = flatten(w, blocks);
    for (std::uint32_t c = 0; c < 3; ++c) {
      const Pattern letter(Box::cube(d, 1), 3, {static_cast<Symbol>(c)});
      const auto small = occurrences(letter, w);
      const auto aligned = occurrences(blocks[c], big, OccurrenceQuery(Point(static_cast<std::size_t>(d), 0), Sublattice(d, n)));
      std::vector<Point> scaled;
      for (Point g : small) {
        for (auto& x : g) x *= n;
        scaled.push_back(g);
      }
      // block-aligned hits are exactly the scaled letter hits unless two blocks coincide
      ASSERT_EQ(aligned, scaled);
    }
  }
}

TEST(PatternText, RoundTrip) {
  std::mt19937_64 rng(9);
  for (int d = 1; d <= 3; ++d) {
    const Pattern p = random_pattern(rng, Box::cube(Point(static_cast<std::size_t>(d), -2), 4), 3);
    EXPECT_EQ(pattern_from_text(to_text(p)), p);
  }
  EXPECT_THROW(pattern_from_text("1 3 2 0\n01\n"), FormatError);
  EXPECT_THROW(pattern_from_text("1 2 2 0\n02\n"), FormatError);
}

TEST(PatternSet, DeduplicatesByContent) {
  PatternSet s(Box::cube(1, 3), 2);
  EXPECT_TRUE(s.insert(line("010")));
  EXPECT_TRUE(s.insert(line("011")));
  EXPECT_FALSE(s.insert(line("010")));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.find(line("011")), std::optional<std::size_t>(1));
  EXPECT_FALSE(s.contains(line("111")));
  EXPECT_THROW(s.insert(line("0101")), InvalidArgument);
}

TEST(Pattern, RestrictAndTranslate) {
  const Pattern p = grid3();
  const Pattern r = restrict(p, Box({1, 1}, {2, 2}));
  EXPECT_EQ(r.digits(), "1001");
  const Pattern t = translate(r, {-1, 4});
  EXPECT_EQ(t.support(), Box({0, 5}, {2, 2}));
  EXPECT_EQ(t.at({0, 5}), 1);
  EXPECT_EQ(t.at({0, 6}), 0);
  EXPECT_THROW(restrict(p, Box({2, 2}, {2, 2})), InvalidArgument);
}

TEST(Frequency, PerturbationBound) {
  std::mt19937_64 rng(13);
  const Pattern one(Box::cube(1, 1), 2, {1});
  for (int trial = 0; trial < 100; ++trial) {
    Pattern b = random_pattern(rng, Box::cube(1, 40 + static_cast<Coord>(rng() % 60)), 2);
    const Rational eps = make_rational(static_cast<std::int64_t>(1 + rng() % 20), 100);
    const auto budget = static_cast<std::uint64_t>(floor(eps * static_cast<std::int64_t>(b.size())));
    const Rational before = frequency(one, b);
    Pattern c = b;
    for (std::uint64_t i = 0; i < budget; ++i) {
      const auto off = static_cast<std::size_t>(rng() % c.size());
      c.set_offset(off, static_cast<Symbol>(1 - c[off]));
    }
    const Rational diff = frequency(one, c) - before;
    ASSERT_LE(abs(diff), eps);
  }
}
