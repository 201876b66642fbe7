#include <gtest/gtest.h>

#include <cmath>

#include <subshift/analysis.hpp>
#include <subshift/error.hpp>

#include "support/oracles.hpp"
#include "support/reference.hpp"

using namespace subshift;
using namespace subshift::testing;

namespace {

double as_double(const Decimal& x) { return x.convert_to<double>(); }

Pattern one_cell(int d) { return Pattern::filled(Box::cube(d, 1), 2, 1); }

Rational binomial_window(unsigned n, const Rational& eps) {
  // words of length n over {0,1} with |ones/n - 1/2| < eps
  BigInt hits = 0;
  for (unsigned c = 0; c <= n; ++c) {
    Rational diff = Rational(BigInt(c), BigInt(n)) - make_rational(1, 2);
    if (diff < 0) diff = -diff;
    if (diff < eps) hits += binomial(n, c);
  }
  return Rational(hits, BigInt(1) << n);
}

}  // namespace

TEST(Entropy, FirstStageIsLogTwo) {
  for (int d = 1; d <= 3; ++d) {
    const EntropyLedger l = entropy_bounds({init_stage(d)});
    ASSERT_EQ(l.entries.size(), 1u);
    EXPECT_NEAR(as_double(l.entries[0].value), std::log(2.0), 1e-15);
    EXPECT_FALSE(l.entries[0].effective_nu.has_value());
  }
}

TEST(Entropy, LosslessGeometryKeepsLogTwo) {
  for (int d = 1; d <= 2; ++d) {
    std::vector<Coord> sides{1};
    std::vector<BigInt> counts{2};
    std::vector<Coord> axis;
    std::vector<Rational> nu;
    for (Coord L : {4, 3, 5}) {
      BigInt blocks = 1;
      for (int i = 0; i < d; ++i) blocks *= L;
      counts.push_back(boost::multiprecision::pow(counts.back(), static_cast<unsigned>(blocks)));
      sides.push_back(sides.back() * L);
      axis.push_back(L);
      nu.push_back(make_rational(1, 10));
    }
    const EntropyLedger l = entropy_bounds(d, sides, counts, axis, nu);
    const Decimal ln2 = boost::multiprecision::log(Decimal(2));
    for (const auto& e : l.entries) {
      EXPECT_LT(as_double(boost::multiprecision::abs(e.value - ln2)), 1e-12) << "k " << e.k;
      if (e.effective_nu) EXPECT_LT(as_double(boost::multiprecision::abs(*e.effective_nu)), 1e-12);
    }
  }
}

TEST(Entropy, ReferenceBuildFromCounts) {
  const EntropyLedger l = entropy_bounds(reference_stages());
  ASSERT_EQ(l.entries.size(), 2u);
  EXPECT_NEAR(as_double(l.entries[1].value), std::log(40.0) / 17.0, 1e-13);
  EXPECT_EQ(l.entries[1].count, 40);
  // the rational bracket encloses the decimal value
  EXPECT_LT(to_double(l.entries[1].lower), as_double(l.entries[1].value) + 1e-15);
  EXPECT_GT(to_double(l.entries[1].upper), as_double(l.entries[1].value) - 1e-15);
  EXPECT_NEAR(as_double(l.entries[1].target), 0.9 * 0.9 * std::log(2.0), 1e-15);
  // 40 = 2^(16 (1 - nu'))
  EXPECT_NEAR(as_double(*l.entries[1].effective_nu), 1.0 - std::log2(40.0) / 16.0, 1e-13);
  EXPECT_THROW(entropy_bounds(std::vector<Stage>{}), InvalidArgument);
}

TEST(Schedule, ReferenceChecks) {
  const auto entries = schedule_check(reference_stages());
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_TRUE(entries[0].vii);
  EXPECT_FALSE(entries[0].viii);
  EXPECT_TRUE(entries[0].exact);
  EXPECT_EQ(entries[0].achieved, 40);
  EXPECT_NEAR(as_double(entries[0].required_log10), 16 * 0.9 * std::log10(2.0), 1e-12);

  std::vector<Stage> zero = reference_stages();
  zero[1].nu_schedule[0] = 0;
  EXPECT_FALSE(schedule_check(zero)[0].vii);
}

TEST(AlphaBeta, Examples) {
  EXPECT_EQ(alpha_beta(init_stage(1), one_cell(1), Sublattice(1, 1)),
            std::make_pair(Rational(0), Rational(1)));

  for (int d = 1; d <= 2; ++d) {
    Stage s = init_stage(d);
    s.n = 5;
    const Pattern w = Pattern::from_digits(d == 1 ? "01101" : "0110100101101001011010010",
                                           Box::cube(d, 5));
    s.patterns = PatternSet(Box::cube(d, 5), 2);
    s.patterns.insert(w);
    const auto [a, b] = alpha_beta(s, w, Sublattice(d, 1));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a, Rational(BigInt(1), boost::multiprecision::pow(BigInt(5), static_cast<unsigned>(d))));
  }
  EXPECT_THROW(alpha_beta(init_stage(1), Pattern::filled(Box::cube(1, 2), 2), Sublattice(1, 1)),
               InvalidArgument);
}

TEST(AlphaBeta, ResidueClassesSplitTheFrequency) {
  const Stage& s = reference_stages()[1];
  const auto [a1, b1] = alpha_beta(s, one_cell(1), Sublattice(1, 1));
  const auto [a2, b2] = alpha_beta(s, one_cell(1), Sublattice(1, 2));
  EXPECT_LE(a1, b1);
  EXPECT_LE(a2, b2);
  // per-class frequencies are at most half the total on 17 cells
  EXPECT_LE(b2, make_rational(9, 17));
}

TEST(GapSeries, SingletonStagesHaveNoGap) {
  std::vector<Stage> st = reference_stages();
  for (Stage& s : st) {
    PatternSet one(s.patterns.support(), 2);
    one.insert(s.patterns[s.patterns.size() - 1]);
    s.patterns = one;
  }
  const GapReport r = gap_series(st, one_cell(1), Sublattice(1, 1));
  for (const auto& e : r.entries) EXPECT_EQ(e.gap, 0);
  EXPECT_FALSE(r.any_flagged());
}

TEST(GapSeries, UnitToleranceNeverFlags) {
  std::vector<Stage> st = reference_stages();
  st[1].d_tolerances[0] = 1;
  const GapReport r = gap_series(st, one_cell(1), Sublattice(1, 1));
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(*r.entries[1].bound, 2);
  EXPECT_FALSE(r.any_flagged());
}

TEST(GapSeries, ReferenceWithinBound) {
  const GapReport r = gap_series(reference_stages(), one_cell(1), Sublattice(1, 1));
  ASSERT_EQ(r.entries.size(), 2u);
  const auto& e = r.entries[1];
  EXPECT_EQ(e.gap, e.beta - e.alpha);
  EXPECT_LE(e.gap, *e.bound + *e.correction);
  EXPECT_FALSE(e.flagged);
  EXPECT_EQ(r.entries[0].gap, 1);
}

TEST(BoundaryCorrection, CountsPlacementsThatLeaveAllBlocks) {
  const Stage& s = reference_stages()[1];
  // only the 15 controlled unit blocks count, so cells 15 and 16 are left over
  EXPECT_EQ(boundary_correction(s, {1}), Rational(17 - 15, 17));
  // a box of two cells never fits a unit block
  EXPECT_EQ(boundary_correction(s, {2}), Rational(16, 17));
}

TEST(Lln, ExhaustivePointMatchesBinomialSum) {
  const Rational oracle = binomial_window(20, make_rational(1, 10));
  EXPECT_EQ(oracle, Rational(520676, 1048576));
  const LlnResult r = lln_fraction(1, 20, make_rational(1, 10), Sublattice(1, 1), 2, LlnMode::Exhaustive);
  ASSERT_TRUE(r.exact.has_value());
  EXPECT_EQ(*r.exact, oracle);
  EXPECT_EQ(r.words, 1048576u);
}

TEST(Lln, EdgeCases) {
  EXPECT_EQ(*lln_fraction(1, 10, Rational(1), Sublattice(1, 1), 2, LlnMode::Exhaustive).exact, 1);
  EXPECT_EQ(*lln_fraction(1, 9, Rational(0), Sublattice(1, 1), 2, LlnMode::Exhaustive).exact, 0);
  EXPECT_EQ(*lln_fraction(2, 3, Rational(0), Sublattice(2, 2), 2, LlnMode::Exhaustive).exact, 0);
  EXPECT_THROW(lln_fraction(1, 25, make_rational(1, 10), Sublattice(1, 1), 2, LlnMode::Exhaustive),
               InvalidArgument);
  EXPECT_THROW(lln_fraction(1, 10, make_rational(1, 10), Sublattice(1, 1), 2, LlnMode::MonteCarlo, 0),
               InvalidArgument);
}

TEST(Lln, MonotoneInEps) {
  Rational last = 0;
  for (int e = 0; e <= 12; ++e) {
    const Rational eps = make_rational(e, 20);
    const Rational v = *lln_fraction(1, 12, eps, Sublattice(1, 2), 2, LlnMode::Exhaustive).exact;
    EXPECT_GE(v, last);
    last = v;
  }
  EXPECT_EQ(last, 1);
}

TEST(Lln, GrowsWithSide) {
  // at eps = 1/10 the attainable frequencies c/n make the sequence jump around;
  // at eps = 1/4 the finite trend is visible
  const Rational eps = make_rational(1, 4);
  Rational last = 0;
  for (Coord n : {8, 12, 16, 20}) {
    const Rational v = *lln_fraction(1, n, eps, Sublattice(1, 1), 2, LlnMode::Exhaustive).exact;
    EXPECT_EQ(v, binomial_window(static_cast<unsigned>(n), eps));
    EXPECT_GT(v, last) << "n " << n;
    last = v;
  }
}

TEST(Lln, MonteCarloAgreesWithExhaustive) {
  struct Case {
    int d;
    Coord n;
    Coord m;
    std::uint32_t c;
  };
  for (const Case& k : {Case{1, 16, 1, 2}, Case{1, 12, 2, 2}, Case{2, 4, 2, 2}, Case{1, 10, 1, 3}}) {
    const Rational eps = make_rational(1, 5);
    const Sublattice f(k.d, k.m);
    const double exact = to_double(*lln_fraction(k.d, k.n, eps, f, k.c, LlnMode::Exhaustive).exact);
    const LlnResult mc = lln_fraction(k.d, k.n, eps, f, k.c, LlnMode::MonteCarlo, 20000, 99);
    EXPECT_LE(std::abs(mc.estimate - exact), 3 * mc.standard_error + 1e-9)
        << "d " << k.d << " n " << k.n;
  }
}
