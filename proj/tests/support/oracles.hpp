#pragma once

// Slow, direct re-implementations used as test oracles. None of these call
// the optimized routines they check.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <subshift/subshift.hpp>

namespace subshift::testing {

inline bool point_in(const Box& b, const Point& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < b.corner()[i] || p[i] >= b.corner()[i] + b.extents()[i]) return false;
  }
  return true;
}

inline Coord mod(Coord a, Coord m) { return ((a % m) + m) % m; }

// Every translation g with A1 + g inside A2, compared cell by cell.
inline std::vector<Point> naive_occurrences(const Pattern& b1, const Pattern& b2,
                                            const std::optional<std::pair<Point, Coord>>& cls = {}) {
  std::vector<Point> out;
  const Box& a1 = b1.support();
  const Box& a2 = b2.support();
  const std::size_t d = a1.corner().size();
  Point lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = a2.corner()[i] - a1.corner()[i] - a1.extents()[i];
    hi[i] = a2.corner()[i] + a2.extents()[i] - a1.corner()[i];
  }
  Point g = lo;
  while (true) {
    bool fits = true;
    for (std::size_t i = 0; i < d; ++i) {
      fits = fits && a1.corner()[i] + g[i] >= a2.corner()[i] &&
             a1.corner()[i] + g[i] + a1.extents()[i] <= a2.corner()[i] + a2.extents()[i];
    }
    if (fits && cls) {
      for (std::size_t i = 0; i < d; ++i) {
        fits = fits && mod(a1.corner()[i] + g[i] - cls->first[i], cls->second) == 0;
      }
    }
    if (fits) {
      bool same = true;
      for (std::size_t off = 0; off < b1.size() && same; ++off) {
        Point p = a1.point_at(off);
        for (std::size_t i = 0; i < d; ++i) p[i] += g[i];
        same = b2.at(p) == b1[off];
      }
      if (same) out.push_back(g);
    }
    std::size_t axis = d;
    while (axis-- > 0) {
      if (++g[axis] <= hi[axis]) break;
      g[axis] = lo[axis];
    }
    if (axis == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

inline Pattern random_pattern(std::mt19937_64& rng, const Box& box, std::uint32_t alphabet) {
  std::vector<Symbol> v(box.cell_count());
  for (auto& x : v) x = static_cast<Symbol>(rng() % alphabet);
  return Pattern(box, alphabet, std::move(v));
}

inline BigInt binomial(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Admissibility of a 1-D block word over {0,1} with m_k = 1, written out
// with rationals: both symbols present and each frequency over the first
// L-1 positions inside [(1 - d s)/2, (1 + d s)/2].
inline bool admissible_1d_binary(std::uint32_t word_bits, int L, const Rational& d_tol,
                                 const Rational& sigma) {
  int zeros = 0;
  for (int i = 0; i < L - 1; ++i) zeros += ((word_bits >> i) & 1u) == 0 ? 1 : 0;
  const int ones = (L - 1) - zeros;
  const Rational lo = (1 - d_tol * sigma) / 2;
  const Rational hi = (1 + d_tol * sigma) / 2;
  for (int c : {zeros, ones}) {
    const Rational f(c, L - 1);
    if (c == 0 || f < lo || f > hi) return false;
  }
  return true;
}

// Direct (v)/(vi) check of a block word given by symbols over [0, L)^d.
inline bool admissible_direct(const std::vector<std::uint32_t>& word, int d, Coord L, Coord m,
                              std::uint32_t alphabet, const Rational& d_tol, const Rational& sigma) {
  const Box grid = Box::cube(d, L);
  Coord classes = 1;
  for (int i = 0; i < d; ++i) classes *= m;
  std::vector<Coord> region_count(static_cast<std::size_t>(classes) * alphabet, 0);
  Coord region = 1;
  for (int i = 0; i < d; ++i) region *= (L - 1);
  for (std::size_t off = 0; off < word.size(); ++off) {
    const Point g = grid.point_at(off);
    bool in = true;
    Coord r = 0;
    for (Coord x : g) {
      in = in && x < L - 1;
      r = r * m + x % m;
    }
    if (in && word[off] < alphabet) ++region_count[word[off] * static_cast<std::size_t>(classes) + static_cast<std::size_t>(r)];
  }
  const Rational base = Rational(1) / (Rational(classes) * alphabet);
  for (Coord c : region_count) {
    if (c == 0) return false;
    const Rational f(c, region);
    if (f < (1 - d_tol * sigma) * base || f > (1 + d_tol * sigma) * base) return false;
  }
  return true;
}

}  // namespace subshift::testing
