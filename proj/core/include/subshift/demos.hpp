#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "subshift/embedding.hpp"
#include "subshift/pattern.hpp"
#include "subshift/sparse.hpp"

namespace subshift {

/// Box (-n, n)^d.
Box centered_cube(int d, Coord n);

/// Fraction of the points of P cap (-n, n)^d where x is 1. Throws
/// EmptyIntersection when that set is empty.
Rational sparse_average(const Pattern& x, const SparseSet& p, Coord n);

struct AverageSeries {
  std::vector<std::pair<Coord, Rational>> values;
};

struct DivergenceReport {
  AverageSeries series0;          // y0: zeros on P away from the preserved block
  AverageSeries series1;          // y1: ones likewise
  Coord preserved_radius = 0;     // k0
  bool shared_window = false;     // y0 = y1 = x on (-k0, k0)^d, checked cell by cell
  Point base;                     // g0 of the common central pattern
  std::size_t template_index = 0;
  Coord radius0 = 0;              // reported n of each embed_except
  Coord radius1 = 0;
  Pattern y0;
  Pattern y1;
};

/// Uses the last stage K. The preserve box (-k0, k0)^d is centred inside the
/// middle level-(K-1) block. Empty `radii`: doubling from k0 to the largest
/// radius inside the built window, which is always included.
DivergenceReport demo_divergence(const std::vector<Stage>& stages, const SparseSet& p, Coord k0,
                                 std::vector<Coord> radii = {},
                                 std::optional<std::size_t> template_index = std::nullopt);

struct EscapeCheck {
  Point g;
  Symbol at_g = 0;       // (T^g x)(0) = x(g)
  Symbol at_origin = 0;  // x(0)
};

struct EscapeReport {
  Box window;
  std::vector<EscapeCheck> checks;  // every g in P cap window
  bool verified = false;
  Pattern x;                        // x^b on the window
  Point base;
  std::optional<Point> flipped;     // G point whose bit was flipped for the witness
  std::vector<Point> differences;   // cells where the two windows differ
  bool witness_exact = false;       // differences == {flipped}
};

/// x^b on the centred copy of A_K (g0 = -floor(n_K/2)): x(0) = 0, x = 1 on
/// P and x = bits on G (default 0). The template is fixed so that a change
/// of one G bit changes exactly one cell.
EscapeReport demo_escape(const std::vector<Stage>& stages, const SparseSet& p, const SparseSet& g,
                         const Box& window, const std::map<Point, Symbol>& g_bits = {},
                         std::optional<std::size_t> template_index = std::nullopt);

}  // namespace subshift
