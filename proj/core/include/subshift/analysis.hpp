#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "subshift/construction.hpp"
#include "subshift/lattice.hpp"
#include "subshift/pattern.hpp"
#include "subshift/rational.hpp"

namespace subshift {

using Decimal = boost::multiprecision::cpp_dec_float_50;

/// Significant digits carried by Decimal and printed in reports.
inline constexpr int kDecimalDigits = 40;

std::string to_string(const Decimal& x, int digits = kDecimalDigits);

struct EntropyEntry {
  int k = 1;
  Coord n = 1;
  BigInt count = 0;
  Decimal value = 0;    // log|C_k| / n_k^d
  Rational lower = 0;   // lower <= value <= upper, a few units of 10^-kDecimalDigits apart
  Rational upper = 0;
  Decimal target = 0;   // prod_{i<k} (1 - nu_i)^{d+1} log 2
  /// nu'_{k-1} with |C_k| = |C_{k-1}|^{(l m)^d (1 - nu')}; absent for k = 1.
  std::optional<Decimal> effective_nu;
};

struct EntropyLedger {
  int d = 1;
  std::vector<EntropyEntry> entries;
};

/// Ledger from stored counts of consecutive stages starting at k = 1.
EntropyLedger entropy_bounds(const std::vector<Stage>& stages);

/// Same bookkeeping from raw data: side n_k, count |C_k|, and for each step
/// the block count per axis L_k = l_k m_{k+1} and nu_k.
EntropyLedger entropy_bounds(int d, const std::vector<Coord>& sides,
                             const std::vector<BigInt>& counts, const std::vector<Coord>& block_axis,
                             const std::vector<Rational>& nu);

struct ScheduleEntry {
  int k = 1;              // step k -> k+1
  Rational nu = 0;
  Coord n_next = 0;
  bool vii = false;       // nu_k n_{k+1} >= 1
  BigInt achieved = 0;    // |C_{k+1}|
  Decimal required_log10 = 0;  // log10 of |C_k|^{(l m)^d (1 - nu_k)}
  bool viii = false;
  bool exact = true;      // viii decided with integers rather than logs
};

std::vector<ScheduleEntry> schedule_check(const std::vector<Stage>& stages);

/// Min and max of frequency(b_A, W, (g, F)) over W in C_k and g in residues(F).
std::pair<Rational, Rational> alpha_beta(const Stage& s, const Pattern& b_a, const Sublattice& f);

struct GapEntry {
  int k = 1;
  Rational alpha = 0;
  Rational beta = 0;
  Rational gap = 0;
  std::optional<Rational> bound;       // 2 d_{k-1}
  std::optional<Rational> correction;  // boundary mass, see boundary_correction
  bool flagged = false;
};

struct GapReport {
  std::vector<GapEntry> entries;
  bool any_flagged() const noexcept;
};

/// Fraction of the valid placements of a box with the given extents inside
/// A_k that are not contained in a single sub-block at a position of
/// [0, L-1)^d, i.e. placements that meet a block boundary, a hyperplane, or
/// the uncontrolled last row of blocks.
Rational boundary_correction(const Stage& s, const std::vector<Coord>& extents);

GapReport gap_series(const std::vector<Stage>& stages, const Pattern& b_a, const Sublattice& f);

enum class LlnMode { Exhaustive, MonteCarlo };

struct LlnResult {
  LlnMode mode = LlnMode::Exhaustive;
  std::optional<Rational> exact;   // exhaustive only
  double estimate = 0;
  double standard_error = 0;
  std::uint64_t words = 0;         // words examined
  std::uint64_t hits = 0;
};

/// Fraction of b in {0..c-1}^{[0,n)^d} with |fr(w, b, (g, F)) - 1/(c (Z^d:F))| < eps
/// for every symbol w and residue g. Exhaustive requires c^{n^d} <= 2^24.
LlnResult lln_fraction(int d, Coord n, const Rational& eps, const Sublattice& f,
                       std::uint32_t alphabet, LlnMode mode, std::uint64_t trials = 0,
                       std::uint64_t seed = 0);

}  // namespace subshift
