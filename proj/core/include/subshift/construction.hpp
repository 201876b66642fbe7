#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "subshift/lattice.hpp"
#include "subshift/pattern.hpp"
#include "subshift/rational.hpp"

namespace subshift {

enum class FillRule { AllZero, AllOne, Random, Explicit };

std::string to_string(FillRule rule);
/// Accepts ALL_ZERO, ALL_ONE, RANDOM, EXPLICIT (case-insensitive, '-' or '_').
FillRule parse_fill_rule(std::string_view text);

struct StageParams {
  Coord l = 1;         // l_k
  Coord m_next = 2;    // m_{k+1}
  Rational d_tol = make_rational(1, 2);   // d_k
  Rational nu = make_rational(1, 10);     // nu_k
  std::uint64_t target_count = 1;
  Rational slack = make_rational(1, 2);   // sigma
  std::uint64_t candidate_budget = 1;
  std::uint64_t seed = 0;
  FillRule fill = FillRule::AllZero;
  /// Values for the hyperplane cells in row-major order (EXPLICIT fill only).
  std::vector<Symbol> explicit_fill;
};

/// Geometry of one step k -> k+1 with L = l_k * m_{k+1}.
struct StepGeometry {
  int d = 1;
  Coord n_k = 1;
  Coord L = 1;

  Coord n_next() const noexcept { return L * n_k + 1; }
  /// Hyperplane coordinate L*n_k - n_k.
  Coord cut() const noexcept { return L * n_k - n_k; }
  Coord delta(Coord r) const noexcept { return r < cut() ? 0 : 1; }
  /// One-axis origin of sub-block index g: n_k*g + delta(n_k*g).
  Coord block_origin(Coord g) const noexcept { return n_k * g + delta(n_k * g); }
  Point block_origin(const Point& g) const;
};

struct Stage {
  int k = 1;
  int d = 1;
  Coord n = 1;
  Coord m = 1;
  PatternSet patterns;
  std::vector<Coord> m_schedule;          // m_1 .. m_k
  std::vector<Coord> l_schedule;          // l_1 .. l_{k-1}
  std::vector<Rational> d_tolerances;     // d_1 .. d_{k-1}
  std::vector<Rational> nu_schedule;      // nu_1 .. nu_{k-1}
  Rational slack = make_rational(1, 2);
  std::uint64_t seed = 0;
  FillRule fill = FillRule::AllZero;
  std::vector<std::uint64_t> counts;      // |C_1| .. |C_k|
  bool complete = true;
  std::uint64_t draws = 0;                // of the step that produced this stage
  std::uint64_t admissible_draws = 0;

  double acceptance_ratio() const noexcept {
    return draws == 0 ? 0.0 : static_cast<double>(admissible_draws) / static_cast<double>(draws);
  }
};

/// n_1 .. n_k recomputed from the l and m schedules.
std::vector<Coord> side_schedule(const Stage& s);

/// Geometry of step j -> j+1 (1 <= j < s.k) recorded in s.
StepGeometry step_geometry(const Stage& s, int j);

/// Geometry of the step s -> s+1 under p.
StepGeometry next_geometry(const Stage& s, const StageParams& p);

/// Integer count bounds for the (vi) window over a region of `region` block
/// positions: count/region in [(1 - d*sigma)/(m^d c), (1 + d*sigma)/(m^d c)].
struct CountWindow {
  std::uint64_t region = 0;
  BigInt lo = 0;
  BigInt hi = 0;
};
CountWindow count_window(int d, Coord L, Coord m_k, std::uint64_t alphabet, const Rational& d_tol,
                         const Rational& sigma);

enum class AdmissibilityReason { None, Coverage, Frequency };

struct AdmissibilityResult {
  bool ok = true;
  AdmissibilityReason reason = AdmissibilityReason::None;
  std::uint32_t symbol = 0;   // witness when !ok
  std::size_t residue = 0;    // index into residues(m_k Z^d)
  std::uint64_t count = 0;

  explicit operator bool() const noexcept { return ok; }
};

std::string describe(const AdmissibilityResult& r);

/// Core (v)/(vi) test on a block word given as symbol indices over [0, L)^d,
/// row-major. Only positions in [0, L-1)^d are counted; symbols >= alphabet
/// count toward nothing.
AdmissibilityResult check_block_word(std::span<const std::uint32_t> word, int d, Coord L,
                                     Coord m_k, std::uint32_t alphabet, const CountWindow& window);

Stage init_stage(int d);

/// Candidate over alphabet |C_k| on [0, l_k m_{k+1})^d, deterministic in
/// (seed, k, draw_index).
Pattern sample_candidate(const Stage& s, const StageParams& p, std::uint64_t draw_index);

AdmissibilityResult admissible(const Pattern& w, const Stage& s, const StageParams& p);

/// Phi(W)(g) = W(g + Delta(g)); W on [0, n_{k+1})^d, result on [0, n_{k+1} - 1)^d.
Pattern phi(const Pattern& W, const StepGeometry& g);

/// Section of phi: hyperplane cells set by `fill`. RANDOM draws from
/// fill_seed; EXPLICIT takes `explicit_values` in row-major hyperplane order.
Pattern phi_inverse(const Pattern& wt, const StepGeometry& g, FillRule fill,
                    std::uint64_t fill_seed = 0, std::span<const Symbol> explicit_values = {});

/// Number of hyperplane cells: n_{k+1}^d - (n_{k+1} - 1)^d.
std::uint64_t hyperplane_cells(const StepGeometry& g);

/// Rejection-sampling step. Candidates are decided independently and merged
/// in draw order, so the result does not depend on `threads`. Throws
/// UnsatisfiableError when (v)/(vi) cannot hold at this geometry; returns an
/// incomplete stage when the budget runs out first.
Stage build_next(const Stage& s, const StageParams& p, unsigned threads = 1);

struct StageReport {
  bool concatenation = true;  // (iii)
  bool gcd = true;            // (iv)
  bool coverage = true;       // (v)
  bool frequency = true;      // (vi)
  bool coincidence = true;
  Rational min_frequency = 0;
  Rational max_frequency = 0;
  std::vector<std::string> counterexamples;

  bool pass() const noexcept { return counterexamples.empty(); }
};

/// Re-derives the block decomposition of every member of `next` and checks
/// (iii)-(vi) at the stored slack. Throws InvalidArgument for non-consecutive
/// or inconsistent stages.
StageReport verify_stage_pair(const Stage& lower, const Stage& next);

/// Restriction of member `w_choice` of C_K to `window`: translation 0 if the
/// window lies in A_K, otherwise the copy with corner -floor(n_K/2).
Pattern window_of_point(const std::vector<Stage>& stages, int K, std::size_t w_choice,
                        const Box& window);

}  // namespace subshift
