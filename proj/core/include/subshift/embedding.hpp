#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subshift/construction.hpp"
#include "subshift/sparse.hpp"

namespace subshift {

/// The cells of A_k covered by concatenated lower-stage blocks.
struct Skeleton {
  int k = 1;
  int d = 1;
  Coord n = 1;
  std::vector<std::uint8_t> mask;  // row-major over [0, n)^d

  std::uint64_t size() const;
  bool contains(const Point& p) const;
  std::vector<Point> cells() const;
  /// A_k minus the skeleton.
  std::vector<Point> free_cells() const;
};

/// Needs some stage with index >= k (its schedules fix the geometry).
Skeleton tilde_region(const std::vector<Stage>& stages, int k);

/// Values prescribed on P cap (A_k + base).
class Assignment {
 public:
  Assignment() = default;
  Assignment(Point base, std::map<Point, Symbol> values);

  const Point& base() const noexcept { return base_; }
  const std::map<Point, Symbol>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// `value` on every point of P cap (A_k + base).
  static Assignment constant(const SparseSet& p, const Box& placed, Symbol value);

 private:
  Point base_;
  std::map<Point, Symbol> values_;
};

/// Lines "x_1 ... x_d v" with v in {0, 1}.
Assignment parse_assignment(std::string_view text, Point base);
std::string to_text(const Assignment& a);

struct EmbedOptions {
  /// Template member of C_k; by default members are tried in lexicographic
  /// order until one gives an admissible word.
  std::optional<std::size_t> template_index;
};

struct LevelCertificate {
  int level = 2;                  // blocks of this level, split into level-1 lower blocks
  std::uint64_t max_changed = 0;  // worst block: sub-blocks whose skeleton values changed
  std::uint64_t budget = 0;       // floor((1 - sigma) d N / (m^d |C|))
  bool certified = true;
};

struct HierarchyCheck {
  bool ok = true;
  int level = 0;      // failing level
  Point origin;       // failing block corner inside A_K
  AdmissibilityResult detail;
};

struct EmbedResult {
  Pattern word;                 // on A_k
  Point base;                   // g_0
  std::size_t template_index = 0;
  std::size_t templates_tried = 0;
  std::vector<LevelCertificate> levels;
  bool certified = true;        // every level within its budget
  HierarchyCheck exact;         // full-width re-check, always run

  /// The word on A_k + g_0.
  Pattern placed() const { return translate(word, base); }
};

/// Admissibility at sigma = `sigma` of every block at every level 2..K inside
/// a word on A_K, with blocks named by their skeleton values.
HierarchyCheck check_hierarchy(const std::vector<Stage>& stages, int K, const Pattern& word,
                               const Rational& sigma = Rational(1));

/// A member of C_k with the assignment written onto it: w(h - g_0) = a(h).
/// Throws DensityViolation when no admissible result is found and
/// InvalidArgument when the domain is not P cap (A_k + g_0).
EmbedResult embed(const std::vector<Stage>& stages, int k, const Assignment& a, const SparseSet& p,
                  const EmbedOptions& options = {});

struct EmbedExceptResult {
  EmbedResult embedded;
  int preserved_level = 0;   // level of the untouched block (0: nothing preserved)
  Point preserved_origin;    // its corner inside A_K
  /// Smallest n with every assignment point that was not honored inside (-n, n)^d.
  Coord radius = 0;
};

/// embed, except inside the deepest block of the hierarchy containing the
/// preserve box (absolute coordinates). The template is fixed: the one in
/// options or the lexicographically least member.
EmbedExceptResult embed_except(const std::vector<Stage>& stages, int K, const Box& preserve,
                               const Assignment& a, const SparseSet& p,
                               const EmbedOptions& options = {});

}  // namespace subshift
