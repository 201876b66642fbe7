#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "subshift/lattice.hpp"
#include "subshift/rational.hpp"

namespace subshift {

using Symbol = std::uint16_t;

/// A finite configuration: a box support and a row-major array of symbols
/// drawn from [0, alphabet).
class Pattern {
 public:
  Pattern() = default;
  Pattern(Box support, std::uint32_t alphabet, std::vector<Symbol> values);

  static Pattern filled(Box support, std::uint32_t alphabet, Symbol value = 0);
  /// Digits '0'..'9' in row-major order.
  static Pattern from_digits(std::string_view digits, Box support, std::uint32_t alphabet = 2);

  const Box& support() const noexcept { return support_; }
  std::uint32_t alphabet() const noexcept { return alphabet_; }
  int dimension() const noexcept { return support_.dimension(); }
  std::span<const Symbol> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Value at an absolute coordinate inside the support.
  Symbol at(const Point& p) const { return values_[support_.offset_of(p)]; }
  void set(const Point& p, Symbol v);

  Symbol operator[](std::size_t offset) const noexcept { return values_[offset]; }
  void set_offset(std::size_t offset, Symbol v);

  /// Row-major digits; requires alphabet <= 10.
  std::string digits() const;

  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  Box support_;
  std::uint32_t alphabet_ = 2;
  std::vector<Symbol> values_;
};

/// Lexicographic order on values (supports must agree).
bool lexicographically_less(const Pattern& a, const Pattern& b);

std::size_t content_hash(const Pattern& p) noexcept;

/// Distinct patterns over a common support and alphabet. Insertion order is
/// kept; membership is by content hash confirmed with full equality.
class PatternSet {
 public:
  PatternSet() = default;
  PatternSet(Box support, std::uint32_t alphabet);

  /// False (and no insertion) when an equal pattern is already present.
  bool insert(Pattern p);
  bool contains(const Pattern& p) const { return find(p).has_value(); }
  std::optional<std::size_t> find(const Pattern& p) const;

  const Box& support() const noexcept { return support_; }
  std::uint32_t alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const Pattern& operator[](std::size_t i) const { return members_.at(i); }
  const std::vector<Pattern>& members() const noexcept { return members_; }

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

 private:
  Box support_;
  std::uint32_t alphabet_ = 2;
  std::vector<Pattern> members_;
  std::unordered_multimap<std::size_t, std::size_t> by_hash_;
};

/// Optional residue-class constraint on occurrence corners: keep only
/// translations g whose translated support corner is congruent to `center`
/// modulo `lattice`.
class OccurrenceQuery {
 public:
  OccurrenceQuery() = default;
  OccurrenceQuery(Point center, Sublattice lattice);

  bool constrained() const noexcept { return class_.has_value(); }
  const Point& center() const { return class_.value().first; }
  const Sublattice& lattice() const { return class_.value().second; }

 private:
  std::optional<std::pair<Point, Sublattice>> class_;
};

/// Values of b on a sub-box A1 of its support.
Pattern restrict(const Pattern& b, const Box& a1);

/// Shift action: same values on support + g.
Pattern translate(const Pattern& b, const Point& g);

/// Translations g with support(b1) + g inside support(b2) and b2 agreeing with
/// translate(b1, g) there, sorted lexicographically. Work is split over
/// `threads` disjoint ranges of the first axis; the result does not depend on
/// the thread count.
std::vector<Point> occurrences(const Pattern& b1, const Pattern& b2,
                               const OccurrenceQuery& query = {}, unsigned threads = 1);

std::uint64_t count_occurrences(const Pattern& b1, const Pattern& b2,
                                const OccurrenceQuery& query = {});

/// |S(b1, b2, query)| / |support(b2)| as an exact rational.
Rational frequency(const Pattern& b1, const Pattern& b2, const OccurrenceQuery& query = {});

/// Concatenates blocks: cell n*g + h of the result is blocks[w(g)](h), where n
/// is the side of the (cubic) block support.
Pattern flatten(const Pattern& w, const PatternSet& blocks);

/// Text form: a header line "d n c corner..." followed by n^(d-1) lines of n
/// digits. Cubic supports only.
std::string to_text(const Pattern& p);
Pattern pattern_from_text(std::string_view text);

}  // namespace subshift
