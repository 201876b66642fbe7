#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "subshift/construction.hpp"

namespace subshift {

/// Row-major mask over A_j = [0, n_j)^d of the skeleton: the cells reached by
/// level-1 blocks through the concatenation hierarchy. The complement is the
/// union of all hyperplane cells of every level. j defaults to s.k.
std::vector<std::uint8_t> skeleton_mask(const Stage& s, int j = 0);

/// Identifies blocks of a stage by their values on the skeleton, so that a
/// block with arbitrary hyperplane fill maps to the stored member it extends.
class BlockIndex {
 public:
  explicit BlockIndex(const Stage& stage);

  int level() const noexcept { return level_; }
  Coord side() const noexcept { return side_; }
  /// |C_k|; also the symbol returned for blocks matching no member.
  std::uint32_t size() const noexcept { return size_; }

  /// Offsets of the skeleton cells relative to a block corner inside a
  /// pattern with the given strides.
  std::vector<std::size_t> offsets(const std::vector<std::size_t>& strides) const;

  std::uint32_t lookup(const Pattern& big, std::size_t base,
                       const std::vector<std::size_t>& offsets) const;
  std::uint32_t lookup(const Pattern& big, const Point& origin) const;

  const std::vector<Point>& cells() const noexcept { return cells_; }

 private:
  int level_ = 1;
  Coord side_ = 1;
  std::uint32_t size_ = 0;
  std::vector<Point> cells_;
  std::unordered_map<std::string, std::uint32_t> keys_;
};

/// Symbols of the L^d sub-blocks of the level-(k+1) block whose corner is
/// `origin` inside `big`, row-major over [0, L)^d.
std::vector<std::uint32_t> decompose(const Pattern& big, const Point& origin,
                                     const StepGeometry& g, const BlockIndex& lower);

/// Count table [symbol][residue] over positions in [0, L-1)^d.
std::vector<std::uint64_t> block_counts(std::span<const std::uint32_t> word, int d, Coord L,
                                        Coord m_k, std::uint32_t alphabet);

}  // namespace subshift
