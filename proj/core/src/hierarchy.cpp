#include "subshift/hierarchy.hpp"

#include "subshift/error.hpp"

namespace subshift {

std::vector<std::uint8_t> skeleton_mask(const Stage& s, int j) {
  if (j == 0) j = s.k;
  if (j < 1 || j > s.k) throw InvalidArgument("skeleton level outside the stage range");
  std::vector<std::uint8_t> mask{1};
  Coord n = 1;
  for (int level = 1; level < j; ++level) {
    StepGeometry g = step_geometry(s, level);
    Box outer = Box::cube(s.d, g.n_next());
    Box inner = Box::cube(s.d, n);
    std::vector<std::uint8_t> next(outer.cell_count(), 0);
    const auto so = outer.strides();
    std::vector<std::size_t> rel;
    for_each_point(inner, [&](const Point& p) {
      if (!mask[inner.offset_of(p)]) return;
      std::size_t o = 0;
      for (std::size_t i = 0; i < p.size(); ++i) o += static_cast<std::size_t>(p[i]) * so[i];
      rel.push_back(o);
    });
    for_each_point(Box::cube(s.d, g.L), [&](const Point& b) {
      Point origin = g.block_origin(b);
      std::size_t base = 0;
      for (std::size_t i = 0; i < origin.size(); ++i) base += static_cast<std::size_t>(origin[i]) * so[i];
      for (std::size_t r : rel) next[base + r] = 1;
    });
    mask = std::move(next);
    n = g.n_next();
  }
  return mask;
}

BlockIndex::BlockIndex(const Stage& stage)
    : level_(stage.k), side_(stage.n), size_(static_cast<std::uint32_t>(stage.patterns.size())) {
  const auto mask = skeleton_mask(stage);
  const Box box = Box::cube(stage.d, stage.n);
  std::vector<std::size_t> flat;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) {
      cells_.push_back(box.point_at(i));
      flat.push_back(i);
    }
  }
  for (std::uint32_t c = 0; c < size_; ++c) {
    const Pattern& p = stage.patterns[c];
    std::string key(flat.size(), '\0');
    for (std::size_t i = 0; i < flat.size(); ++i) key[i] = static_cast<char>(p[flat[i]]);
    // members sharing a skeleton differ only in fill; the first one names the class
    keys_.emplace(std::move(key), c);
  }
}

std::vector<std::size_t> BlockIndex::offsets(const std::vector<std::size_t>& strides) const {
  std::vector<std::size_t> out;
  out.reserve(cells_.size());
  for (const Point& p : cells_) {
    std::size_t o = 0;
    for (std::size_t i = 0; i < p.size(); ++i) o += static_cast<std::size_t>(p[i]) * strides[i];
    out.push_back(o);
  }
  return out;
}

std::uint32_t BlockIndex::lookup(const Pattern& big, std::size_t base,
                                 const std::vector<std::size_t>& offsets) const {
  std::string key(offsets.size(), '\0');
  for (std::size_t i = 0; i < offsets.size(); ++i) key[i] = static_cast<char>(big[base + offsets[i]]);
  auto it = keys_.find(key);
  return it == keys_.end() ? size_ : it->second;
}

std::uint32_t BlockIndex::lookup(const Pattern& big, const Point& origin) const {
  if (!big.support().contains(Box::cube(origin, side_))) {
    throw InvalidArgument("block lookup outside the pattern");
  }
  return lookup(big, big.support().offset_of(origin), offsets(big.support().strides()));
}

std::vector<std::uint32_t> decompose(const Pattern& big, const Point& origin,
                                     const StepGeometry& g, const BlockIndex& lower) {
  if (lower.side() != g.n_k) throw InvalidArgument("block index does not match the geometry");
  if (!big.support().contains(Box::cube(origin, g.n_next()))) {
    throw InvalidArgument("decomposed block lies outside the pattern");
  }
  const auto rel = lower.offsets(big.support().strides());
  const auto strides = big.support().strides();
  const auto& corner = big.support().corner();
  std::vector<std::uint32_t> out;
  out.reserve(Box::cube(g.d, g.L).cell_count());
  for_each_point(Box::cube(g.d, g.L), [&](const Point& b) {
    std::size_t base = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      base += static_cast<std::size_t>(origin[i] + g.block_origin(b[i]) - corner[i]) * strides[i];
    }
    out.push_back(lower.lookup(big, base, rel));
  });
  return out;
}

std::vector<std::uint64_t> block_counts(std::span<const std::uint32_t> word, int d, Coord L,
                                        Coord m_k, std::uint32_t alphabet) {
  const Sublattice f(d, m_k);
  const std::size_t classes = index(f);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(alphabet) * classes, 0);
  if (L < 2) return counts;
  const Box grid = Box::cube(d, L);
  if (word.size() != grid.cell_count()) throw InvalidArgument("block word has the wrong size");
  const auto strides = grid.strides();
  for_each_point(Box::cube(d, L - 1), [&](const Point& g) {
    std::size_t off = 0;
    for (std::size_t i = 0; i < g.size(); ++i) off += static_cast<std::size_t>(g[i]) * strides[i];
    const std::uint32_t c = word[off];
    if (c < alphabet) ++counts[c * classes + residue_index(g, f)];
  });
  return counts;
}

}  // namespace subshift
