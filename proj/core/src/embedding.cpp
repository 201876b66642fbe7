#include "subshift/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "subshift/error.hpp"
#include "subshift/hierarchy.hpp"

namespace subshift {

std::uint64_t Skeleton::size() const {
  return static_cast<std::uint64_t>(std::count(mask.begin(), mask.end(), std::uint8_t{1}));
}

bool Skeleton::contains(const Point& p) const {
  const Box box = Box::cube(d, n);
  return box.contains(p) && mask[box.offset_of(p)] != 0;
}

std::vector<Point> Skeleton::cells() const {
  std::vector<Point> out;
  const Box box = Box::cube(d, n);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(box.point_at(i));
  }
  return out;
}

std::vector<Point> Skeleton::free_cells() const {
  std::vector<Point> out;
  const Box box = Box::cube(d, n);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) out.push_back(box.point_at(i));
  }
  return out;
}

Skeleton tilde_region(const std::vector<Stage>& stages, int k) {
  const Stage* best = nullptr;
  for (const Stage& s : stages) {
    if (s.k >= k && (!best || s.k > best->k)) best = &s;
  }
  if (!best || k < 1) throw InvalidArgument("stage " + std::to_string(k) + " not built");
  Skeleton sk;
  sk.k = k;
  sk.d = best->d;
  sk.n = side_schedule(*best).at(static_cast<std::size_t>(k - 1));
  sk.mask = skeleton_mask(*best, k);
  return sk;
}

Assignment::Assignment(Point base, std::map<Point, Symbol> values)
    : base_(std::move(base)), values_(std::move(values)) {
  for (const auto& [h, v] : values_) {
    if (h.size() != base_.size()) throw InvalidArgument("assignment point has wrong dimension");
    if (v > 1) throw InvalidArgument("assignment values must be 0 or 1");
  }
}

Assignment Assignment::constant(const SparseSet& p, const Box& placed, Symbol value) {
  std::map<Point, Symbol> values;
  for (const Point& h : p.points_in(placed)) values.emplace(h, value);
  return Assignment(placed.corner(), std::move(values));
}

Assignment parse_assignment(std::string_view text, Point base) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::map<Point, Symbol> values;
  const std::size_t d = base.size();
  while (std::getline(is, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<Coord> nums;
    Coord x = 0;
    while (ls >> x) nums.push_back(x);
    if (!ls.eof()) throw FormatError("bad assignment line '" + line + "'");
    if (nums.empty()) continue;
    if (nums.size() != d + 1) throw FormatError("assignment line needs " + std::to_string(d + 1) + " integers");
    if (nums.back() != 0 && nums.back() != 1) throw FormatError("assignment value must be 0 or 1");
    Point h(nums.begin(), nums.end() - 1);
    if (!values.emplace(h, static_cast<Symbol>(nums.back())).second) {
      throw FormatError("assignment repeats a point");
    }
  }
  return Assignment(std::move(base), std::move(values));
}

std::string to_text(const Assignment& a) {
  std::ostringstream os;
  for (const auto& [h, v] : a.values()) {
    for (Coord c : h) os << c << ' ';
    os << v << '\n';
  }
  return os.str();
}

namespace {

struct Chain {
  std::vector<const Stage*> stages;  // stages[j-1] has index j
  const Stage& at(int j) const { return *stages.at(static_cast<std::size_t>(j - 1)); }
  const Stage& top() const { return *stages.back(); }
  int K() const { return static_cast<int>(stages.size()); }
};

Chain make_chain(const std::vector<Stage>& stages, int K) {
  Chain c;
  for (int j = 1; j <= K; ++j) {
    auto it = std::find_if(stages.begin(), stages.end(), [j](const Stage& s) { return s.k == j; });
    if (it == stages.end()) throw InvalidArgument("stage " + std::to_string(j) + " not available");
    c.stages.push_back(&*it);
  }
  return c;
}

Coord sub_index(const StepGeometry& g, Coord local) {
  return local < g.cut() ? local / g.n_k : g.L - 1;
}

std::vector<Point> level_origins(const Chain& c, int level) {
  std::vector<Point> origins{Point(static_cast<std::size_t>(c.top().d), 0)};
  for (int j = c.K(); j > level; --j) {
    const StepGeometry g = step_geometry(c.top(), j - 1);
    std::vector<Point> next;
    for (const Point& o : origins) {
      for_each_point(Box::cube(g.d, g.L), [&](const Point& b) {
        Point p = g.block_origin(b);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += o[i];
        next.push_back(std::move(p));
      });
    }
    origins = std::move(next);
  }
  return origins;
}

std::vector<LevelCertificate> certify(const Chain& c, const Pattern& tmpl, const Pattern& word) {
  const Stage& top = c.top();
  // (level, block origin) -> changed sub-block indices in the counted region
  std::map<std::pair<int, Point>, std::set<Point>> changed;
  const auto mask = skeleton_mask(top);
  for (std::size_t off = 0; off < word.size(); ++off) {
    if (word[off] == tmpl[off] || !mask[off]) continue;
    const Point cell = word.support().point_at(off);
    Point origin(cell.size(), 0);
    for (int j = c.K(); j >= 2; --j) {
      const StepGeometry g = step_geometry(top, j - 1);
      Point sub(cell.size());
      bool counted = true;
      for (std::size_t i = 0; i < cell.size(); ++i) {
        sub[i] = sub_index(g, cell[i] - origin[i]);
        if (sub[i] == g.L - 1) counted = false;
      }
      if (counted) changed[{j, origin}].insert(sub);
      const Point o = g.block_origin(sub);
      for (std::size_t i = 0; i < origin.size(); ++i) origin[i] += o[i];
    }
  }
  std::vector<LevelCertificate> levels;
  for (int j = c.K(); j >= 2; --j) {
    const StepGeometry g = step_geometry(top, j - 1);
    const Stage& lower = c.at(j - 1);
    LevelCertificate lc;
    lc.level = j;
    for (const auto& [key, subs] : changed) {
      if (key.first == j) lc.max_changed = std::max<std::uint64_t>(lc.max_changed, subs.size());
    }
    const Rational sigma = c.at(j).slack;
    const Rational& d_tol = top.d_tolerances.at(static_cast<std::size_t>(j - 2));
    const BigInt region = Box::cube(top.d, g.L - 1).cell_count();
    const BigInt classes = index(Sublattice(top.d, lower.m));
    lc.budget = static_cast<std::uint64_t>(
        floor((1 - sigma) * d_tol * Rational(region, classes * BigInt(lower.patterns.size()))));
    lc.certified = lc.max_changed <= lc.budget;
    levels.push_back(lc);
  }
  return levels;
}

void check_domain(const Pattern& word, const Assignment& a, const SparseSet& p) {
  if (a.base().size() != static_cast<std::size_t>(word.dimension()) ||
      p.dimension() != word.dimension()) {
    throw InvalidArgument("assignment dimension mismatch");
  }
  const auto expected = p.points_in(word.support().translated(a.base()));
  bool same = expected.size() == a.size();
  if (same) {
    auto it = a.values().begin();
    for (const Point& h : expected) {
      if (!(it->first == h)) {
        same = false;
        break;
      }
      ++it;
    }
  }
  if (!same) {
    throw InvalidArgument("assignment domain (" + std::to_string(a.size()) +
                          " points) differs from P cap (A_k + g0) (" +
                          std::to_string(expected.size()) + " points)");
  }
}

Point relative(const Point& h, const Point& base) {
  Point r(h);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= base[i];
  return r;
}

std::vector<std::size_t> template_order(const Stage& s, const EmbedOptions& options) {
  if (options.template_index) {
    if (*options.template_index >= s.patterns.size()) throw InvalidArgument("template index out of range");
    return {*options.template_index};
  }
  std::vector<std::size_t> order(s.patterns.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return lexicographically_less(s.patterns[x], s.patterns[y]);
  });
  return order;
}

EmbedResult finish(const std::vector<Stage>& stages, const Chain& c, std::size_t t,
                   Pattern word, const Point& base) {
  EmbedResult r;
  r.base = base;
  r.template_index = t;
  r.levels = certify(c, c.top().patterns[t], word);
  r.certified = std::all_of(r.levels.begin(), r.levels.end(),
                            [](const LevelCertificate& l) { return l.certified; });
  r.exact = check_hierarchy(stages, c.K(), word);
  r.word = std::move(word);
  return r;
}

[[noreturn]] void violation(const EmbedResult& r) {
  const LevelCertificate* worst = nullptr;
  for (const auto& l : r.levels) {
    if (l.level == r.exact.level) worst = &l;
  }
  std::ostringstream os;
  os << "embedded word fails at level " << r.exact.level << ": " << describe(r.exact.detail);
  if (worst) {
    os << " (" << worst->max_changed << " changed blocks, budget " << worst->budget << ")";
    throw DensityViolation(r.exact.level, worst->max_changed, worst->budget, os.str());
  }
  throw DensityViolation(r.exact.level, 0, 0, os.str());
}

}  // namespace

HierarchyCheck check_hierarchy(const std::vector<Stage>& stages, int K, const Pattern& word,
                               const Rational& sigma) {
  const Chain c = make_chain(stages, K);
  const Stage& top = c.top();
  if (!(word.support() == Box::cube(top.d, top.n))) throw InvalidArgument("word is not on A_K");
  for (int j = K; j >= 2; --j) {
    const Stage& lower = c.at(j - 1);
    const StepGeometry g = step_geometry(top, j - 1);
    const BlockIndex idx(lower);
    const CountWindow window = count_window(top.d, g.L, lower.m, idx.size(),
                                            top.d_tolerances.at(static_cast<std::size_t>(j - 2)), sigma);
    for (const Point& o : level_origins(c, j)) {
      const auto symbols = decompose(word, o, g, idx);
      const auto r = check_block_word(symbols, top.d, g.L, lower.m, idx.size(), window);
      if (!r.ok) return HierarchyCheck{false, j, o, r};
    }
  }
  return {};
}

EmbedResult embed(const std::vector<Stage>& stages, int k, const Assignment& a, const SparseSet& p,
                  const EmbedOptions& options) {
  const Chain c = make_chain(stages, k);
  const Stage& top = c.top();
  if (top.patterns.empty()) throw InvalidArgument("stage has no patterns");
  check_domain(top.patterns[0], a, p);
  std::optional<EmbedResult> first_failure;
  std::size_t tried = 0;
  for (std::size_t t : template_order(top, options)) {
    ++tried;
    Pattern word = top.patterns[t];
    for (const auto& [h, v] : a.values()) word.set(relative(h, a.base()), v);
    EmbedResult r = finish(stages, c, t, std::move(word), a.base());
    r.templates_tried = tried;
    if (r.exact.ok) return r;
    if (!first_failure) first_failure = std::move(r);
  }
  violation(*first_failure);
}

EmbedExceptResult embed_except(const std::vector<Stage>& stages, int K, const Box& preserve,
                               const Assignment& a, const SparseSet& p,
                               const EmbedOptions& options) {
  const Chain c = make_chain(stages, K);
  const Stage& top = c.top();
  if (top.patterns.empty()) throw InvalidArgument("stage has no patterns");
  check_domain(top.patterns[0], a, p);
  EmbedOptions pinned = options;
  if (!pinned.template_index) pinned.template_index = template_order(top, options).front();

  EmbedExceptResult out;
  auto radius = [&](const Pattern& word) {
    Coord n = 0;
    for (const auto& [h, v] : a.values()) {
      if (word.at(relative(h, a.base())) == v) continue;
      for (Coord x : h) n = std::max(n, (x < 0 ? -x : x) + 1);
    }
    return n;
  };
  if (preserve.empty()) {
    out.embedded = embed(stages, K, a, p, pinned);
    out.radius = radius(out.embedded.word);
    return out;
  }
  const Box whole = Box::cube(top.d, top.n);
  const Box rel = preserve.translated(relative(Point(preserve.corner().size(), 0), a.base()));
  if (!whole.contains(rel)) throw InvalidArgument("preserve box lies outside A_K + g0");

  int level = K;
  Point origin(static_cast<std::size_t>(top.d), 0);
  while (level > 1) {
    const StepGeometry g = step_geometry(top, level - 1);
    Point sub(origin.size());
    bool inside = true;
    for (std::size_t i = 0; i < sub.size() && inside; ++i) {
      const Coord local = rel.corner()[i] - origin[i];
      if (local == g.cut()) {
        inside = false;
        break;
      }
      sub[i] = sub_index(g, local);
      const Coord lo = origin[i] + g.block_origin(sub[i]);
      inside = rel.corner()[i] >= lo && rel.corner()[i] + rel.extents()[i] <= lo + g.n_k;
    }
    if (!inside) break;
    const Point o = g.block_origin(sub);
    for (std::size_t i = 0; i < origin.size(); ++i) origin[i] += o[i];
    --level;
  }
  const std::size_t t = *pinned.template_index;
  Pattern word = top.patterns[t];
  if (level == K) {
    if (!(rel == whole)) {
      throw InvalidArgument("preserve box straddles the level-" + std::to_string(K - 1) +
                            " blocks; shrink or re-center it");
    }
  } else {
    const Box keep = Box::cube(origin, side_schedule(top).at(static_cast<std::size_t>(level - 1)));
    for (const auto& [h, v] : a.values()) {
      const Point r = relative(h, a.base());
      if (!keep.contains(r)) word.set(r, v);
    }
  }
  out.embedded = finish(stages, c, t, std::move(word), a.base());
  out.embedded.templates_tried = 1;
  if (!out.embedded.exact.ok) violation(out.embedded);
  out.preserved_level = level;
  out.preserved_origin = origin;
  out.radius = radius(out.embedded.word);
  return out;
}

}  // namespace subshift
