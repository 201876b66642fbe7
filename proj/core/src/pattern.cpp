#include "subshift/pattern.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <thread>

#include "subshift/error.hpp"

namespace subshift {

Pattern::Pattern(Box support, std::uint32_t alphabet, std::vector<Symbol> values)
    : support_(std::move(support)), alphabet_(alphabet), values_(std::move(values)) {
  if (alphabet_ < 2 || alphabet_ > 65536) throw InvalidArgument("alphabet size must be in [2, 65536]");
  if (values_.size() != support_.cell_count()) {
    throw InvalidArgument("pattern has " + std::to_string(values_.size()) + " values for " +
                          std::to_string(support_.cell_count()) + " cells");
  }
  for (Symbol v : values_) {
    if (v >= alphabet_) throw InvalidArgument("pattern value outside alphabet");
  }
}

Pattern Pattern::filled(Box support, std::uint32_t alphabet, Symbol value) {
  std::vector<Symbol> values(support.cell_count(), value);
  return Pattern(std::move(support), alphabet, std::move(values));
}

Pattern Pattern::from_digits(std::string_view digits, Box support, std::uint32_t alphabet) {
  std::vector<Symbol> values;
  values.reserve(digits.size());
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw FormatError(std::string("bad pattern digit '") + ch + "'");
    values.push_back(static_cast<Symbol>(ch - '0'));
  }
  return Pattern(std::move(support), alphabet, std::move(values));
}

void Pattern::set(const Point& p, Symbol v) { set_offset(support_.offset_of(p), v); }

void Pattern::set_offset(std::size_t offset, Symbol v) {
  if (v >= alphabet_) throw InvalidArgument("pattern value outside alphabet");
  values_.at(offset) = v;
}

std::string Pattern::digits() const {
  if (alphabet_ > 10) throw InvalidArgument("digit form needs alphabet <= 10");
  std::string s(values_.size(), '0');
  for (std::size_t i = 0; i < values_.size(); ++i) s[i] = static_cast<char>('0' + values_[i]);
  return s;
}

bool lexicographically_less(const Pattern& a, const Pattern& b) {
  return std::lexicographical_compare(a.values().begin(), a.values().end(), b.values().begin(),
                                      b.values().end());
}

std::size_t content_hash(const Pattern& p) noexcept {
  auto v = p.values();
  std::string_view bytes(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(Symbol));
  return std::hash<std::string_view>{}(bytes);
}

PatternSet::PatternSet(Box support, std::uint32_t alphabet)
    : support_(std::move(support)), alphabet_(alphabet) {}

bool PatternSet::insert(Pattern p) {
  if (!(p.support() == support_) || p.alphabet() != alphabet_) {
    throw InvalidArgument("pattern does not match the set's support and alphabet");
  }
  if (find(p)) return false;
  by_hash_.emplace(content_hash(p), members_.size());
  members_.push_back(std::move(p));
  return true;
}

std::optional<std::size_t> PatternSet::find(const Pattern& p) const {
  auto [lo, hi] = by_hash_.equal_range(content_hash(p));
  for (auto it = lo; it != hi; ++it) {
    if (members_[it->second].values().size() == p.size() &&
        std::equal(p.values().begin(), p.values().end(), members_[it->second].values().begin())) {
      return it->second;
    }
  }
  return std::nullopt;
}

OccurrenceQuery::OccurrenceQuery(Point center, Sublattice lattice) {
  if (static_cast<int>(center.size()) != lattice.dimension()) {
    throw InvalidArgument("query center and lattice differ in dimension");
  }
  class_.emplace(std::move(center), std::move(lattice));
}

Pattern restrict(const Pattern& b, const Box& a1) {
  if (!b.support().contains(a1)) throw InvalidArgument("restriction box not inside support");
  std::vector<Symbol> values;
  values.reserve(a1.cell_count());
  for_each_point(a1, [&](const Point& p) { values.push_back(b.at(p)); });
  return Pattern(a1, b.alphabet(), std::move(values));
}

Pattern translate(const Pattern& b, const Point& g) {
  return Pattern(b.support().translated(g), b.alphabet(),
                 std::vector<Symbol>(b.values().begin(), b.values().end()));
}

namespace {

struct Scan {
  int d = 0;
  std::vector<Coord> lo, hi, step;  // translation range per axis, inclusive hi
  std::vector<std::size_t> s1, s2;
  std::vector<Coord> rows;           // b1 extents on all but the last axis
  Coord row_len = 0;
  bool empty = false;
};

Scan plan(const Pattern& b1, const Pattern& b2, const OccurrenceQuery& q) {
  if (b1.alphabet() != b2.alphabet()) throw InvalidArgument("alphabet mismatch");
  if (b1.dimension() != b2.dimension()) throw InvalidArgument("dimension mismatch");
  if (b1.support().empty()) throw InvalidArgument("occurrence of an empty pattern");
  if (q.constrained() && q.lattice().dimension() != b1.dimension()) {
    throw InvalidArgument("query lattice has wrong dimension");
  }
  Scan s;
  s.d = b1.dimension();
  const auto& A1 = b1.support();
  const auto& A2 = b2.support();
  for (int i = 0; i < s.d; ++i) {
    const auto a = static_cast<std::size_t>(i);
    Coord lo = A2.corner()[a] - A1.corner()[a];
    Coord hi = A2.corner()[a] + A2.extents()[a] - A1.extents()[a] - A1.corner()[a];
    Coord step = 1;
    if (q.constrained()) {
      step = q.lattice().modulus();
      // first g >= lo with A1.corner + g == center (mod m)
      lo += floor_mod(q.center()[a] - (A1.corner()[a] + lo), step);
    }
    if (lo > hi) s.empty = true;
    s.lo.push_back(lo);
    s.hi.push_back(hi);
    s.step.push_back(step);
  }
  s.s1 = A1.strides();
  s.s2 = A2.strides();
  s.rows.assign(A1.extents().begin(), A1.extents().end() - 1);
  s.row_len = A1.extents().back();
  return s;
}

// Tests the translation whose offset into b2 is base (cell of A1.corner + g).
bool matches(const Scan& s, const Symbol* v1, const Symbol* v2, std::size_t base) {
  const int outer = s.d - 1;
  if (outer == 0) return std::equal(v1, v1 + s.row_len, v2 + base);
  std::vector<Coord> r(static_cast<std::size_t>(outer), 0);
  while (true) {
    std::size_t o1 = 0, o2 = base;
    for (int i = 0; i < outer; ++i) {
      o1 += static_cast<std::size_t>(r[static_cast<std::size_t>(i)]) * s.s1[static_cast<std::size_t>(i)];
      o2 += static_cast<std::size_t>(r[static_cast<std::size_t>(i)]) * s.s2[static_cast<std::size_t>(i)];
    }
    if (!std::equal(v1 + o1, v1 + o1 + s.row_len, v2 + o2)) return false;
    int axis = outer - 1;
    while (axis >= 0) {
      const auto a = static_cast<std::size_t>(axis);
      if (++r[a] < s.rows[a]) break;
      r[a] = 0;
      --axis;
    }
    if (axis < 0) return true;
  }
}

// Visits matching translations with first coordinate in [first_lo, first_hi].
template <class Fn>
void scan_range(const Scan& s, const Pattern& b1, const Pattern& b2, Coord first_lo,
                Coord first_hi, Fn&& fn) {
  const Symbol* v1 = b1.values().data();
  const Symbol* v2 = b2.values().data();
  const auto& c1 = b1.support().corner();
  const auto& c2 = b2.support().corner();
  Point g(s.lo);
  g[0] = first_lo;
  if (g[0] > first_hi) return;
  while (true) {
    std::size_t base = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      base += static_cast<std::size_t>(c1[i] + g[i] - c2[i]) * s.s2[i];
    }
    if (matches(s, v1, v2, base)) fn(static_cast<const Point&>(g));
    int axis = s.d - 1;
    while (axis >= 0) {
      const auto a = static_cast<std::size_t>(axis);
      g[a] += s.step[a];
      if (axis == 0 ? g[a] <= first_hi : g[a] <= s.hi[a]) break;
      g[a] = s.lo[a];
      --axis;
    }
    if (axis < 0) return;
  }
}

}  // namespace

std::vector<Point> occurrences(const Pattern& b1, const Pattern& b2, const OccurrenceQuery& query,
                               unsigned threads) {
  Scan s = plan(b1, b2, query);
  std::vector<Point> out;
  if (s.empty) return out;
  const Coord lines = (s.hi[0] - s.lo[0]) / s.step[0] + 1;
  const Coord parts = std::clamp<Coord>(static_cast<Coord>(std::max(1u, threads)), 1, lines);
  if (parts == 1) {
    scan_range(s, b1, b2, s.lo[0], s.hi[0], [&](const Point& g) { out.push_back(g); });
    return out;
  }
  std::vector<std::vector<Point>> pieces(static_cast<std::size_t>(parts));
  std::vector<std::thread> pool;
  for (Coord t = 0; t < parts; ++t) {
    const Coord from = lines * t / parts, to = lines * (t + 1) / parts;
    pool.emplace_back([&, t, from, to] {
      scan_range(s, b1, b2, s.lo[0] + from * s.step[0], s.lo[0] + (to - 1) * s.step[0],
                 [&](const Point& g) { pieces[static_cast<std::size_t>(t)].push_back(g); });
    });
  }
  for (auto& th : pool) th.join();
  for (auto& p : pieces) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::uint64_t count_occurrences(const Pattern& b1, const Pattern& b2, const OccurrenceQuery& query) {
  Scan s = plan(b1, b2, query);
  std::uint64_t n = 0;
  if (s.empty) return 0;
  scan_range(s, b1, b2, s.lo[0], s.hi[0], [&](const Point&) { ++n; });
  return n;
}

Rational frequency(const Pattern& b1, const Pattern& b2, const OccurrenceQuery& query) {
  if (b2.support().empty()) throw InvalidArgument("frequency in an empty pattern");
  return Rational(BigInt(count_occurrences(b1, b2, query)), BigInt(b2.support().cell_count()));
}

Pattern flatten(const Pattern& w, const PatternSet& blocks) {
  if (w.alphabet() != blocks.size()) {
    throw InvalidArgument("word alphabet " + std::to_string(w.alphabet()) + " differs from " +
                          std::to_string(blocks.size()) + " blocks");
  }
  const Box& bs = blocks.support();
  if (!bs.is_cube() || bs.dimension() != w.dimension()) {
    throw InvalidArgument("blocks must be cubes of the word's dimension");
  }
  const Coord n = bs.side();
  Point corner = w.support().corner();
  std::vector<Coord> ext = w.support().extents();
  for (auto& c : corner) c *= n;
  for (auto& e : ext) e *= n;
  Box out_box(corner, ext);
  std::vector<Symbol> values(out_box.cell_count());
  const auto so = out_box.strides();
  const Box unit = Box::cube(w.dimension(), n);
  std::size_t idx = 0;
  for_each_point(w.support(), [&](const Point& g) {
    const Pattern& blk = blocks[w[idx++]];
    std::size_t base = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      base += static_cast<std::size_t>((g[i] - w.support().corner()[i]) * n) * so[i];
    }
    std::size_t h = 0;
    for_each_point(unit, [&](const Point& p) {
      std::size_t o = base;
      for (std::size_t i = 0; i < p.size(); ++i) o += static_cast<std::size_t>(p[i]) * so[i];
      values[o] = blk[h++];
    });
  });
  return Pattern(std::move(out_box), blocks.alphabet(), std::move(values));
}

std::string to_text(const Pattern& p) {
  const Box& b = p.support();
  const Coord n = b.side();
  std::ostringstream os;
  os << b.dimension() << ' ' << n << ' ' << p.alphabet();
  for (Coord c : b.corner()) os << ' ' << c;
  os << '\n';
  const std::string digits = p.digits();
  const auto rows = n == 0 ? std::size_t{0} : digits.size() / static_cast<std::size_t>(n);
  for (std::size_t r = 0; r < rows; ++r) {
    os << std::string_view(digits).substr(r * static_cast<std::size_t>(n), static_cast<std::size_t>(n))
       << '\n';
  }
  return os.str();
}

Pattern pattern_from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  int d = 0;
  Coord n = 0;
  std::uint32_t c = 0;
  if (!(is >> d >> n >> c) || d < 1 || n < 0) throw FormatError("bad pattern header");
  Point corner(static_cast<std::size_t>(d));
  for (auto& x : corner) {
    if (!(is >> x)) throw FormatError("bad pattern corner");
  }
  Box box = Box::cube(corner, n);
  std::string digits, line;
  while (is >> line) digits += line;
  if (digits.size() != box.cell_count()) throw FormatError("pattern body has wrong length");
  try {
    return Pattern::from_digits(digits, std::move(box), c);
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
}

}  // namespace subshift
