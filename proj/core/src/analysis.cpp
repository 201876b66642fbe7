#include "subshift/analysis.hpp"

#include <cmath>
#include <sstream>

#include "subshift/error.hpp"
#include "rng.hpp"

namespace subshift {
namespace {

Decimal to_decimal(const BigInt& x) { return Decimal(x.str()); }

Decimal log_of(const BigInt& x) {
  if (x <= 0) throw InvalidArgument("log of a non-positive count");
  const auto bits = boost::multiprecision::msb(x);
  if (bits <= 160) return boost::multiprecision::log(to_decimal(x));
  const auto shift = bits - 160;
  return boost::multiprecision::log(to_decimal(x >> shift)) +
         Decimal(shift) * boost::multiprecision::log(Decimal(2));
}

BigInt floor_decimal(const Decimal& x) {
  std::string s = Decimal(boost::multiprecision::floor(x)).str(0, std::ios_base::fixed);
  if (auto dot = s.find('.'); dot != std::string::npos) s.erase(dot);
  return BigInt(s);
}

BigInt power(Coord base, int d) {
  BigInt r = 1;
  for (int i = 0; i < d; ++i) r *= base;
  return r;
}

}  // namespace

std::string to_string(const Decimal& x, int digits) { return x.str(digits); }

EntropyLedger entropy_bounds(int d, const std::vector<Coord>& sides,
                             const std::vector<BigInt>& counts, const std::vector<Coord>& block_axis,
                             const std::vector<Rational>& nu) {
  if (sides.empty() || sides.size() != counts.size()) throw InvalidArgument("empty or ragged stage data");
  if (block_axis.size() + 1 < sides.size() || nu.size() + 1 < sides.size()) {
    throw InvalidArgument("step data shorter than the stage list");
  }
  EntropyLedger ledger;
  ledger.d = d;
  const Decimal log2 = boost::multiprecision::log(Decimal(2));
  const BigInt scale = boost::multiprecision::pow(BigInt(10), kDecimalDigits);
  Decimal product = 1;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    EntropyEntry e;
    e.k = static_cast<int>(i + 1);
    e.n = sides[i];
    e.count = counts[i];
    const Decimal cells = to_decimal(power(sides[i], d));
    e.value = log_of(counts[i]) / cells;
    const BigInt units = floor_decimal(e.value * to_decimal(scale));
    e.lower = Rational(units - 1, scale);
    e.upper = Rational(units + 2, scale);
    if (i > 0) {
      const Rational keep = 1 - nu[i - 1];
      const Decimal one_minus = to_decimal(boost::multiprecision::numerator(keep)) /
                                to_decimal(boost::multiprecision::denominator(keep));
      product *= boost::multiprecision::pow(one_minus, d + 1);
      if (counts[i - 1] > 1) {
        e.effective_nu = Decimal(1) - log_of(counts[i]) /
                                          (to_decimal(power(block_axis[i - 1], d)) * log_of(counts[i - 1]));
      }
    }
    e.target = product * log2;
    ledger.entries.push_back(std::move(e));
  }
  return ledger;
}

EntropyLedger entropy_bounds(const std::vector<Stage>& stages) {
  if (stages.empty()) throw InvalidArgument("no stages");
  std::vector<Coord> sides, axis;
  std::vector<BigInt> counts;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const Stage& s = stages[i];
    if (s.k != static_cast<int>(i + 1) || s.d != stages[0].d) {
      throw InvalidArgument("stages must run k = 1, 2, ... in one dimension");
    }
    if (s.patterns.empty()) throw InvalidArgument("stage " + std::to_string(s.k) + " is empty");
    sides.push_back(s.n);
    counts.emplace_back(s.patterns.size());
  }
  const Stage& last = stages.back();
  for (int j = 1; j < last.k; ++j) axis.push_back(step_geometry(last, j).L);
  return entropy_bounds(last.d, sides, counts, axis, last.nu_schedule);
}

std::vector<ScheduleEntry> schedule_check(const std::vector<Stage>& stages) {
  std::vector<ScheduleEntry> out;
  const Decimal ln10 = boost::multiprecision::log(Decimal(10));
  for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
    const Stage& lo = stages[i];
    const Stage& hi = stages[i + 1];
    if (hi.k != lo.k + 1) throw InvalidArgument("stages are not consecutive");
    ScheduleEntry e;
    e.k = lo.k;
    e.nu = hi.nu_schedule.at(static_cast<std::size_t>(lo.k - 1));
    e.n_next = hi.n;
    e.vii = e.nu * hi.n >= 1;
    e.achieved = hi.patterns.size();
    const BigInt base = lo.patterns.size();
    const BigInt blocks = power(step_geometry(hi, lo.k).L, lo.d);
    const BigInt p = boost::multiprecision::numerator(e.nu);
    const BigInt q = boost::multiprecision::denominator(e.nu);
    const Decimal log_base = base > 0 ? log_of(base) : Decimal(0);
    e.required_log10 = to_decimal(blocks * (q - p)) / to_decimal(q) * log_base / ln10;
    // |C_{k+1}|^q >= |C_k|^{(lm)^d (q - p)}, exactly when the powers are small enough
    const BigInt exponent = blocks * (q - p);
    const double bits = static_cast<double>(exponent) * std::log2(std::max(1.0, static_cast<double>(base)));
    if (base <= 1) {
      e.viii = e.achieved >= 1;
    } else if (e.achieved == 0) {
      e.viii = false;
    } else if (bits < 4.0e6 && q < 1000000) {
      e.viii = boost::multiprecision::pow(e.achieved, static_cast<unsigned>(q)) >=
               boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
    } else {
      e.exact = false;
      e.viii = to_decimal(q) * log_of(e.achieved) >= to_decimal(exponent) * log_base;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::pair<Rational, Rational> alpha_beta(const Stage& s, const Pattern& b_a, const Sublattice& f) {
  if (b_a.dimension() != s.d || f.dimension() != s.d) throw InvalidArgument("dimension mismatch");
  for (Coord e : b_a.support().extents()) {
    if (e > s.n) throw InvalidArgument("pattern larger than the stage support");
  }
  if (s.patterns.empty()) throw InvalidArgument("stage has no patterns");
  bool first = true;
  Rational lo = 0, hi = 0;
  const auto classes = residues(f);
  for (const Pattern& w : s.patterns) {
    // the pattern's own position does not matter, only its values
    const Pattern placed = translate(b_a, [&] {
      Point g(b_a.support().corner().size());
      for (std::size_t i = 0; i < g.size(); ++i) g[i] = -b_a.support().corner()[i];
      return g;
    }());
    for (const Point& r : classes) {
      Rational fr = frequency(placed, w, OccurrenceQuery(r, f));
      if (first || fr < lo) lo = fr;
      if (first || fr > hi) hi = fr;
      first = false;
    }
  }
  return {lo, hi};
}

bool GapReport::any_flagged() const noexcept {
  for (const auto& e : entries) {
    if (e.flagged) return true;
  }
  return false;
}

Rational boundary_correction(const Stage& s, const std::vector<Coord>& extents) {
  if (s.k < 2) throw InvalidArgument("boundary correction needs k >= 2");
  if (static_cast<int>(extents.size()) != s.d) throw InvalidArgument("dimension mismatch");
  const StepGeometry g = step_geometry(s, s.k - 1);
  BigInt valid = 1, inside = 1;
  for (Coord e : extents) {
    valid *= std::max<Coord>(0, s.n - e + 1);
    inside *= (g.L - 1) * std::max<Coord>(0, g.n_k - e + 1);
  }
  return Rational(valid - inside, power(s.n, s.d));
}

GapReport gap_series(const std::vector<Stage>& stages, const Pattern& b_a, const Sublattice& f) {
  GapReport report;
  for (const Stage& s : stages) {
    GapEntry e;
    e.k = s.k;
    std::tie(e.alpha, e.beta) = alpha_beta(s, b_a, f);
    e.gap = e.beta - e.alpha;
    if (s.k >= 2) {
      e.bound = 2 * s.d_tolerances.at(static_cast<std::size_t>(s.k - 2));
      e.correction = boundary_correction(s, b_a.support().extents());
      e.flagged = e.gap > *e.bound + *e.correction;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

LlnResult lln_fraction(int d, Coord n, const Rational& eps, const Sublattice& f,
                       std::uint32_t alphabet, LlnMode mode, std::uint64_t trials,
                       std::uint64_t seed) {
  if (d < 1 || n < 1 || alphabet < 2 || f.dimension() != d) throw InvalidArgument("bad LLN parameters");
  if (eps < 0) throw InvalidArgument("eps must be non-negative");
  const Box box = Box::cube(d, n);
  const std::uint64_t cells = box.cell_count();
  const std::uint64_t classes = index(f);
  std::vector<std::size_t> cls(cells);
  {
    std::size_t i = 0;
    for_each_point(box, [&](const Point& p) { cls[i++] = residue_index(p, f); });
  }
  // |count * c * idx - n^d| * q < p * n^d * c * idx
  const BigInt p = boost::multiprecision::numerator(eps);
  const BigInt q = boost::multiprecision::denominator(eps);
  const BigInt nd = cells;
  const BigInt cidx = BigInt(alphabet) * classes;
  std::vector<char> ok_count(cells + 1);
  for (std::uint64_t c = 0; c <= cells; ++c) {
    BigInt diff = BigInt(c) * cidx - nd;
    if (diff < 0) diff = -diff;
    ok_count[c] = diff * q < p * nd * cidx;
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(alphabet) * classes, 0);
  auto good = [&] {
    for (std::uint64_t c : counts) {
      if (!ok_count[c]) return false;
    }
    return true;
  };

  LlnResult r;
  r.mode = mode;
  if (mode == LlnMode::Exhaustive) {
    const double size = std::pow(static_cast<double>(alphabet), static_cast<double>(cells));
    if (size > 16777216.0) throw InvalidArgument("exhaustive enumeration capped at 2^24 words");
    std::vector<std::uint32_t> word(cells, 0);
    for (std::size_t i = 0; i < cells; ++i) ++counts[cls[i]];
    std::uint64_t hits = 0, total = 0;
    while (true) {
      ++total;
      if (good()) ++hits;
      std::size_t i = cells;
      while (i-- > 0) {
        --counts[word[i] * classes + cls[i]];
        if (++word[i] < alphabet) {
          ++counts[word[i] * classes + cls[i]];
          break;
        }
        word[i] = 0;
        ++counts[cls[i]];
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
    r.words = total;
    r.hits = hits;
    r.exact = Rational(BigInt(hits), BigInt(total));
    r.estimate = static_cast<double>(hits) / static_cast<double>(total);
    return r;
  }
  if (trials == 0) throw InvalidArgument("Monte Carlo needs a positive trial count");
  auto rng = detail::make_rng(seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d), 3);
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < cells; ++i) {
      ++counts[detail::bounded(rng, alphabet) * classes + cls[i]];
    }
    if (good()) ++r.hits;
  }
  r.words = trials;
  r.estimate = static_cast<double>(r.hits) / static_cast<double>(trials);
  r.standard_error = std::sqrt(r.estimate * (1 - r.estimate) / static_cast<double>(trials));
  return r;
}

}  // namespace subshift
