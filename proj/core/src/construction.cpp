#include "subshift/construction.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "subshift/error.hpp"
#include "subshift/hierarchy.hpp"
#include "rng.hpp"

namespace subshift {

std::string to_string(FillRule rule) {
  switch (rule) {
    case FillRule::AllZero: return "ALL_ZERO";
    case FillRule::AllOne: return "ALL_ONE";
    case FillRule::Random: return "RANDOM";
    case FillRule::Explicit: return "EXPLICIT";
  }
  return "ALL_ZERO";
}

FillRule parse_fill_rule(std::string_view text) {
  std::string t;
  for (char c : text) t += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (t == "ALL_ZERO") return FillRule::AllZero;
  if (t == "ALL_ONE") return FillRule::AllOne;
  if (t == "RANDOM") return FillRule::Random;
  if (t == "EXPLICIT") return FillRule::Explicit;
  throw FormatError("unknown fill rule '" + std::string(text) + "'");
}

Point StepGeometry::block_origin(const Point& g) const {
  Point o(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) o[i] = block_origin(g[i]);
  return o;
}

std::vector<Coord> side_schedule(const Stage& s) {
  std::vector<Coord> n{1};
  for (int j = 1; j < s.k; ++j) {
    n.push_back(s.l_schedule.at(static_cast<std::size_t>(j - 1)) *
                    s.m_schedule.at(static_cast<std::size_t>(j)) * n.back() + 1);
  }
  return n;
}

StepGeometry step_geometry(const Stage& s, int j) {
  if (j < 1 || j >= s.k) throw InvalidArgument("step index outside the stage range");
  const auto n = side_schedule(s);
  const auto a = static_cast<std::size_t>(j - 1);
  return StepGeometry{s.d, n[a], s.l_schedule.at(a) * s.m_schedule.at(a + 1)};
}

StepGeometry next_geometry(const Stage& s, const StageParams& p) {
  if (p.l < 1 || p.m_next < 1) throw InvalidArgument("l and m must be positive");
  return StepGeometry{s.d, s.n, p.l * p.m_next};
}

CountWindow count_window(int d, Coord L, Coord m_k, std::uint64_t alphabet, const Rational& d_tol,
                         const Rational& sigma) {
  CountWindow w;
  w.region = L < 1 ? 0 : Box::cube(d, L - 1).cell_count();
  const Rational scale = Rational(BigInt(w.region)) /
                         Rational(BigInt(index(Sublattice(d, m_k))) * BigInt(alphabet));
  const Rational ds = d_tol * sigma;
  w.lo = ceil((1 - ds) * scale);
  if (w.lo < 0) w.lo = 0;
  w.hi = floor((1 + ds) * scale);
  return w;
}

std::string describe(const AdmissibilityResult& r) {
  if (r.ok) return "admissible";
  std::ostringstream os;
  os << (r.reason == AdmissibilityReason::Coverage ? "(v) symbol " : "(vi) symbol ") << r.symbol
     << " residue " << r.residue << " count " << r.count;
  return os.str();
}

AdmissibilityResult check_block_word(std::span<const std::uint32_t> word, int d, Coord L,
                                     Coord m_k, std::uint32_t alphabet, const CountWindow& window) {
  const auto counts = block_counts(word, d, L, m_k, alphabet);
  const std::size_t classes = index(Sublattice(d, m_k));
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) {
      return {false, AdmissibilityReason::Coverage, static_cast<std::uint32_t>(i / classes),
              i % classes, 0};
    }
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < window.lo || counts[i] > window.hi) {
      return {false, AdmissibilityReason::Frequency, static_cast<std::uint32_t>(i / classes),
              i % classes, counts[i]};
    }
  }
  return {};
}

Stage init_stage(int d) {
  if (d < 1) throw InvalidArgument("dimension must be positive");
  Stage s;
  s.k = 1;
  s.d = d;
  s.n = 1;
  s.m = 1;
  s.patterns = PatternSet(Box::cube(d, 1), 2);
  s.patterns.insert(Pattern::filled(Box::cube(d, 1), 2, 0));
  s.patterns.insert(Pattern::filled(Box::cube(d, 1), 2, 1));
  s.m_schedule = {1};
  s.counts = {2};
  return s;
}

namespace {

void check_params(const Stage& s, const StageParams& p) {
  if (s.patterns.empty()) throw InvalidArgument("stage has no patterns");
  if (p.l < 1) throw InvalidArgument("l_k must be positive");
  if (p.m_next <= s.m) throw InvalidArgument("m_{k+1} must exceed m_k");
  if (p.d_tol <= 0 || p.d_tol >= 1) throw InvalidArgument("d_k must lie in (0,1)");
  if (p.nu <= 0 || p.nu >= 1) throw InvalidArgument("nu_k must lie in (0,1)");
  if (p.slack <= 0 || p.slack > 1) throw InvalidArgument("slack must lie in (0,1]");
  if (p.target_count < 1) throw InvalidArgument("target count must be positive");
  if (p.candidate_budget < p.target_count) throw InvalidArgument("budget must be at least the target");
  if (std::gcd(s.n, s.m) != 1) throw InvalidArgument("gcd(n_k, m_k) must be 1");
}

// Necessary conditions for (v)/(vi) to be satisfiable at all.
void check_satisfiable(const Stage& s, const StageParams& p) {
  const StepGeometry g = next_geometry(s, p);
  const auto c = static_cast<std::uint32_t>(s.patterns.size());
  const CountWindow w = count_window(s.d, g.L, s.m, c, p.d_tol, p.slack);
  const std::uint64_t classes = index(Sublattice(s.d, s.m));
  std::ostringstream why;
  if (w.region < classes * c) {
    why << "(v) needs " << classes * c << " (symbol, residue) pairs in " << w.region
        << " block positions";
  } else if (std::max<BigInt>(w.lo, 1) > w.hi) {
    why << "(vi) count window [" << w.lo << ", " << w.hi << "] is empty";
  } else {
    // each residue class must split into c counts inside the window
    std::vector<Coord> per_axis(static_cast<std::size_t>(s.m), 0);
    for (Coord x = 0; x < g.L - 1; ++x) ++per_axis[static_cast<std::size_t>(x % s.m)];
    for (const Point& r : residues(Sublattice(s.d, s.m))) {
      BigInt size = 1;
      for (Coord ri : r) size *= per_axis[static_cast<std::size_t>(ri)];
      if (size < w.lo * c || size > w.hi * c) {
        why << "(vi) residue class of size " << size << " cannot split into " << c
            << " counts within [" << w.lo << ", " << w.hi << "]";
        break;
      }
    }
  }
  if (!why.str().empty()) {
    throw UnsatisfiableError("stage " + std::to_string(s.k + 1) + " unsatisfiable at L = " +
                             std::to_string(g.L) + ": " + why.str());
  }
}

std::vector<std::uint32_t> as_word(const Pattern& w) {
  return std::vector<std::uint32_t>(w.values().begin(), w.values().end());
}

}  // namespace

Pattern sample_candidate(const Stage& s, const StageParams& p, std::uint64_t draw_index) {
  const StepGeometry g = next_geometry(s, p);
  const auto c = static_cast<std::uint32_t>(s.patterns.size());
  if (c < 2) throw InvalidArgument("sampling needs at least two blocks");
  auto rng = detail::make_rng(p.seed, static_cast<std::uint64_t>(s.k), draw_index, 0);
  Box box = Box::cube(s.d, g.L);
  std::vector<Symbol> values(box.cell_count());
  for (auto& v : values) v = static_cast<Symbol>(detail::bounded(rng, c));
  return Pattern(std::move(box), c, std::move(values));
}

AdmissibilityResult admissible(const Pattern& w, const Stage& s, const StageParams& p) {
  const StepGeometry g = next_geometry(s, p);
  const auto c = static_cast<std::uint32_t>(s.patterns.size());
  if (!(w.support() == Box::cube(s.d, g.L)) || w.alphabet() != c) {
    throw InvalidArgument("candidate does not match the step geometry");
  }
  const CountWindow window = count_window(s.d, g.L, s.m, c, p.d_tol, p.slack);
  return check_block_word(as_word(w), s.d, g.L, s.m, c, window);
}

Pattern phi(const Pattern& W, const StepGeometry& g) {
  if (!(W.support() == Box::cube(g.d, g.n_next()))) throw InvalidArgument("phi: wrong support");
  Box out = Box::cube(g.d, g.n_next() - 1);
  std::vector<Symbol> values;
  values.reserve(out.cell_count());
  Point src(static_cast<std::size_t>(g.d));
  for_each_point(out, [&](const Point& p) {
    for (std::size_t i = 0; i < p.size(); ++i) src[i] = p[i] + g.delta(p[i]);
    values.push_back(W.at(src));
  });
  return Pattern(std::move(out), W.alphabet(), std::move(values));
}

std::uint64_t hyperplane_cells(const StepGeometry& g) {
  return Box::cube(g.d, g.n_next()).cell_count() - Box::cube(g.d, g.n_next() - 1).cell_count();
}

Pattern phi_inverse(const Pattern& wt, const StepGeometry& g, FillRule fill,
                    std::uint64_t fill_seed, std::span<const Symbol> explicit_values) {
  if (!(wt.support() == Box::cube(g.d, g.n_next() - 1))) {
    throw InvalidArgument("phi_inverse: wrong support");
  }
  if (fill == FillRule::Explicit && explicit_values.size() != hyperplane_cells(g)) {
    throw InvalidArgument("explicit fill needs " + std::to_string(hyperplane_cells(g)) + " values");
  }
  auto rng = detail::make_rng(fill_seed, 0, 0, 1);
  const Coord cut = g.cut();
  Box out = Box::cube(g.d, g.n_next());
  std::vector<Symbol> values;
  values.reserve(out.cell_count());
  std::size_t next_explicit = 0;
  Point src(static_cast<std::size_t>(g.d));
  for_each_point(out, [&](const Point& p) {
    bool on_plane = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == cut) on_plane = true;
      src[i] = p[i] > cut ? p[i] - 1 : p[i];
    }
    if (!on_plane) {
      values.push_back(wt.at(src));
      return;
    }
    switch (fill) {
      case FillRule::AllZero: values.push_back(0); break;
      case FillRule::AllOne: values.push_back(1); break;
      case FillRule::Random:
        values.push_back(static_cast<Symbol>(detail::bounded(rng, wt.alphabet())));
        break;
      case FillRule::Explicit: values.push_back(explicit_values[next_explicit++]); break;
    }
  });
  return Pattern(std::move(out), wt.alphabet(), std::move(values));
}

Stage build_next(const Stage& s, const StageParams& p, unsigned threads) {
  check_params(s, p);
  check_satisfiable(s, p);
  const StepGeometry g = next_geometry(s, p);
  const auto c = static_cast<std::uint32_t>(s.patterns.size());
  const CountWindow window = count_window(s.d, g.L, s.m, c, p.d_tol, p.slack);
  if (p.fill == FillRule::Explicit && p.explicit_fill.size() != hyperplane_cells(g)) {
    throw InvalidArgument("explicit fill needs " + std::to_string(hyperplane_cells(g)) + " values");
  }

  Stage out;
  out.k = s.k + 1;
  out.d = s.d;
  out.n = g.n_next();
  out.m = p.m_next;
  out.patterns = PatternSet(Box::cube(s.d, out.n), 2);
  out.m_schedule = s.m_schedule;
  out.m_schedule.push_back(p.m_next);
  out.l_schedule = s.l_schedule;
  out.l_schedule.push_back(p.l);
  out.d_tolerances = s.d_tolerances;
  out.d_tolerances.push_back(p.d_tol);
  out.nu_schedule = s.nu_schedule;
  out.nu_schedule.push_back(p.nu);
  out.slack = p.slack;
  out.seed = p.seed;
  out.fill = p.fill;
  out.counts = s.counts;

  PatternSet words(Box::cube(s.d, g.L), c);
  threads = std::max(1u, threads);
  const std::uint64_t batch = std::max<std::uint64_t>(64, 16ull * threads);
  std::uint64_t next = 0;
  bool done = false;
  while (!done && next < p.candidate_budget) {
    const std::uint64_t size = std::min(batch, p.candidate_budget - next);
    std::vector<std::optional<Pattern>> accepted(size);
    auto work = [&](unsigned t) {
      for (std::uint64_t i = t; i < size; i += threads) {
        Pattern w = sample_candidate(s, p, next + i);
        if (check_block_word(as_word(w), s.d, g.L, s.m, c, window)) accepted[i] = std::move(w);
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (std::uint64_t i = 0; i < size; ++i) {
      ++out.draws;
      if (accepted[i]) {
        ++out.admissible_draws;
        if (words.insert(*accepted[i])) {
          const std::uint64_t fill_seed = detail::make_rng(p.seed, s.k, next + i, 2)();
          out.patterns.insert(phi_inverse(flatten(*accepted[i], s.patterns), g, p.fill, fill_seed,
                                          p.explicit_fill));
        }
      }
      if (out.patterns.size() == p.target_count) {
        done = true;
        break;
      }
    }
    next += size;
  }
  out.counts.push_back(out.patterns.size());
  out.complete = out.patterns.size() == p.target_count;
  return out;
}

StageReport verify_stage_pair(const Stage& lower, const Stage& next) {
  if (next.k != lower.k + 1 || next.d != lower.d) {
    throw InvalidArgument("stages are not consecutive");
  }
  const auto k = static_cast<std::size_t>(lower.k);
  if (next.m_schedule.size() != k + 1 || next.l_schedule.size() != k ||
      next.d_tolerances.size() != k || next.nu_schedule.size() != k ||
      lower.m_schedule.size() != k || lower.l_schedule.size() != k - 1 ||
      !std::equal(lower.m_schedule.begin(), lower.m_schedule.end(), next.m_schedule.begin()) ||
      !std::equal(lower.l_schedule.begin(), lower.l_schedule.end(), next.l_schedule.begin())) {
    throw InvalidArgument("stage schedules are inconsistent");
  }
  if (lower.n != side_schedule(lower).back() || lower.m != lower.m_schedule.back() ||
      next.m != next.m_schedule.back()) {
    throw InvalidArgument("stage " + std::to_string(lower.k) + " geometry does not match its schedules");
  }
  const StepGeometry g = step_geometry(next, lower.k);
  if (next.n != g.n_next()) {
    throw InvalidArgument("n_" + std::to_string(next.k) + " = " + std::to_string(next.n) +
                          " but the recursion gives " + std::to_string(g.n_next()));
  }
  if (!(next.patterns.support() == Box::cube(next.d, next.n)) ||
      !(lower.patterns.support() == Box::cube(lower.d, lower.n))) {
    throw InvalidArgument("pattern supports do not match n");
  }

  StageReport report;
  auto fail = [&](bool& flag, std::string what) {
    flag = false;
    report.counterexamples.push_back(std::move(what));
  };
  if (std::gcd(lower.n, lower.m) != 1) fail(report.gcd, "(iv) gcd(n_k, m_k) != 1");
  if (std::gcd(next.n, next.m) != 1) fail(report.gcd, "(iv) gcd(n_{k+1}, m_{k+1}) != 1");
  if (next.m <= lower.m) fail(report.gcd, "m schedule is not increasing");
  if (next.patterns.empty()) fail(report.concatenation, "(iii) C_{k+1} is empty");
  if (next.counts.size() != k + 1 || next.counts.back() != next.patterns.size()) {
    fail(report.concatenation, "recorded counts do not match the stored patterns");
  }

  const BlockIndex idx(lower);
  const auto c = idx.size();
  const CountWindow window =
      count_window(next.d, g.L, lower.m, c, next.d_tolerances.back(), next.slack);
  const std::size_t classes = index(Sublattice(next.d, lower.m));
  const Box core = Box::cube(next.d, next.n - lower.n - 1);
  bool first = true;
  for (std::size_t w = 0; w < next.patterns.size(); ++w) {
    const Pattern& W = next.patterns[w];
    const auto symbols = decompose(W, Point(static_cast<std::size_t>(next.d), 0), g, idx);
    for (std::size_t b = 0; b < symbols.size(); ++b) {
      if (symbols[b] == c) {
        std::ostringstream os;
        os << "(iii) pattern " << w << ": sub-block " << b << " is not a C_" << lower.k << " block";
        fail(report.concatenation, os.str());
        break;
      }
    }
    const Pattern reduced = phi(W, g);
    bool agree = true;
    for_each_point(core, [&](const Point& p) { agree = agree && reduced.at(p) == W.at(p); });
    if (!agree) fail(report.coincidence, "pattern " + std::to_string(w) + ": Phi moves the core");

    const auto counts = block_counts(symbols, next.d, g.L, lower.m, c);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      Rational f(BigInt(counts[i]), BigInt(window.region));
      if (first || f < report.min_frequency) report.min_frequency = f;
      if (first || f > report.max_frequency) report.max_frequency = f;
      first = false;
    }
    const auto r = check_block_word(symbols, next.d, g.L, lower.m, c, window);
    if (!r.ok) {
      const std::string what = "pattern " + std::to_string(w) + ": " + describe(r);
      fail(r.reason == AdmissibilityReason::Coverage ? report.coverage : report.frequency, what);
      // a coverage failure may hide frequency failures in other classes
      if (r.reason == AdmissibilityReason::Coverage) {
        for (std::size_t i = 0; i < counts.size(); ++i) {
          if (counts[i] > window.hi) {
            fail(report.frequency, "pattern " + std::to_string(w) + ": (vi) symbol " +
                                       std::to_string(i / classes) + " residue " +
                                       std::to_string(i % classes) + " count " +
                                       std::to_string(counts[i]));
            break;
          }
        }
      }
    }
  }
  return report;
}

Pattern window_of_point(const std::vector<Stage>& stages, int K, std::size_t w_choice,
                        const Box& window) {
  auto it = std::find_if(stages.begin(), stages.end(), [K](const Stage& s) { return s.k == K; });
  if (it == stages.end()) throw InvalidArgument("stage " + std::to_string(K) + " not available");
  if (w_choice >= it->patterns.size()) throw InvalidArgument("pattern choice out of range");
  const Pattern& w = it->patterns[w_choice];
  if (w.support().contains(window)) return restrict(w, window);
  Point shift(static_cast<std::size_t>(it->d), -(it->n / 2));
  Pattern centered = translate(w, shift);
  if (centered.support().contains(window)) return restrict(centered, window);
  throw InvalidArgument("window does not fit in a copy of A_" + std::to_string(K));
}

}  // namespace subshift
