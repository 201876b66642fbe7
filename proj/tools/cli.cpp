#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <subshift/subshift.hpp>

namespace subshift::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Thrown for bad flag values after parsing; maps to exit code 2.
struct UsageError : Error {
  using Error::Error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

Coord to_coord(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("not an integer: '" + s + "'");
  }
}

Point parse_point(const std::string& s) {
  Point p;
  for (const auto& part : split(s, ',')) p.push_back(to_coord(part));
  if (p.empty()) throw UsageError("empty point");
  return p;
}

// "c1,...,cd:side" or "c1,...,cd:e1,...,ed"
Box parse_window(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("window must look like 'corner:side', got '" + s + "'");
  Point corner = parse_point(s.substr(0, colon));
  Point ext = parse_point(s.substr(colon + 1));
  if (ext.size() == 1 && corner.size() > 1) ext.assign(corner.size(), ext[0]);
  if (ext.size() != corner.size()) throw UsageError("window corner and extents differ in dimension");
  return Box(std::move(corner), std::move(ext));
}

std::string text_of(const Box& b) {
  std::ostringstream os;
  for (std::size_t i = 0; i < b.corner().size(); ++i) os << (i ? "," : "") << b.corner()[i];
  os << ':';
  for (std::size_t i = 0; i < b.extents().size(); ++i) os << (i ? "," : "") << b.extents()[i];
  return os.str();
}

std::vector<Stage> read_stages(const std::vector<std::string>& files) {
  std::vector<Stage> stages;
  for (const auto& f : files) stages.push_back(read_stage_file(f));
  return stages;
}

void emit(const json& report, const std::string& path, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

json base_report(const char* command) {
  json j;
  j["format"] = kFormatVersion;
  j["command"] = command;
  return j;
}

json point_json(const Point& p) { return json(p); }

// ---- build ----------------------------------------------------------------

struct BuildArgs {
  std::string in, out, out_dir, fill = "all_zero", fill_values;
  int d = 1;
  std::vector<Coord> m, l;
  std::vector<std::string> dk, nu, target, budget;
  std::string slack = "1/2";
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

template <class T>
T pick(const std::vector<T>& v, std::size_t i, const char* flag) {
  if (v.empty()) throw UsageError(std::string("missing ") + flag);
  if (v.size() == 1) return v[0];
  if (i >= v.size()) throw UsageError(std::string(flag) + " has fewer entries than --m");
  return v[i];
}

std::uint64_t to_count(const std::string& s) {
  const Coord v = to_coord(s);
  if (v < 1) throw UsageError("counts must be positive");
  return static_cast<std::uint64_t>(v);
}

int run_build(const BuildArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<Stage> stages;
  stages.push_back(a.in.empty() ? init_stage(a.d) : read_stage_file(a.in));
  if (!a.out_dir.empty()) fs::create_directories(a.out_dir);
  auto save = [&](const Stage& s) {
    if (!a.out_dir.empty()) {
      write_stage_file(fs::path(a.out_dir) / ("stage" + std::to_string(s.k) + ".json"), s);
    }
  };
  save(stages.back());
  json summary = base_report("build");
  summary["stages"] = json::array();
  auto describe_stage = [&](const Stage& s) {
    summary["stages"].push_back({{"k", s.k},
                                 {"n", s.n},
                                 {"count", s.patterns.size()},
                                 {"draws", s.draws},
                                 {"admissible", s.admissible_draws},
                                 {"acceptance", s.acceptance_ratio()},
                                 {"complete", s.complete}});
  };
  describe_stage(stages.back());
  int code = kOk;
  for (std::size_t i = 0; i < a.m.size(); ++i) {
    StageParams p;
    p.m_next = a.m[i];
    p.l = pick(a.l, i, "--l");
    p.d_tol = parse_rational(pick(a.dk, i, "--dk"));
    p.nu = parse_rational(a.nu.empty() ? std::string("1/10") : pick(a.nu, i, "--nu"));
    p.slack = parse_rational(a.slack);
    p.target_count = to_count(pick(a.target, i, "--target"));
    p.candidate_budget = a.budget.empty() ? std::max<std::uint64_t>(1000000, p.target_count)
                                          : to_count(pick(a.budget, i, "--budget"));
    p.seed = a.seed;
    p.fill = parse_fill_rule(a.fill);
    if (p.fill == FillRule::Explicit) {
      for (char c : a.fill_values) {
        if (c != '0' && c != '1') throw UsageError("--fill-values takes a 0/1 string");
        p.explicit_fill.push_back(static_cast<Symbol>(c - '0'));
      }
    }
    Stage next = build_next(stages.back(), p, a.threads);
    stages.push_back(std::move(next));
    save(stages.back());
    describe_stage(stages.back());
    if (!stages.back().complete) {
      err << "stage " << stages.back().k << ": budget exhausted with " << stages.back().patterns.size()
          << " of " << p.target_count << " patterns\n";
      code = kFailed;
      break;
    }
  }
  if (!a.out.empty()) write_stage_file(a.out, stages.back());
  emit(summary, "", out);
  return code;
}

// ---- reports --------------------------------------------------------------

json report_json(const StageReport& r, int k) {
  return {{"k", k},
          {"pass", r.pass()},
          {"concatenation", r.concatenation},
          {"gcd", r.gcd},
          {"coverage", r.coverage},
          {"frequency", r.frequency},
          {"coincidence", r.coincidence},
          {"min_frequency", to_string(r.min_frequency)},
          {"max_frequency", to_string(r.max_frequency)},
          {"counterexamples", r.counterexamples}};
}

json ledger_json(const EntropyLedger& l, const std::vector<ScheduleEntry>& sched) {
  json j = base_report("entropy");
  j["d"] = l.d;
  j["digits"] = kDecimalDigits;
  j["entries"] = json::array();
  for (const auto& e : l.entries) {
    json x = {{"k", e.k},
              {"n", e.n},
              {"count", e.count.str()},
              {"value", to_string(e.value)},
              {"lower", to_string(e.lower)},
              {"upper", to_string(e.upper)},
              {"target", to_string(e.target)}};
    x["effective_nu"] = e.effective_nu ? json(to_string(*e.effective_nu)) : json(nullptr);
    j["entries"].push_back(std::move(x));
  }
  j["schedule"] = json::array();
  for (const auto& s : sched) {
    j["schedule"].push_back({{"k", s.k},
                             {"nu", to_string(s.nu)},
                             {"n_next", s.n_next},
                             {"vii", s.vii},
                             {"achieved", s.achieved.str()},
                             {"required_log10", to_string(s.required_log10, 20)},
                             {"viii", s.viii},
                             {"exact", s.exact}});
  }
  return j;
}

json certificates_json(const EmbedResult& r) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    levels.push_back({{"level", l.level},
                      {"max_changed", l.max_changed},
                      {"budget", l.budget},
                      {"certified", l.certified}});
  }
  return levels;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inductive construction and verification of Z^d subshifts", "subshift"};
  app.require_subcommand(1);
  std::string out_path;
  std::function<int()> action;

  BuildArgs b;
  auto* build = app.add_subcommand("build", "Build the next stage(s) from a stage file or from scratch");
  build->add_option("--in", b.in, "Stage file to extend (default: a fresh stage 1)");
  build->add_option("--d", b.d, "Dimension for a fresh stage 1")->check(CLI::PositiveNumber);
  build->add_option("--m", b.m, "m_{k+1} per step")->delimiter(',');
  build->add_option("--l", b.l, "l_k per step")->delimiter(',');
  build->add_option("--dk", b.dk, "d_k per step (p/q)")->delimiter(',');
  build->add_option("--nu", b.nu, "nu_k per step (default 1/10)")->delimiter(',');
  build->add_option("--slack", b.slack, "Admissibility slack sigma");
  build->add_option("--target", b.target, "Target |C_{k+1}| per step")->delimiter(',');
  build->add_option("--budget", b.budget, "Candidate budget per step")->delimiter(',');
  build->add_option("--seed", b.seed, "64-bit seed");
  build->add_option("--fill", b.fill, "ALL_ZERO, ALL_ONE, RANDOM or EXPLICIT");
  build->add_option("--fill-values", b.fill_values, "Hyperplane values for EXPLICIT fill");
  build->add_option("--threads", b.threads, "Worker threads")->check(CLI::PositiveNumber);
  build->add_option("--out", b.out, "Write the last stage here");
  build->add_option("--out-dir", b.out_dir, "Write every stage as stageK.json here");
  build->callback([&] { action = [&] { return run_build(b, out, err); }; });

  std::vector<std::string> verify_files;
  auto* verify = app.add_subcommand("verify", "Check conditions (iii)-(vi) on consecutive stage files");
  verify->add_option("stages", verify_files, "Stage files in order")->required()->expected(2, -1);
  verify->add_option("--out", out_path, "Report file");
  verify->callback([&] {
    action = [&] {
      const auto stages = read_stages(verify_files);
      json j = base_report("verify");
      j["pairs"] = json::array();
      bool pass = true;
      for (std::size_t i = 0; i + 1 < stages.size(); ++i) {
        const StageReport r = verify_stage_pair(stages[i], stages[i + 1]);
        pass = pass && r.pass();
        j["pairs"].push_back(report_json(r, stages[i + 1].k));
      }
      j["pass"] = pass;
      emit(j, out_path, out);
      if (!pass) err << "verification failed\n";
      return pass ? kOk : kFailed;
    };
  });

  std::vector<std::string> entropy_files;
  auto* entropy = app.add_subcommand("entropy", "Entropy ledger and schedule conditions (vii)/(viii)");
  entropy->add_option("stages", entropy_files, "Stage files k = 1, 2, ...")->required();
  entropy->add_option("--out", out_path, "Report file");
  entropy->callback([&] {
    action = [&] {
      const auto stages = read_stages(entropy_files);
      emit(ledger_json(entropy_bounds(stages), schedule_check(stages)), out_path, out);
      return kOk;
    };
  });

  int lln_d = 1, lln_alphabet = 2;
  Coord lln_n = 8, lln_m = 1;
  std::string lln_eps = "1/10", lln_mode = "exhaustive";
  std::uint64_t lln_trials = 10000, lln_seed = 0;
  auto* lln = app.add_subcommand("lln", "Fraction of words with all symbol frequencies near uniform");
  lln->add_option("--d", lln_d, "Dimension")->check(CLI::PositiveNumber);
  lln->add_option("--n", lln_n, "Side of the box")->check(CLI::PositiveNumber);
  lln->add_option("--eps", lln_eps, "Tolerance (p/q)");
  lln->add_option("--m", lln_m, "Modulus of F")->check(CLI::PositiveNumber);
  lln->add_option("--alphabet", lln_alphabet, "Alphabet size")->check(CLI::Range(2, 65536));
  lln->add_option("--mode", lln_mode, "exhaustive or montecarlo")
      ->check(CLI::IsMember({"exhaustive", "montecarlo"}));
  lln->add_option("--trials", lln_trials, "Monte Carlo trials");
  lln->add_option("--seed", lln_seed, "Monte Carlo seed");
  lln->add_option("--out", out_path, "Report file");
  lln->callback([&] {
    action = [&] {
      const auto mode = lln_mode == "exhaustive" ? LlnMode::Exhaustive : LlnMode::MonteCarlo;
      const auto r = lln_fraction(lln_d, lln_n, parse_rational(lln_eps), Sublattice(lln_d, lln_m),
                                  static_cast<std::uint32_t>(lln_alphabet), mode, lln_trials, lln_seed);
      json j = base_report("lln");
      j["mode"] = lln_mode;
      j["fraction"] = r.exact ? json(to_string(*r.exact)) : json(nullptr);
      j["estimate"] = r.estimate;
      j["standard_error"] = r.standard_error;
      j["words"] = r.words;
      j["hits"] = r.hits;
      emit(j, out_path, out);
      return kOk;
    };
  });

  std::vector<std::string> ab_files;
  std::string ab_pattern;
  Coord ab_m = 1;
  auto* ab = app.add_subcommand("alphabeta", "alpha_k / beta_k gap series for a pattern");
  ab->add_option("stages", ab_files, "Stage files k = 1, 2, ...")->required();
  ab->add_option("--pattern", ab_pattern, "Pattern text file (default: the unit pattern 1)");
  ab->add_option("--m", ab_m, "Modulus of F")->check(CLI::PositiveNumber);
  ab->add_option("--out", out_path, "Report file");
  ab->callback([&] {
    action = [&] {
      const auto stages = read_stages(ab_files);
      const int d = stages.at(0).d;
      const Pattern b = ab_pattern.empty() ? Pattern::filled(Box::cube(d, 1), 2, 1)
                                           : pattern_from_text(read_text_file(ab_pattern));
      const GapReport r = gap_series(stages, b, Sublattice(d, ab_m));
      json j = base_report("alphabeta");
      j["entries"] = json::array();
      for (const auto& e : r.entries) {
        json x = {{"k", e.k}, {"alpha", to_string(e.alpha)}, {"beta", to_string(e.beta)},
                  {"gap", to_string(e.gap)}, {"flagged", e.flagged}};
        x["bound"] = e.bound ? json(to_string(*e.bound)) : json(nullptr);
        x["correction"] = e.correction ? json(to_string(*e.correction)) : json(nullptr);
        j["entries"].push_back(std::move(x));
      }
      j["flagged"] = r.any_flagged();
      emit(j, out_path, out);
      return kOk;
    };
  });

  std::string dens_sparse, dens_window;
  Coord dens_grid = 1, dens_min = 0;
  auto* density = app.add_subcommand("density", "Scanned upper Banach density estimate");
  density->add_option("--sparse", dens_sparse, "Sparse-set file")->required();
  density->add_option("--window", dens_window, "Window 'corner:side'")->required();
  density->add_option("--grid", dens_grid, "Corner grid step")->check(CLI::PositiveNumber);
  density->add_option("--min-side", dens_min, "Smallest rectangle side (0: automatic)");
  density->add_option("--out", out_path, "Report file");
  density->callback([&] {
    action = [&] {
      const SparseSet p = parse_sparse_set(read_text_file(dens_sparse));
      const Box w = parse_window(dens_window);
      json j = base_report("density");
      j["window"] = text_of(w);
      j["points"] = p.count_in(w);
      j["density"] = to_string(banach_density(p, w, DensityScan{dens_grid, dens_min}));
      emit(j, out_path, out);
      return kOk;
    };
  });

  std::vector<std::string> emb_files;
  std::string emb_sparse, emb_assign, emb_base, emb_preserve, emb_pattern_out;
  int emb_k = 0;
  std::optional<std::size_t> emb_template;
  auto* emb = app.add_subcommand("embed", "Write prescribed values on P into a member of C_k");
  emb->add_option("stages", emb_files, "Stage files k = 1, 2, ...")->required();
  emb->add_option("--k", emb_k, "Stage index (default: last)");
  emb->add_option("--sparse", emb_sparse, "Sparse-set file for P")->required();
  emb->add_option("--assign", emb_assign, "Assignment file 'x1 ... xd v'")->required();
  emb->add_option("--g", emb_base, "Base point g0 (comma separated)")->required();
  emb->add_option("--template", emb_template, "Template member index");
  emb->add_option("--preserve", emb_preserve, "Keep this box 'corner:side' untouched");
  emb->add_option("--pattern-out", emb_pattern_out, "Write the word on A_k + g0 in text form");
  emb->add_option("--out", out_path, "Report file");
  emb->callback([&] {
    action = [&] {
      const auto stages = read_stages(emb_files);
      const int k = emb_k > 0 ? emb_k : stages.back().k;
      const SparseSet p = parse_sparse_set(read_text_file(emb_sparse));
      const Assignment a = parse_assignment(read_text_file(emb_assign), parse_point(emb_base));
      EmbedOptions opts;
      opts.template_index = emb_template;
      json j = base_report("embed");
      j["k"] = k;
      j["base"] = point_json(a.base());
      j["membership"] = "passes the admissibility predicate; not necessarily a stored pattern";
      try {
        EmbedResult r;
        if (emb_preserve.empty()) {
          r = embed(stages, k, a, p, opts);
        } else {
          const auto ex = embed_except(stages, k, parse_window(emb_preserve), a, p, opts);
          j["preserved_level"] = ex.preserved_level;
          j["preserved_origin"] = point_json(ex.preserved_origin);
          j["radius"] = ex.radius;
          r = ex.embedded;
        }
        j["template"] = r.template_index;
        j["templates_tried"] = r.templates_tried;
        j["levels"] = certificates_json(r);
        j["certified"] = r.certified;
        j["exact_check"] = r.exact.ok;
        if (!emb_pattern_out.empty()) {
          const Pattern placed = r.placed();
          if (placed.support().is_cube()) write_text_file(emb_pattern_out, to_text(placed));
        }
        emit(j, out_path, out);
        return kOk;
      } catch (const DensityViolation& e) {
        j["error"] = e.what();
        j["level"] = e.level();
        j["changed"] = e.changed_blocks();
        j["budget"] = e.budget();
        emit(j, out_path, out);
        err << e.what() << "\n";
        return kFailed;
      }
    };
  });

  std::vector<std::string> avg_files, avg_radii;
  std::string avg_sparse;
  Coord avg_k0 = 8;
  std::optional<std::size_t> avg_template;
  auto* avg = app.add_subcommand("demo-averages", "Two points with diverging sparse averages");
  avg->add_option("stages", avg_files, "Stage files k = 1, 2, ...")->required();
  avg->add_option("--sparse", avg_sparse, "Sparse-set file for P")->required();
  avg->add_option("--radius", avg_k0, "Preserved radius k0")->check(CLI::PositiveNumber);
  avg->add_option("--radii", avg_radii, "Radii for the series (default: doubling ladder)")->delimiter(',');
  avg->add_option("--template", avg_template, "Template member index");
  avg->add_option("--out", out_path, "Report file");
  avg->callback([&] {
    action = [&] {
      const auto stages = read_stages(avg_files);
      const SparseSet p = parse_sparse_set(read_text_file(avg_sparse));
      std::vector<Coord> radii;
      for (const auto& r : avg_radii) radii.push_back(to_coord(r));
      const auto rep = demo_divergence(stages, p, avg_k0, radii, avg_template);
      json j = base_report("demo-averages");
      auto series = [](const AverageSeries& s) {
        json a = json::array();
        for (const auto& [n, v] : s.values) a.push_back({n, to_string(v)});
        return a;
      };
      j["series0"] = series(rep.series0);
      j["series1"] = series(rep.series1);
      j["preserved_radius"] = rep.preserved_radius;
      j["verified"] = rep.shared_window;
      j["base"] = point_json(rep.base);
      j["template"] = rep.template_index;
      j["radius0"] = rep.radius0;
      j["radius1"] = rep.radius1;
      j["note"] = "finite witness: two points agreeing on (-k0,k0)^d with averages near 0 and near 1";
      emit(j, out_path, out);
      return rep.shared_window ? kOk : kFailed;
    };
  });

  std::vector<std::string> esc_files;
  std::string esc_sparse, esc_g, esc_window;
  std::optional<std::size_t> esc_template;
  auto* esc = app.add_subcommand("demo-escape", "A point whose P-orbit misses its own neighbourhood");
  esc->add_option("stages", esc_files, "Stage files k = 1, 2, ...")->required();
  esc->add_option("--sparse", esc_sparse, "Sparse-set file for P")->required();
  esc->add_option("--escape-set", esc_g, "Sparse-set file for G (disjoint from P)")->required();
  esc->add_option("--window", esc_window, "Window 'corner:side'")->required();
  esc->add_option("--template", esc_template, "Template member index");
  esc->add_option("--out", out_path, "Report file");
  esc->callback([&] {
    action = [&] {
      const auto stages = read_stages(esc_files);
      const SparseSet p = parse_sparse_set(read_text_file(esc_sparse));
      const SparseSet g = parse_sparse_set(read_text_file(esc_g));
      const auto rep = demo_escape(stages, p, g, parse_window(esc_window), {}, esc_template);
      json j = base_report("demo-escape");
      j["window"] = text_of(rep.window);
      j["base"] = point_json(rep.base);
      j["checks"] = json::array();
      for (const auto& c : rep.checks) {
        j["checks"].push_back({{"g", point_json(c.g)}, {"x_g", c.at_g}, {"x_0", c.at_origin}});
      }
      j["verified"] = rep.verified;
      j["flipped"] = rep.flipped ? point_json(*rep.flipped) : json(nullptr);
      j["differences"] = json::array();
      for (const auto& h : rep.differences) j["differences"].push_back(point_json(h));
      j["witness_exact"] = rep.witness_exact;
      emit(j, out_path, out);
      return rep.verified ? kOk : kFailed;
    };
  });

  std::vector<const char*> argv{"subshift"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "subshift: " << e.what() << "\n";
    return kInvalid;
  }
  try {
    return action ? action() : kInvalid;
  } catch (const UsageError& e) {
    err << "subshift: " << e.what() << "\n";
  } catch (const FormatError& e) {
    err << "subshift: malformed input: " << e.what() << "\n";
  } catch (const UnsatisfiableError& e) {
    err << "subshift: " << e.what() << "\n";
  } catch (const InvalidArgument& e) {
    err << "subshift: invalid input: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "subshift: " << e.what() << "\n";
  } catch (const fs::filesystem_error& e) {
    err << "subshift: " << e.what() << "\n";
  }
  return kInvalid;
}

}  // namespace subshift::cli
