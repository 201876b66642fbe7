#include "subshift/stage_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "subshift/error.hpp"

namespace subshift {

using nlohmann::json;

std::string stage_to_json(const Stage& s) {
  json j;
  j["format"] = kFormatVersion;
  j["d"] = s.d;
  j["k"] = s.k;
  j["n"] = s.n;
  j["m_schedule"] = s.m_schedule;
  j["l_schedule"] = s.l_schedule;
  auto rationals = [](const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(to_string(r));
    return a;
  };
  j["d_tolerances"] = rationals(s.d_tolerances);
  j["nu_schedule"] = rationals(s.nu_schedule);
  j["slack"] = to_string(s.slack);
  j["seed"] = s.seed;
  j["fill_rule"] = to_string(s.fill);
  j["counts"] = s.counts;
  j["complete"] = s.complete;
  j["acceptance"] = {{"draws", s.draws}, {"admissible", s.admissible_draws}};
  json patterns = json::array();
  for (const Pattern& p : s.patterns) patterns.push_back(p.digits());
  j["patterns"] = std::move(patterns);
  return j.dump(2) + "\n";
}

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("stage file lacks \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("stage file field \"") + key + "\" has the wrong type");
  }
}

std::vector<Rational> rationals(const json& j, const char* key) {
  std::vector<Rational> out;
  for (const auto& s : field<std::vector<std::string>>(j, key)) out.push_back(parse_rational(s));
  return out;
}

}  // namespace

Stage stage_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("stage file is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("stage file must be a JSON object");
  if (field<int>(j, "format") != kFormatVersion) throw FormatError("unsupported stage file format");
  Stage s;
  s.d = field<int>(j, "d");
  s.k = field<int>(j, "k");
  s.n = field<Coord>(j, "n");
  if (s.d < 1 || s.k < 1 || s.n < 1) throw FormatError("d, k and n must be positive");
  s.m_schedule = field<std::vector<Coord>>(j, "m_schedule");
  s.l_schedule = field<std::vector<Coord>>(j, "l_schedule");
  s.d_tolerances = rationals(j, "d_tolerances");
  s.nu_schedule = rationals(j, "nu_schedule");
  s.slack = parse_rational(field<std::string>(j, "slack"));
  s.seed = field<std::uint64_t>(j, "seed");
  s.fill = parse_fill_rule(field<std::string>(j, "fill_rule"));
  s.counts = field<std::vector<std::uint64_t>>(j, "counts");
  s.complete = j.contains("complete") ? field<bool>(j, "complete") : true;
  if (j.contains("acceptance")) {
    const json& a = j.at("acceptance");
    s.draws = field<std::uint64_t>(a, "draws");
    s.admissible_draws = field<std::uint64_t>(a, "admissible");
  }
  const auto k = static_cast<std::size_t>(s.k);
  if (s.m_schedule.size() != k || s.l_schedule.size() + 1 != k || s.d_tolerances.size() + 1 != k ||
      s.nu_schedule.size() + 1 != k) {
    throw FormatError("schedule lengths do not match k");
  }
  s.m = s.m_schedule.back();
  Box box;
  try {
    box = Box::cube(s.d, s.n);
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  s.patterns = PatternSet(box, 2);
  for (const auto& digits : field<std::vector<std::string>>(j, "patterns")) {
    try {
      if (!s.patterns.insert(Pattern::from_digits(digits, box, 2))) {
        throw FormatError("stage file repeats a pattern");
      }
    } catch (const InvalidArgument& e) {
      throw FormatError(std::string("bad pattern: ") + e.what());
    }
  }
  return s;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw InvalidArgument("write failed for " + path.string());
}

void write_stage_file(const std::filesystem::path& path, const Stage& s) {
  write_text_file(path, stage_to_json(s));
}

Stage read_stage_file(const std::filesystem::path& path) {
  return stage_from_json(read_text_file(path));
}

}  // namespace subshift
