// Command-line front end: catalog listings, system checks, effectiveness
// queries, censuses and reproduction suites.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wdp/census.hpp"
#include "wdp/effectivity.hpp"
#include "wdp/errors.hpp"
#include "wdp/suites.hpp"
#include "wdp/weyl.hpp"

#ifndef WDP_VERSION
#define WDP_VERSION "0.0.0"
#endif

using json = nlohmann::json;
using namespace wdp;

namespace {

// Exit codes.
constexpr int kOk = 0, kMismatch = 1, kInput = 2, kInternal = 3;

struct Config {
  std::string verb;
  int degree = 0;
  std::string surface, sequence, mode = "strong", system_file, divisor, suite;
  std::string out, checkpoint;
  int workers = 1, split_depth = 6;
  std::size_t max_tasks = 0;
  bool cross_check = false, as_json = false, with_e8 = false, quiet = false;

  json to_json() const {
    return {{"verb", verb},         {"degree", degree},           {"surface", surface},
            {"sequence", sequence}, {"mode", mode},               {"system_file", system_file},
            {"divisor", divisor},   {"suite", suite},             {"split_depth", split_depth},
            {"max_tasks", max_tasks}, {"cross_check", cross_check}, {"with_e8", with_e8}};
  }
  // Worker count, output paths and verbosity do not change any result, so
  // they are left out of the hash.
  std::string hash() const { return fnv1a_hex(to_json().dump()); }
  std::string header() const { return std::string("wdp ") + WDP_VERSION + " config " + hash(); }
};

std::string seq_text(const IntSequence& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

std::string join(const std::vector<std::string>& v, const std::string& sep = ", ") {
  std::string s;
  for (const auto& x : v)
    s += (s.empty() ? "" : sep) + x;
  return s;
}

// Class names such as "A3,4" contain commas.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char ch : s)
    q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::vector<std::string> format_all(const PicardLattice& lat, const std::vector<DivisorClass>& v) {
  std::vector<std::string> out;
  for (const auto& d : v)
    out.push_back(format_class(lat, d));
  return out;
}

// Surfaces of degree 1..7 come from the catalog; degrees 8 and 9 have the
// four models used by the cyclic strong table.
SurfaceModel find_surface(int degree, const std::string& name) {
  if (degree >= 1 && degree <= 7) {
    if (degree <= 2)
      for (const auto& s : census_surfaces(degree))
        if (s.name() == name)
          return s;
    return catalog_load(degree).find(name.empty() ? "none" : name);
  }
  if (degree == 9 && (name == "P2" || name.empty()))
    return plane_model();
  if (degree == 8 && name == "F0")
    return f0_model();
  if (degree == 8 && name == "F1")
    return f1_model();
  if (degree == 8 && name == "F2")
    return f2_model();
  fail_input("no surface '" + name + "' of degree " + std::to_string(degree) +
             "; degrees 1..7 use catalog names, degree 8 has F0, F1, F2 and degree 9 has P2");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail_input("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail_input(path + ": " + e.what());
  }
}

// ---- surfaces -----------------------------------------------------------------

int cmd_surfaces(const Config& c) {
  if (c.degree < 1 || c.degree > 7)
    fail_input("--degree must be in 1..7, got " + std::to_string(c.degree));
  std::vector<SurfaceModel> list;
  if (!c.surface.empty())
    list.push_back(find_surface(c.degree, c.surface));
  else
    list = c.degree <= 2 ? census_surfaces(c.degree) : catalog_load(c.degree).entries;
  const bool detail = !c.surface.empty();
  json rows = json::array();
  for (const auto& s : list) {
    const auto& lat = s.lattice();
    json row{{"name", s.name()},
             {"simple_roots", format_all(lat, s.simple_roots())},
             {"effective_roots", s.effective_roots().size()},
             {"irreducible_lines", s.irreducible_lines().size()}};
    if (c.degree >= 3)
      row["good_zero_classes"] = good_zero_classes(s).size();
    if (detail) {
      row["irreducible_line_classes"] = format_all(lat, s.irreducible_lines());
      if (c.degree >= 3)
        row["good_zero_class_list"] = format_all(lat, good_zero_classes(s));
    }
    rows.push_back(row);
  }
  if (c.as_json) {
    std::cout << json{{"header", c.header()}, {"degree", c.degree}, {"surfaces", rows}}.dump(2) << "\n";
    return kOk;
  }
  std::cout << "# " << c.header() << "\n";
  std::cout << "# degree " << c.degree << ", " << rows.size() << " surfaces\n";
  for (const auto& r : rows) {
    std::cout << r["name"].get<std::string>() << "\troots: "
              << (r["simple_roots"].empty() ? "-" : join(r["simple_roots"].get<std::vector<std::string>>()))
              << "\t|I^irr| = " << r["irreducible_lines"].get<std::size_t>();
    if (r.contains("good_zero_classes"))
      std::cout << "\tgood S: " << r["good_zero_classes"].get<std::size_t>();
    std::cout << "\n";
    if (detail) {
      std::cout << "I^irr: " << join(r["irreducible_line_classes"].get<std::vector<std::string>>()) << "\n";
      if (r.contains("good_zero_class_list"))
        std::cout << "good S: " << join(r["good_zero_class_list"].get<std::vector<std::string>>()) << "\n";
    }
  }
  return kOk;
}

// ---- check --------------------------------------------------------------------

// System file: {"degree": 2, "surface": "A1+2A3", "system": ["L25", ...]}.
int cmd_check(const Config& c) {
  const json in = read_json_file(c.system_file);
  if (!in.is_object() || !in.contains("degree") || !in.contains("system"))
    fail_input(c.system_file + ": expected an object with \"degree\", \"surface\" and \"system\"");
  const int degree = in.at("degree").get<int>();
  const auto s = find_surface(degree, in.value("surface", std::string{}));
  const auto terms = in.at("system").get<std::vector<std::string>>();
  std::vector<DivisorClass> classes;
  for (const auto& t : terms)
    classes.push_back(parse_class(s.lattice(), t));
  json out{{"header", c.header()}, {"surface", s.name()}, {"degree", degree}};
  const auto violations = axiom_violations(s.lattice(), classes);
  out["valid"] = violations.empty();
  if (!violations.empty()) {
    out["violations"] = violations;
    std::cout << out.dump(2) << "\n";
    return kInput;
  }
  const ToricSystem a = validate(s.lattice(), classes);
  out["squares"] = a.squares();
  try {
    const auto kt = classify_sequence(a.squares());
    out["kind"] = kt.kind == SequenceKind::kFirst ? "first" : "second";
    out["type"] = kt.type;
  } catch (const InputError&) {
    out["kind"] = "not strong admissible";
  }
  const auto exc = check_exceptional(s, a);
  const auto strong = check_strong(s, a);
  const auto cyc = check_cyclic_strong(s, a);
  out["exceptional"] = exc.ok;
  out["strong"] = strong.ok;
  out["cyclic_strong"] = cyc.ok;
  for (const auto& [key, r] : {std::pair{"exceptional", exc}, std::pair{"strong", strong}, std::pair{"cyclic_strong", cyc}})
    if (!r.ok && r.witness)
      out[std::string(key) + "_witness"] = {r.witness->first, r.witness->second};
  if (const auto i = elementary_augmentation_index(s, a))
    out["augmentation_certificate"] = {{"irreducible_line_term", *i}};
  else
    out["augmentation_certificate"] = "none";
  std::cout << out.dump(2) << "\n";
  return kOk;
}

// ---- effcheck -----------------------------------------------------------------

int cmd_effcheck(const Config& c) {
  const auto s = find_surface(c.degree, c.surface);
  const auto d = parse_class(s.lattice(), c.divisor);
  auto [eff, trace] = is_effective_traced(s, d);
  json out{{"header", c.header()},
           {"surface", s.name()},
           {"class", format_class(s.lattice(), d)},
           {"effective", eff},
           {"rule", trace.rule},
           {"steps", trace.steps.size()},
           {"certificate_replays", trace.replay(s, d)}};
  if (!eff && c.degree <= 7)
    out["hole"] = is_hole(s, d);
  std::cout << out.dump(2) << "\n";
  return kOk;
}

// ---- census -------------------------------------------------------------------

// --sequence is a preset name, an inline JSON array of squares, or a JSON
// file/object {"sequence": [...], "system": [...]} (system optional).
SequencePreset resolve_sequence(const std::string& text) {
  for (const auto& p : sequence_presets())
    if (p.name == text)
      return p;
  json j;
  const bool inline_json = !text.empty() && (text.front() == '[' || text.front() == '{');
  try {
    j = inline_json ? json::parse(text) : read_json_file(text);
  } catch (const json::parse_error& e) {
    fail_input("--sequence: " + std::string(e.what()));
  } catch (const InputError&) {
    std::vector<std::string> names;
    for (const auto& p : sequence_presets())
      names.push_back(p.name);
    fail_input("--sequence '" + text + "' is neither a preset (" + join(names) + ") nor a readable JSON file");
  }
  SequencePreset p;
  p.name = "custom";
  if (j.is_array()) {
    p.sequence = j.get<IntSequence>();
  } else if (j.is_object() && j.contains("sequence")) {
    p.sequence = j.at("sequence").get<IntSequence>();
    if (j.contains("system"))
      p.system = j.at("system").get<std::vector<std::string>>();
  } else {
    fail_input("--sequence JSON must be an array of squares or an object with \"sequence\"");
  }
  p.degree = 12 - static_cast<int>(p.sequence.size());
  if (p.degree < 1 || p.degree > 7)
    fail_input("sequence " + seq_text(p.sequence) + " has length " + std::to_string(p.sequence.size()) +
               "; a census needs degree 1..7, that is length 5..11");
  return p;
}

int cmd_census(const Config& c) {
  const auto preset = resolve_sequence(c.sequence);
  if (c.degree && c.degree != preset.degree)
    fail_input("--degree " + std::to_string(c.degree) + " does not match the sequence, which has degree " +
               std::to_string(preset.degree));
  const CensusMode mode = parse_mode(c.mode);
  std::vector<SurfaceModel> surfaces;
  if (c.surface.empty())
    surfaces = census_surfaces(preset.degree);
  else
    surfaces.push_back(find_surface(preset.degree, c.surface));
  CensusOptions opt;
  opt.workers = c.workers;
  opt.split_depth = c.split_depth;
  opt.cross_check = c.cross_check;
  opt.checkpoint = c.checkpoint;
  opt.max_tasks = c.max_tasks;
  if (!c.quiet)
    opt.progress = [](std::size_t done, std::size_t total) {
      std::fprintf(stderr, "\r%zu / %zu tasks", done, total);
      if (done == total)
        std::fprintf(stderr, "\n");
    };
  const auto start = std::chrono::steady_clock::now();
  const auto run = run_census(initial_system(preset), surfaces, mode, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ostringstream csv;
  csv << "# " << c.header() << "\n";
  csv << "# sequence " << seq_text(preset.sequence) << " (" << preset.name << "), degree " << preset.degree << "\n";
  if (!run.complete())
    csv << "# partial: " << run.tasks_done << " of " << run.tasks_total << " tasks; totals so far\n";
  csv << "surface,mode,total,stabilizer,essential\n";
  json sidecar{{"header", c.header()},
               {"sequence", preset.sequence},
               {"preset", preset.name},
               {"mode", to_string(mode)},
               {"complete", run.complete()},
               {"tasks_done", run.tasks_done},
               {"tasks_total", run.tasks_total},
               {"stats",
                {{"visited", run.stats.visited},
                 {"anti_checks", run.stats.anti_checks},
                 {"anti_cross_checked", run.stats.anti_cross_checked},
                 {"anti_disagreements", run.stats.anti_disagreements},
                 {"reference_checks", run.stats.reference_checks},
                 {"reference_failures", run.stats.reference_failures},
                 {"hole_checks", run.stats.hole_checks},
                 {"hole_failures", run.stats.hole_failures}}},
               {"surfaces", json::array()}};
  for (const auto& r : run.records) {
    csv << csv_field(r.surface) << "," << to_string(mode) << "," << r.total << "," << r.stabilizer << "," << r.essential << "\n";
    json reps = json::array();
    for (const auto& a : r.representatives)
      reps.push_back(format_toric(a));
    sidecar["surfaces"].push_back({{"surface", r.surface},
                                   {"total", r.total},
                                   {"stabilizer", r.stabilizer},
                                   {"essential", r.essential},
                                   {"representatives", reps}});
  }
  std::cout << csv.str();
  if (!c.quiet)
    std::fprintf(stderr, "visited %llu systems in %.1f s\n", static_cast<unsigned long long>(run.stats.visited), secs);
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    std::ofstream g(c.out + ".json");
    if (!f || !g)
      fail_input("cannot write " + c.out);
    f << csv.str();
    g << sidecar.dump(2) << "\n";
  }
  const bool sound = run.stats.reference_failures == 0 && run.stats.hole_failures == 0 &&
                     run.stats.anti_disagreements == 0;
  return sound ? kOk : kMismatch;
}

// ---- reproduce ----------------------------------------------------------------

int cmd_reproduce(const Config& c) {
  CensusOptions opt;
  opt.workers = c.workers;
  opt.cross_check = c.cross_check;
  const auto start = std::chrono::steady_clock::now();
  const Report rep = c.suite == "weyl-orders" ? weyl_orders_report(c.with_e8) : run_suite(c.suite, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream txt;
  txt << "# " << c.header() << "\n";
  txt << "# " << c.suite << ": " << rep.title << "\n";
  for (const auto& l : rep.lines)
    txt << (l.ok ? "ok   " : "FAIL ") << l.name << "\n"
        << "     expected: " << l.expected << "\n"
        << "     computed: " << l.got << "\n";
  char tail[96];
  std::snprintf(tail, sizeof tail, "%s %s (%.1f s)\n", rep.ok() ? "PASS" : "FAIL", c.suite.c_str(), secs);
  txt << tail;
  std::cout << txt.str();
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f)
      fail_input("cannot write " + c.out);
    f << txt.str();
  }
  return rep.ok() ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak del Pezzo toric systems: exceptional collections and the counterexample census"};
  app.set_version_flag("--version", std::string("wdp ") + WDP_VERSION);
  app.require_subcommand(1);
  Config c;

  auto* surfaces = app.add_subcommand("surfaces", "List the catalog surfaces of a degree");
  surfaces->add_option("--degree", c.degree, "Degree 1..7")->required();
  surfaces->add_option("--name", c.surface, "One surface, with its I^irr and good classes");
  surfaces->add_flag("--json", c.as_json, "JSON output");

  auto* check = app.add_subcommand("check", "Check a toric system given as JSON");
  check->add_option("system", c.system_file, "JSON file {degree, surface, system}")->required();

  auto* eff = app.add_subcommand("effcheck", "Decide whether a class is effective");
  eff->add_option("--degree", c.degree, "Degree 1..9")->required();
  eff->add_option("--surface", c.surface, "Surface name (default: none)");
  eff->add_option("class", c.divisor, "Class such as 2L-E1-2E2-E5-E7 or 2L-E12257")->required();

  auto* census = app.add_subcommand("census", "Run the counterexample census for one sequence");
  census->add_option("--sequence", c.sequence, "Preset name, JSON array, or JSON file")->required();
  census->add_option("--degree", c.degree, "Expected degree (checked against the sequence)");
  census->add_option("--surface", c.surface, "One surface (default: every subsystem class)");
  census->add_option("--mode", c.mode, "strong or exceptional")->check(CLI::IsMember({"strong", "exceptional"}));
  census->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1, 256));
  census->add_option("--split-depth", c.split_depth, "Depth at which the walk splits into tasks")
      ->check(CLI::Range(0, 40));
  census->add_flag("--cross-check", c.cross_check, "Re-check every fast anti-class verdict");
  census->add_option("--out", c.out, "CSV output; representatives go to FILE.json");
  census->add_option("--checkpoint", c.checkpoint, "Resumable progress file");
  census->add_option("--max-tasks", c.max_tasks, "Stop after this many tasks in this invocation");
  census->add_flag("--quiet", c.quiet, "No progress on stderr");

  auto* repro = app.add_subcommand("reproduce", "Run a reproduction suite");
  repro->add_option("suite", c.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  repro->add_option("--workers", c.workers, "Worker threads for census suites")->check(CLI::Range(1, 256));
  repro->add_flag("--cross-check", c.cross_check, "Cross-check anti-class verdicts in census suites");
  repro->add_flag("--with-e8", c.with_e8, "weyl-orders: also walk W(E8)");
  repro->add_option("--out", c.out, "Also write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }
  c.verb = app.get_subcommands().front()->get_name();
  try {
    if (c.verb == "surfaces")
      return cmd_surfaces(c);
    if (c.verb == "check")
      return cmd_check(c);
    if (c.verb == "effcheck")
      return cmd_effcheck(c);
    if (c.verb == "census")
      return cmd_census(c);
    return cmd_reproduce(c);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kInternal;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
