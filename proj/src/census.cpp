#include "wdp/census.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <thread>

#include "json.hpp"
#include "wdp/effectivity.hpp"
#include "wdp/errors.hpp"
#include "wdp/weyl.hpp"

namespace wdp {

using nlohmann::json;

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text)
    h = (h ^ c) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---- Sequences and initial systems ----------------------------------------

const std::vector<SequencePreset>& sequence_presets() {
  static const std::vector<SequencePreset> presets{
      {"IIb-deg2", 2, {-1, -2, -2, -2, -1, -2, -2, -1, -2, -3},
       {"L25", "L137", "E3-E4", "L236", "L15", "E1-E7", "-L567", "3L-E12345567", "-L345", "-2L+E12257"}},
      {"deg2-1", 2, {-2, -2, -1, -2, 0, -2, -2, -2, -1, -4},
       {"E2-E3", "L127", "E7", "E1-E7", "L-E1", "L234", "E4-E5", "E5-E6", "E6", "E3-E4-E5-E6"}},
      {"deg2-2", 2, {-2, -1, -1, 0, -2, -2, -2, -2, -1, -5},
       {"E2-E3", "L12", "E1", "L-E1", "L234", "E4-E5", "E5-E6", "E6-E7", "E7", "E3-E4-E5-E6-E7"}},
      {"deg2-3", 2, {-2, 0, 1, -2, -2, -2, -2, -2, -1, -6},
       {"E1-E2", "L-E1", "L", "L123", "E3-E4", "E4-E5", "E5-E6", "E6-E7", "E7", "E2-E3-E4-E5-E6-E7"}},
      {"deg2-4", 2, {-1, -2, -2, -2, 0, 0, -2, -2, -1, -6},
       {"E7", "E5-E7", "E4-E5", "E3-E4", "L-E3", "L-E1", "E1-E2", "E2-E6", "E6", "L1234567"}},
      {"deg2-5", 2, {-1, -2, -2, -2, -2, 0, 0, -2, -1, -6},
       {"E7", "E5-E7", "E4-E5", "E3-E4", "E2-E3", "L-E2", "L-E1", "E1-E6", "E6", "L1234567"}},
      {"deg2-6", 2, {-1, -2, -2, -2, -2, -2, 0, 0, -1, -6},
       {"E7", "E5-E7", "E4-E5", "E3-E4", "E2-E3", "E1-E2", "L-E1", "L-E6", "E6", "L1234567"}},
      {"deg2-7", 2, {-1, -2, -2, -2, -2, -2, -2, 0, 1, -6},
       {"E7", "E6-E7", "E5-E6", "E4-E5", "E3-E4", "E2-E3", "E1-E2", "L-E1", "L", "L1234567"}},
      {"deg1-1", 1, {-2, -2, -1, -2, 0, -2, -2, -2, -2, -1, -5},
       {"E2-E3", "L127", "E7", "E1-E7", "L-E1", "L234", "E4-E5", "E5-E6", "E6-E8", "E8", "E3-E4-E5-E6-E8"}},
      {"deg1-2", 1, {-2, -1, -1, 0, -2, -2, -2, -2, -2, -1, -6},
       {"E2-E3", "L12", "E1", "L-E1", "L234", "E4-E5", "E5-E6", "E6-E7", "E7-E8", "E8",
        "E3-E4-E5-E6-E7-E8"}},
      {"deg1-3", 1, {-2, 0, 1, -2, -2, -2, -2, -2, -2, -1, -7},
       {"E1-E2", "L-E1", "L", "L123", "E3-E4", "E4-E5", "E5-E6", "E6-E7", "E7-E8", "E8",
        "E2-E3-E4-E5-E6-E7-E8"}},
      {"deg1-4", 1, {-1, -2, -2, -2, -2, 0, 0, -2, -2, -1, -7},
       {"E8", "E7-E8", "E5-E7", "E4-E5", "E3-E4", "L-E3", "L-E1", "E1-E2", "E2-E6", "E6", "L12345678"}},
      {"deg1-5", 1, {-1, -2, -2, -2, 0, 0, -2, -2, -2, -1, -7},
       {"E7", "E5-E7", "E4-E5", "E3-E4", "L-E3", "L-E1", "E1-E2", "E2-E6", "E6-E8", "E8", "L12345678"}},
      {"deg1-6", 1, {-1, -2, -2, -2, -2, -2, 0, 0, -2, -1, -7},
       {"E8", "E7-E8", "E5-E7", "E4-E5", "E3-E4", "E2-E3", "L-E2", "L-E1", "E1-E6", "E6", "L12345678"}},
      {"deg1-7", 1, {-1, -2, -2, -2, -2, -2, -2, 0, 0, -1, -7},
       {"E8", "E7-E8", "E5-E7", "E4-E5", "E3-E4", "E2-E3", "E1-E2", "L-E1", "L-E6", "E6", "L12345678"}},
      {"deg1-8", 1, {-1, -2, -2, -2, -2, -2, -2, -2, 0, 1, -7},
       {"E8", "E7-E8", "E6-E7", "E5-E6", "E4-E5", "E3-E4", "E2-E3", "E1-E2", "L-E1", "L", "L12345678"}},
  };
  return presets;
}

const SequencePreset& find_preset(const std::string& name) {
  for (const auto& p : sequence_presets())
    if (p.name == name)
      return p;
  std::string known;
  for (const auto& p : sequence_presets())
    known += (known.empty() ? "" : ", ") + p.name;
  fail_input("unknown sequence preset '" + name + "' (known: " + known + ")");
}

namespace {

std::string seq_text(const IntSequence& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

// Odd Hirzebruch base (0,k,0,-k) up to rotation, k odd.
bool is_odd_hirzebruch(const IntSequence& a) {
  if (a.size() != 4)
    return false;
  for (int r = 0; r < 2; ++r)
    if (a[r] == 0 && a[r + 2] == 0 && a[r + 1] == -a[(r + 3) % 4] && a[r + 1] % 2 != 0)
      return true;
  return false;
}

// Depth-first search over contractions of -1 entries down to a base that
// `is_base` accepts. `path` collects augmentation indices from the base up.
template <class Base>
bool path_dfs(const IntSequence& a, Base&& is_base, std::vector<int>& path, IntSequence& base,
              std::set<IntSequence>& dead) {
  if (is_base(a)) {
    base = a;
    return true;
  }
  if (a.size() <= 3 || dead.count(a))
    return false;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != -1)
      continue;
    // Contracting position i undoes augm_{i+1}.
    IntSequence b(a);
    b[(i + n - 1) % n] += 1;
    b[(i + 1) % n] += 1;
    b.erase(b.begin() + static_cast<long>(i));
    if (path_dfs(b, is_base, path, base, dead)) {
      path.push_back(static_cast<int>(i) + 1);
      return true;
    }
  }
  dead.insert(a);
  return false;
}

// (F, S, F, -K-2F-S) with squares (0, 2m+1, 0, -2m-1) on the one-point
// blow-up: F = L-E1, S = (m+1)L - mE1. Rotated to match b.
ToricSystem odd_hirzebruch_system(const IntSequence& b) {
  const auto lat = PicardLattice::blowup(1);
  for (int r = 0; r < 4; ++r) {
    const int k = b[(r + 1) % 4];
    const int m = (k - 1) / 2;
    const DivisorClass f = lat.L() - lat.E(1);
    const DivisorClass sec = (m + 1) * lat.L() - m * lat.E(1);
    const std::vector<DivisorClass> base{f, sec, f, -lat.canonical() - 2 * f - sec};
    std::vector<DivisorClass> t(4);
    for (int i = 0; i < 4; ++i)
      t[(r + i) % 4] = base[i];
    ToricSystem sys(lat, t);
    if (sys.squares() == b)
      return validate(lat, t);
  }
  fail_invariant("no odd Hirzebruch system for " + seq_text(b));
}

}  // namespace

std::optional<std::vector<int>> augmentation_path_from_plane(const IntSequence& a) {
  std::vector<int> path;
  IntSequence base;
  std::set<IntSequence> dead;
  auto plane = [](const IntSequence& x) { return x == IntSequence{1, 1, 1}; };
  if (!path_dfs(a, plane, path, base, dead))
    return std::nullopt;
  return path;
}

ToricSystem standard_system(const IntSequence& a) {
  ToricSystem sys = plane_system();
  auto path = augmentation_path_from_plane(a);
  if (!path) {
    // Blow-ups of F_k with k large never pass through the plane; every
    // length-5 sequence contracts to both F_a and F_{a+1}, so an odd base exists.
    std::vector<int> p;
    IntSequence base;
    std::set<IntSequence> dead;
    if (!path_dfs(a, is_odd_hirzebruch, p, base, dead))
      fail_input(seq_text(a) + " is not reachable from (1,1,1) or an odd Hirzebruch base by augmentations");
    sys = odd_hirzebruch_system(base);
    path = std::move(p);
  }
  for (int m : *path)
    sys = augment(sys, m);
  if (sys.squares() != a)
    fail_invariant("augmentation path for " + seq_text(a) + " produced " + seq_text(sys.squares()));
  return sys;
}

ToricSystem initial_system(const SequencePreset& p) {
  if (p.system.empty())
    return standard_system(p.sequence);
  ToricSystem a = parse_toric(PicardLattice::standard(p.degree), p.system);
  if (a.squares() != p.sequence)
    fail_invariant("preset " + p.name + " has squares " + seq_text(a.squares()) + ", expected " +
                   seq_text(p.sequence));
  return a;
}

std::vector<IntSequence> second_kind_sequences(int n) {
  if (n < 4)
    return {};
  auto low_count = [](const IntSequence& a) {
    return std::count_if(a.begin(), a.end(), [](int v) { return v <= -3; });
  };
  std::set<IntSequence> seen;
  std::vector<IntSequence> level{{1, 1, 1}};
  seen.insert(dihedral_canonical(level[0]));
  for (int k = -n; k <= n; ++k) {
    IntSequence f{0, k, 0, -k};
    if (seen.insert(dihedral_canonical(f)).second)
      level.push_back(f);
  }
  std::set<IntSequence> out;
  // Augmentations only lower entries, so sequences with two entries below
  // -2 never become strong again and are pruned.
  while (!level.empty()) {
    std::vector<IntSequence> next;
    for (const auto& a : level) {
      if (static_cast<int>(a.size()) == n) {
        if (low_count(a) == 1 && classify_sequence(a).kind == SequenceKind::kSecond)
          out.insert(dihedral_canonical(a));
        continue;
      }
      for (int m = 1; m <= static_cast<int>(a.size()) + 1; ++m) {
        IntSequence b = augment_sequence(a, m);
        if (low_count(b) > 1)
          continue;
        if (seen.insert(dihedral_canonical(b)).second)
          next.push_back(std::move(b));
      }
    }
    level = std::move(next);
  }
  return {out.begin(), out.end()};
}

// ---- Census -------------------------------------------------------------------

std::string to_string(CensusMode m) { return m == CensusMode::kStrong ? "strong" : "exceptional"; }

CensusMode parse_mode(const std::string& s) {
  if (s == "strong")
    return CensusMode::kStrong;
  if (s == "exceptional")
    return CensusMode::kExceptional;
  fail_input("unknown mode '" + s + "' (strong or exceptional)");
}

namespace {

struct Mask {
  std::array<std::uint64_t, 4> w{};
  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool meets(const Mask& o) const {
    return ((w[0] & o.w[0]) | (w[1] & o.w[1]) | (w[2] & o.w[2]) | (w[3] & o.w[3])) != 0;
  }
};

struct Window {
  int k, l;
};

// Everything the walk needs that does not change from element to element.
struct CensusPlan {
  WeylPlan weyl;
  const ActionTables& tables;
  int n;
  CensusMode mode;
  bool cross_check;
  bool keep;
  std::vector<Window> cyc, non, lines, low;
  // Root and line indices at the identity.
  std::vector<std::uint16_t> cyc0, non0, lines0;
  const std::vector<SurfaceModel>& surfaces;
  std::vector<Mask> eff, irr;

  CensusPlan(const ToricSystem& a0, const std::vector<SurfaceModel>& s, CensusMode m, const CensusOptions& opt)
      : weyl(a0.lattice()), tables(action_tables(a0.lattice().degree())), n(a0.size()), mode(m),
        cross_check(opt.cross_check), keep(opt.keep_systems), surfaces(s) {
    const auto ixa = compute_ixa(a0.squares());
    std::set<std::pair<int, int>> in_ixa(ixa.begin(), ixa.end());
    for (int k = 1; k <= n; ++k)
      for (int len = 1; len < n; ++len) {
        const int l = (k + len - 2) % n + 1;
        const bool through_n = l < k || l == n;
        const long sq = a0.window_square(k, l);
        const DivisorClass d = a0.window(k, l);
        if (sq == -2) {
          if (through_n) {
            cyc.push_back({k, l});
            cyc0.push_back(static_cast<std::uint16_t>(tables.root(-d)));
          } else {
            non.push_back({k, l});
            non0.push_back(static_cast<std::uint16_t>(tables.root(d)));
          }
        } else if (sq <= -3) {
          if (!through_n)
            fail_input("only A_n may have square below -2 for the census tests");
          low.push_back({k, l});
        }
        if (in_ixa.count({k, l})) {
          if (sq != -1)
            fail_invariant("window in I(X,A) is not a (-1)-class");
          lines.push_back({k, l});
          lines0.push_back(static_cast<std::uint16_t>(tables.line(d)));
        }
      }
    for (const auto& sm : surfaces) {
      if (!(sm.lattice() == a0.lattice()))
        fail_input("surface " + sm.name() + " has a different lattice than the toric system");
      Mask e, c;
      for (const auto& r : sm.effective_roots())
        e.set(tables.root(r));
      for (const auto& l : sm.irreducible_lines())
        c.set(tables.line(l));
      eff.push_back(e);
      irr.push_back(c);
    }
  }
};

struct TaskResult {
  std::vector<std::uint64_t> totals;
  std::vector<std::vector<std::vector<DivisorClass>>> hits;
  CensusStats stats;
};

struct CensusVisitor {
  static constexpr int kDepths = 130;
  const CensusPlan& p;
  TaskResult& out;
  std::vector<std::vector<DivisorClass>> terms;
  std::vector<std::vector<std::uint16_t>> cyc, non, lines;
  // When set, only elements whose running index is a multiple of `stride`
  // are tested (sampling for agreement checks).
  std::uint64_t stride = 1, counter = 0;
  // Receives the system with the strong and exceptional verdicts of surface 0.
  std::function<void(const std::vector<DivisorClass>&, bool, bool)> sample;

  CensusVisitor(const CensusPlan& plan, TaskResult& r, const std::vector<DivisorClass>& a0)
      : p(plan), out(r), terms(kDepths, a0), cyc(kDepths, plan.cyc0), non(kDepths, plan.non0),
        lines(kDepths, plan.lines0) {
    out.totals.assign(p.surfaces.size(), 0);
    out.hits.assign(p.surfaces.size(), {});
  }

  void descend(int depth, int g) {
    const auto& rp = p.tables.root_perm[g];
    const auto& lp = p.tables.line_perm[g];
    const auto& gen = p.weyl.gens[g];
    for (int i = 0; i < p.n; ++i)
      terms[depth][i] = reflect(p.weyl.lattice, gen, terms[depth - 1][i]);
    for (std::size_t i = 0; i < p.cyc.size(); ++i)
      cyc[depth][i] = rp[cyc[depth - 1][i]];
    for (std::size_t i = 0; i < p.non.size(); ++i)
      non[depth][i] = rp[non[depth - 1][i]];
    for (std::size_t i = 0; i < p.lines.size(); ++i)
      lines[depth][i] = lp[lines[depth - 1][i]];
  }

  DivisorClass window(const std::vector<DivisorClass>& t, const Window& w) const {
    DivisorClass d = t[w.k - 1];
    for (int i = w.k; i != w.l; i = i % p.n + 1)
      d += t[i % p.n];
    return d;
  }

  // Verdict of the four tests for surface j.
  bool passes(int depth, std::size_t j, CensusMode mode, const Mask& neg_cyc, const Mask& pos_non,
              const Mask& neg_non, const Mask& line) {
    if (neg_cyc.meets(p.eff[j]))
      return false;
    if (neg_non.meets(p.eff[j]) || (mode == CensusMode::kStrong && pos_non.meets(p.eff[j])))
      return false;
    if (line.meets(p.irr[j]))
      return false;
    const auto& s = p.surfaces[j];
    for (const auto& w : p.low) {
      const DivisorClass d = -window(terms[depth], w);
      ++out.stats.anti_checks;
      const bool fast = is_effective_anticlass_fast(s, d);
      if (p.cross_check) {
        ++out.stats.anti_cross_checked;
        if (fast != is_effective(s, d))
          ++out.stats.anti_disagreements;
      }
      if (fast)
        return false;
    }
    return true;
  }

  void visit(int depth) {
    if (counter++ % stride != 0)
      return;
    ++out.stats.visited;
    Mask neg_cyc, pos_non, neg_non, line;
    for (auto r : cyc[depth])
      neg_cyc.set(r);
    for (auto r : non[depth]) {
      pos_non.set(r);
      neg_non.set(p.tables.root_negation[r]);
    }
    for (auto c : lines[depth])
      line.set(c);
    if (sample) {
      sample(terms[depth], passes(depth, 0, CensusMode::kStrong, neg_cyc, pos_non, neg_non, line),
             passes(depth, 0, CensusMode::kExceptional, neg_cyc, pos_non, neg_non, line));
      return;
    }
    for (std::size_t j = 0; j < p.surfaces.size(); ++j) {
      if (!passes(depth, j, p.mode, neg_cyc, pos_non, neg_non, line))
        continue;
      ++out.totals[j];
      if (p.keep)
        out.hits[j].push_back(terms[depth]);
    }
  }
};

void merge(TaskResult& into, TaskResult&& from) {
  for (std::size_t j = 0; j < into.totals.size(); ++j) {
    into.totals[j] += from.totals[j];
    auto& h = into.hits[j];
    h.insert(h.end(), std::make_move_iterator(from.hits[j].begin()), std::make_move_iterator(from.hits[j].end()));
  }
  into.stats.visited += from.stats.visited;
  into.stats.anti_checks += from.stats.anti_checks;
  into.stats.anti_cross_checked += from.stats.anti_cross_checked;
  into.stats.anti_disagreements += from.stats.anti_disagreements;
}

std::string run_config_hash(const ToricSystem& a0, const std::vector<SurfaceModel>& surfaces, CensusMode mode,
                            const CensusOptions& opt) {
  json j;
  j["system"] = format_toric(a0);
  j["mode"] = to_string(mode);
  j["split_depth"] = opt.split_depth;
  j["keep_systems"] = opt.keep_systems;
  j["cross_check"] = opt.cross_check;
  for (const auto& s : surfaces) {
    std::vector<std::string> roots;
    for (const auto& r : s.simple_roots())
      roots.push_back(format_class(s.lattice(), r));
    j["surfaces"].push_back({{"name", s.name()}, {"roots", roots}});
  }
  return fnv1a_hex(j.dump());
}

json stats_json(const CensusStats& s) {
  return {{"visited", s.visited},
          {"anti_checks", s.anti_checks},
          {"anti_cross_checked", s.anti_cross_checked},
          {"anti_disagreements", s.anti_disagreements}};
}

void save_checkpoint(const std::string& path, const std::string& hash, std::size_t done, std::size_t total,
                     const TaskResult& acc) {
  json j;
  j["config"] = hash;
  j["tasks_done"] = done;
  j["tasks_total"] = total;
  j["totals"] = acc.totals;
  j["stats"] = stats_json(acc.stats);
  j["hits"] = json::array();
  for (const auto& per_surface : acc.hits) {
    json hs = json::array();
    for (const auto& sys : per_surface) {
      json t = json::array();
      for (const auto& c : sys)
        t.push_back(c.to_vector());
      hs.push_back(std::move(t));
    }
    j["hits"].push_back(std::move(hs));
  }
  // Write then rename, so an interrupted save leaves the old file intact.
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f)
      throw ResourceError("cannot write checkpoint " + tmp);
    f << j.dump() << "\n";
    if (!f)
      throw ResourceError("failed writing checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

// Returns the number of tasks already done, filling `acc`.
std::size_t load_checkpoint(const std::string& path, const std::string& hash, std::size_t total, TaskResult& acc) {
  std::ifstream f(path);
  if (!f)
    return 0;
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    fail_input("checkpoint " + path + " is not valid JSON: " + e.what());
  }
  if (j.value("config", "") != hash)
    fail_input("checkpoint " + path + " belongs to a different census configuration");
  if (j.at("tasks_total").get<std::size_t>() != total)
    fail_input("checkpoint " + path + " has a different task split");
  const auto totals = j.at("totals").get<std::vector<std::uint64_t>>();
  if (totals.size() != acc.totals.size())
    fail_input("checkpoint " + path + " has a different surface count");
  acc.totals = totals;
  const auto& st = j.at("stats");
  acc.stats.visited = st.at("visited");
  acc.stats.anti_checks = st.at("anti_checks");
  acc.stats.anti_cross_checked = st.at("anti_cross_checked");
  acc.stats.anti_disagreements = st.at("anti_disagreements");
  const auto& hits = j.at("hits");
  for (std::size_t s = 0; s < acc.hits.size() && s < hits.size(); ++s)
    for (const auto& sys : hits[s]) {
      std::vector<DivisorClass> t;
      for (const auto& c : sys)
        t.push_back(DivisorClass::from_vector(c.get<std::vector<int>>()));
      acc.hits[s].push_back(std::move(t));
    }
  return j.at("tasks_done").get<std::size_t>();
}

void require_census_sequence(const ToricSystem& a0) {
  const auto sq = a0.squares();
  if (!is_admissible(sq) || classify_sequence(sq).kind != SequenceKind::kSecond)
    fail_input(seq_text(sq) + " is not a sequence of the second kind");
  for (int i = 0; i + 1 < a0.size(); ++i)
    if (sq[i] < -2)
      fail_input(seq_text(sq) + ": rotate so that the entry below -2 comes last");
  if (a0.lattice().degree() > 7 || !a0.lattice().is_blowup())
    fail_input("census needs a blow-up lattice of degree <= 7");
}

std::vector<DivisorClass> apply_all(const WeylElement& w, const std::vector<DivisorClass>& t) {
  std::vector<DivisorClass> out;
  out.reserve(t.size());
  for (const auto& c : t)
    out.push_back(w.apply(c));
  return out;
}

// Above this many element applications, representatives are skipped and
// the essential count comes from the division alone.
constexpr std::uint64_t kCanonicalizeBudget = 50'000'000;

void finish_record(const CensusPlan& plan, std::size_t j, std::vector<std::vector<DivisorClass>>& hits,
                   CensusRecord& rec, CensusStats& stats) {
  const auto& s = plan.surfaces[j];
  const int degree = s.degree();
  const int n = plan.n;
  // Every hit re-verifies with the reference checker, and strong ones carry
  // a hole among -A_n, -A_{n-1,n}.
  for (const auto& t : hits) {
    ToricSystem a(s.lattice(), t);
    const bool ok = plan.mode == CensusMode::kStrong ? check_strong(s, a, CheckMethod::kReference).ok
                                                     : check_exceptional(s, a, CheckMethod::kReference).ok;
    bool line = false;
    for (const auto& w : plan.lines)
      line = line || s.is_irreducible_line(a.window(w.k, w.l));
    ++stats.reference_checks;
    if (!ok || line)
      ++stats.reference_failures;
    if (plan.mode == CensusMode::kStrong) {
      bool hole = false, any = false;
      for (const auto& [k, l] : {std::pair{n, n}, std::pair{n - 1, n}}) {
        if (a.window_square(k, l) > -3)
          continue;
        any = true;
        hole = hole || is_hole(s, -a.window(k, l));
      }
      if (any) {
        ++stats.hole_checks;
        if (!hole)
          ++stats.hole_failures;
      }
    }
  }
  if (rec.total == 0) {
    if (degree >= 2)
      rec.stabilizer = stabilizer_order_of_root_set(degree, s.simple_roots());
    return;
  }
  rec.stabilizer = stabilizer_order_of_root_set(degree, s.simple_roots());
  if (rec.total % rec.stabilizer != 0)
    fail_invariant("census total " + std::to_string(rec.total) + " on " + s.name() +
                   " is not a multiple of the stabilizer order " + std::to_string(rec.stabilizer));
  rec.essential = rec.total / rec.stabilizer;
  if (!plan.keep || rec.total * rec.stabilizer > kCanonicalizeBudget)
    return;
  const auto stab = stabilizer_of_root_set(degree, s.simple_roots());
  std::set<std::vector<DivisorClass>> reps;
  for (const auto& t : hits) {
    std::vector<DivisorClass> best = t;
    for (const auto& w : stab)
      best = std::min(best, apply_all(w, t));
    reps.insert(std::move(best));
  }
  if (reps.size() != rec.essential)
    fail_invariant("on " + s.name() + ": " + std::to_string(reps.size()) +
                   " stabilizer orbits but total / stabilizer = " + std::to_string(rec.essential));
  for (const auto& t : reps)
    rec.representatives.emplace_back(s.lattice(), t);
}

}  // namespace

CensusRun run_census(const ToricSystem& a0, const std::vector<SurfaceModel>& surfaces, CensusMode mode,
                     const CensusOptions& opt) {
  require_census_sequence(a0);
  if (opt.workers < 1)
    fail_input("workers must be at least 1");
  const CensusPlan plan(a0, surfaces, mode, opt);
  const auto split = split_walk(plan.weyl, opt.split_depth);
  // Task 0 is the head above the split depth; the rest are subtrees.
  const std::size_t total_tasks = split.tasks.size() + 1;
  const std::string hash = run_config_hash(a0, surfaces, mode, opt);

  TaskResult acc;
  acc.totals.assign(surfaces.size(), 0);
  acc.hits.assign(surfaces.size(), {});
  std::size_t done = 0;
  if (!opt.checkpoint.empty())
    done = load_checkpoint(opt.checkpoint, hash, total_tasks, acc);

  auto run_task = [&](std::size_t t, TaskResult& r) {
    CensusVisitor v(plan, r, a0.terms());
    if (t == 0) {
      for (const auto& word : split.head) {
        for (std::size_t d = 0; d < word.size(); ++d)
          v.descend(static_cast<int>(d + 1), word[d]);
        v.visit(static_cast<int>(word.size()));
      }
    } else {
      walk_task(plan.weyl, v, split.tasks[t - 1]);
    }
  };

  std::size_t limit = total_tasks;
  if (opt.max_tasks > 0)
    limit = std::min(total_tasks, done + opt.max_tasks);
  const std::size_t batch = static_cast<std::size_t>(opt.workers) * 8;
  while (done < limit) {
    const std::size_t end = std::min(limit, done + batch);
    std::vector<TaskResult> results(end - done);
    std::atomic<std::size_t> next{done};
    std::vector<std::exception_ptr> errors(opt.workers);
    auto worker = [&](int id) {
      try {
        for (std::size_t t = next++; t < end; t = next++)
          run_task(t, results[t - done]);
      } catch (...) {
        errors[id] = std::current_exception();
      }
    };
    if (opt.workers == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < opt.workers; ++w)
        pool.emplace_back(worker, w);
      for (auto& th : pool)
        th.join();
    }
    for (const auto& e : errors)
      if (e)
        std::rethrow_exception(e);
    for (auto& r : results)
      merge(acc, std::move(r));
    done = end;
    if (!opt.checkpoint.empty())
      save_checkpoint(opt.checkpoint, hash, done, total_tasks, acc);
    if (opt.progress)
      opt.progress(done, total_tasks);
  }

  CensusRun run;
  run.tasks_done = done;
  run.tasks_total = total_tasks;
  run.stats = acc.stats;
  for (std::size_t j = 0; j < surfaces.size(); ++j) {
    CensusRecord rec;
    rec.surface = surfaces[j].name();
    rec.sequence = a0.squares();
    rec.mode = mode;
    rec.total = acc.totals[j];
    if (run.complete())
      finish_record(plan, j, acc.hits[j], rec, run.stats);
    run.records.push_back(std::move(rec));
  }
  // Degree 1 has no cached order worth a second E8 walk.
  if (run.complete() && a0.lattice().degree() >= 2 && run.stats.visited != group_order(a0.lattice().degree()))
    fail_invariant("census visited " + std::to_string(run.stats.visited) + " systems, expected the group order");
  return run;
}

CensusRecord search_counterexamples(const SurfaceModel& s, const IntSequence& a, const ToricSystem& a0,
                                    CensusMode mode, const CensusOptions& opt) {
  if (a0.squares() != a)
    fail_input("initial system has squares " + seq_text(a0.squares()) + ", expected " + seq_text(a));
  auto run = run_census(a0, {s}, mode, opt);
  if (!run.complete())
    fail_input("search_counterexamples needs a complete run; use run_census for truncated runs");
  return run.records.front();
}

AgreementResult checker_agreement(const SurfaceModel& s, const ToricSystem& a0, std::uint64_t samples) {
  require_census_sequence(a0);
  const int degree = a0.lattice().degree();
  const std::vector<SurfaceModel> one{s};
  CensusOptions opt;
  opt.keep_systems = false;
  const CensusPlan plan(a0, one, CensusMode::kStrong, opt);
  TaskResult r;
  CensusVisitor v(plan, r, a0.terms());
  // Evenly spaced over the walk; degree 1 takes the first `samples`.
  const std::uint64_t order = degree >= 2 ? group_order(degree) : samples;
  v.stride = std::max<std::uint64_t>(1, order / std::max<std::uint64_t>(1, samples));
  AgreementResult res;
  struct Stop {};
  v.sample = [&](const std::vector<DivisorClass>& t, bool census_strong, bool census_exc) {
    ToricSystem a(s.lattice(), t);
    ++res.samples;
    const bool ref_s = check_strong(s, a, CheckMethod::kReference).ok;
    const bool opt_s = check_strong(s, a, CheckMethod::kOptimized).ok;
    const bool ref_e = check_exceptional(s, a, CheckMethod::kReference).ok;
    const bool opt_e = check_exceptional(s, a, CheckMethod::kOptimized).ok;
    bool line = false;
    for (const auto& w : plan.lines)
      line = line || s.is_irreducible_line(a.window(w.k, w.l));
    // A census hit is an exceptional system with no irreducible line in I(X,A).
    if (ref_s != opt_s || ref_e != opt_e || census_strong != (ref_s && !line) || census_exc != (ref_e && !line))
      ++res.disagreements;
    if (degree < 2 && res.samples >= samples)
      throw Stop{};
  };
  try {
    walk(plan.weyl, v);
  } catch (const Stop&) {
  }
  return res;
}

}  // namespace wdp
