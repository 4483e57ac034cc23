#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "wdp/errors.hpp"
#include "wdp/surface.hpp"

namespace wdp {

namespace {

using Rows = std::vector<CatalogRow>;

const Rows kDegree7 = {
    {"none", {}, 3, -1},
    {"A1", {"E1-E2"}, 2, -1},
};

const Rows kDegree6 = {
    {"none", {}, 6, 0},
    {"A1,4", {"E1-E2"}, 4, 0},
    {"A1,3", {"L123"}, 3, 0},
    {"2A1", {"E1-E2", "L123"}, 2, 0},
    {"A2", {"E1-E2", "E2-E3"}, 2, 1},
    {"A1+A2", {"E1-E2", "E2-E3", "L123"}, 1, 1},
};

const Rows kDegree5 = {
    {"none", {}, 10, 0},
    {"A1", {"E1-E2"}, 7, 0},
    {"2A1", {"E1-E2", "E3-E4"}, 5, 0},
    {"A2", {"E1-E2", "E2-E3"}, 4, 0},
    {"A1+A2", {"E1-E2", "E2-E3", "L123"}, 3, 0},
    {"A3", {"E1-E2", "E2-E3", "E3-E4"}, 2, 1},
    {"A4", {"E1-E2", "E2-E3", "E3-E4", "L123"}, 1, 2},
};

const Rows kDegree4 = {
    {"none", {}, 16, 0},
    {"A1", {"E4-E5"}, 12, 0},
    {"2A1,9", {"E2-E3", "E4-E5"}, 9, 0},
    {"2A1,8", {"L123", "E4-E5"}, 8, 1},
    {"A2", {"E3-E4", "E4-E5"}, 8, 0},
    {"3A1", {"L123", "E2-E3", "E4-E5"}, 6, 1},
    {"A1+A2", {"E1-E2", "E3-E4", "E4-E5"}, 6, 0},
    {"A3,5", {"E2-E3", "E3-E4", "E4-E5"}, 5, 0},
    {"A3,4", {"L123", "E3-E4", "E4-E5"}, 4, 2},
    {"4A1", {"E1-E2", "E4-E5", "L123", "L345"}, 4, 2},
    {"2A1+A2", {"E1-E2", "E2-E3", "E4-E5", "L123"}, 4, 1},
    {"A1+A3", {"E1-E2", "E3-E4", "E4-E5", "L123"}, 3, 2},
    {"A4", {"E1-E2", "E2-E3", "E3-E4", "E4-E5"}, 3, 1},
    {"2A1+A3", {"E1-E2", "L345", "E3-E4", "E4-E5", "L123"}, 2, 3},
    {"D4", {"E2-E3", "E3-E4", "E4-E5", "L123"}, 2, 3},
    {"D5", {"E1-E2", "E2-E3", "E3-E4", "E4-E5", "L123"}, 1, 5},
};

const Rows kDegree3 = {
    {"none", {}, 27, 0},
    {"A1", {"2L-E123456"}, 21, 0},
    {"2A1", {"E1-E2", "E3-E4"}, 16, 0},
    {"A2", {"E1-E2", "E2-E3"}, 15, 0},
    {"3A1", {"E1-E2", "E3-E4", "E5-E6"}, 12, 0},
    {"A1+A2", {"E4-E5", "E1-E2", "E2-E3"}, 11, 1},
    {"A3", {"E1-E2", "E2-E3", "E3-E4"}, 10, 0},
    {"4A1", {"E1-E2", "E3-E4", "E5-E6", "2L-E123456"}, 9, 0},
    {"2A1+A2", {"E4-E5", "L123", "E1-E2", "E2-E3"}, 8, 2},
    {"A1+A3", {"E5-E6", "E1-E2", "E2-E3", "E3-E4"}, 7, 2},
    {"2A2", {"E1-E2", "E2-E3", "E4-E5", "E5-E6"}, 7, 3},
    {"A4", {"E1-E2", "E2-E3", "E3-E4", "E4-E5"}, 6, 3},
    {"D4", {"E1-E2", "E3-E4", "E5-E6", "L135"}, 6, 0},
    {"2A1+A3", {"E5-E6", "2L-E123456", "E1-E2", "E2-E3", "E3-E4"}, 5, 4},
    {"A1+2A2", {"L123", "E1-E2", "E2-E3", "E4-E5", "E5-E6"}, 5, 5},
    {"A1+A4", {"2L-E123456", "E1-E2", "E2-E3", "E3-E4", "E4-E5"}, 4, 6},
    {"A5", {"E1-E2", "E2-E3", "E3-E4", "E4-E5", "E5-E6"}, 3, 9},
    {"D5", {"E1-E2", "E2-E3", "E3-E4", "E4-E5", "L126"}, 3, 7},
    {"3A2", {"E1-E2", "E2-E3", "E4-E5", "E5-E6", "L123", "L456"}, 3, 9},
    {"A1+A5", {"2L-E123456", "E1-E2", "E2-E3", "E3-E4", "E4-E5", "E5-E6"}, 2, 12},
    {"E6", {"L123", "E1-E2", "E2-E3", "E3-E4", "E4-E5", "E5-E6"}, 1, 17},
};

// Degree 2: the root subsystems of E7 relevant to the census, plus small
// ones for testing. Representatives come from find_configuration except
// A1+2A3, whose curves are fixed by the worked counterexample.
const std::vector<std::string> kDegree2Types = {
    "none", "A1", "2A1", "A2", "5A1", "6A1", "7A1", "A3+3A1",
    "D4+2A1", "D4+3A1", "D6+A1", "A7", "E7"};
const std::vector<std::string> kDegree2Explicit = {
    "L123", "E1-E2", "E2-E3", "2L-E124567", "E4-E5", "E5-E6", "E6-E7"};

const std::vector<std::string> kDegree1Types = {"none", "A1", "2A1", "A2", "D4", "E8"};

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j)
    prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Nodes of a connected Dynkin diagram in a fixed order, with edges.
// A_n: path 0-1-...-(n-1). D_n: path 0..n-2, node n-1 attached to n-3.
// E_n: path 0..n-2, node n-1 attached to node 2.
std::vector<std::pair<int, int>> component_edges(const std::string& comp) {
  const char fam = comp[0];
  const int n = std::stoi(comp.substr(1));
  std::vector<std::pair<int, int>> e;
  if (fam == 'A') {
    for (int i = 0; i + 1 < n; ++i)
      e.push_back({i, i + 1});
  } else {
    for (int i = 0; i + 2 < n; ++i)
      e.push_back({i, i + 1});
    e.push_back({fam == 'D' ? n - 3 : 2, n - 1});
  }
  return e;
}

struct Pattern {
  int size = 0;
  std::vector<std::vector<int>> adj;  // 0/1 adjacency
};

Pattern pattern_for(const DynkinType& type) {
  // Larger components first so the DFS fixes the rigid part early.
  std::vector<std::string> comps;
  for (const auto& [c, m] : type)
    for (int i = 0; i < m; ++i)
      comps.push_back(c);
  std::stable_sort(comps.begin(), comps.end(), [](const std::string& a, const std::string& b) {
    return std::stoi(a.substr(1)) > std::stoi(b.substr(1));
  });
  Pattern p;
  for (const auto& c : comps)
    p.size += std::stoi(c.substr(1));
  p.adj.assign(p.size, std::vector<int>(p.size, 0));
  int base = 0;
  for (const auto& c : comps) {
    for (auto [a, b] : component_edges(c))
      p.adj[base + a][base + b] = p.adj[base + b][base + a] = 1;
    base += std::stoi(c.substr(1));
  }
  return p;
}

DivisorClass marker(const PicardLattice& lat) {
  DivisorClass v = lat.L();
  for (int i = 1; i <= lat.points(); ++i)
    v = v + i * lat.E(i);
  return v;
}

SurfaceModel from_rows(int degree, const CatalogRow& row) {
  auto lat = PicardLattice::standard(degree);
  std::vector<DivisorClass> roots;
  for (const auto& s : row.roots)
    roots.push_back(parse_class(lat, s));
  return SurfaceModel(lat, roots, row.name, row.lines);
}

SurfaceCatalog build(int degree) {
  SurfaceCatalog cat;
  cat.degree = degree;
  if (degree >= 3) {
    for (const auto& row : catalog_rows(degree))
      cat.entries.push_back(from_rows(degree, row));
    return cat;
  }
  auto lat = PicardLattice::standard(degree);
  const auto& types = degree == 2 ? kDegree2Types : kDegree1Types;
  for (const auto& name : types) {
    auto roots = find_configuration(degree, parse_dynkin(name));
    if (!roots)
      fail_invariant("no configuration of type " + name + " in degree " + std::to_string(degree));
    cat.entries.emplace_back(lat, *roots, name);
    if (degree == 2 && name == "A3+3A1") {
      std::vector<DivisorClass> explicit_roots;
      for (const auto& s : kDegree2Explicit)
        explicit_roots.push_back(parse_class(lat, s));
      cat.entries.emplace_back(lat, explicit_roots, "A1+2A3");
    }
  }
  return cat;
}

}  // namespace

const std::vector<CatalogRow>& catalog_rows(int degree) {
  static const Rows kEmpty;
  switch (degree) {
    case 7: return kDegree7;
    case 6: return kDegree6;
    case 5: return kDegree5;
    case 4: return kDegree4;
    case 3: return kDegree3;
    default: return kEmpty;
  }
}

std::optional<std::vector<DivisorClass>> find_configuration(int degree, const DynkinType& type) {
  auto lat = PicardLattice::standard(degree);
  if (type.empty())
    return std::vector<DivisorClass>{};
  const DivisorClass v = marker(lat);
  std::vector<DivisorClass> pos;
  for (const auto& r : enumerate_classes(lat, -2))
    if (lat.intersect(v, r) > 0)
      pos.push_back(r);
  const Pattern p = pattern_for(type);
  const int m = static_cast<int>(pos.size());
  // Products between positive roots, precomputed once.
  std::vector<std::vector<int>> prod(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      prod[i][j] = static_cast<int>(lat.intersect(pos[i], pos[j]));
  std::vector<int> pick;
  std::vector<char> used(m, 0);
  std::function<bool()> dfs = [&]() -> bool {
    const int node = static_cast<int>(pick.size());
    if (node == p.size)
      return true;
    for (int c = 0; c < m; ++c) {
      if (used[c])
        continue;
      bool ok = true;
      for (int j = 0; j < node && ok; ++j)
        ok = prod[c][pick[j]] == p.adj[node][j];
      if (!ok)
        continue;
      used[c] = 1;
      pick.push_back(c);
      if (dfs())
        return true;
      pick.pop_back();
      used[c] = 0;
    }
    return false;
  };
  if (!dfs())
    return std::nullopt;
  std::vector<DivisorClass> out;
  for (int c : pick)
    out.push_back(pos[c]);
  return out;
}

const SurfaceCatalog& catalog_load(int degree) {
  if (degree < 1 || degree > 7)
    fail_input("catalog degree must be between 1 and 7, got " + std::to_string(degree));
  static std::mutex mu;
  static std::map<int, SurfaceCatalog> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(degree);
  if (it == cache.end())
    it = cache.emplace(degree, build(degree)).first;
  return it->second;
}

const SurfaceModel& SurfaceCatalog::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name() == name)
      return e;
  // Accept any spelling of the same Dynkin type when it is unambiguous.
  DynkinType want;
  bool parsed = true;
  try {
    want = parse_dynkin(name);
  } catch (const InputError&) {
    parsed = false;
  }
  if (parsed) {
    const SurfaceModel* hit = nullptr;
    int hits = 0;
    for (const auto& e : entries)
      if (e.dynkin() == want) {
        hit = &e;
        ++hits;
      }
    if (hits == 1)
      return *hit;
  }
  std::string best;
  std::size_t best_d = ~std::size_t{0};
  for (const auto& e : entries) {
    std::size_t dist = edit_distance(name, e.name());
    if (dist < best_d) {
      best_d = dist;
      best = e.name();
    }
  }
  fail_input("no surface '" + name + "' in degree " + std::to_string(degree) +
             (best.empty() ? std::string() : "; did you mean '" + best + "'?"));
}

}  // namespace wdp
