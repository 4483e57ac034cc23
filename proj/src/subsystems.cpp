#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <unordered_set>

#include "wdp/census.hpp"
#include "wdp/errors.hpp"
#include "wdp/weyl.hpp"

namespace wdp {

namespace {

// Set of root indices (at most 240 roots).
struct Mask {
  std::array<std::uint64_t, 4> w{};
  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  friend bool operator==(const Mask&, const Mask&) = default;
};
struct MaskHash {
  std::size_t operator()(const Mask& m) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto x : m.w)
      h = (h ^ x) * 0xbf58476d1ce4e5b9ull;
    return h;
  }
};

Mask mask_of(const std::vector<int>& idx) {
  Mask m;
  for (int i : idx)
    m.set(i);
  return m;
}

// All roots of the subsystem spanned by the given roots: closure under the
// reflections in its members.
std::vector<int> closure(const PicardLattice& lat, const ActionTables& t, const std::vector<int>& idx) {
  std::vector<char> in(t.roots.size(), 0);
  std::vector<int> out;
  for (int i : idx)
    for (int j : {i, t.root_negation[i]})
      if (!in[j]) {
        in[j] = 1;
        out.push_back(j);
      }
  for (std::size_t k = 0; k < out.size(); ++k)
    for (int p : idx) {
      const int j = t.root(reflect(lat, t.roots[p], t.roots[out[k]]));
      if (!in[j]) {
        in[j] = 1;
        out.push_back(j);
      }
    }
  return out;
}

// W-orbit of a set of roots, as masks: breadth-first over the generators,
// so the cost scales with the orbit rather than the group. Applied to whole
// subsystems, whose stabilizers contain their own Weyl groups, the orbits
// stay small.
std::unordered_set<Mask, MaskHash> set_orbit(const ActionTables& tables, const std::vector<int>& idx) {
  std::unordered_set<Mask, MaskHash> out{mask_of(idx)};
  std::vector<std::vector<int>> todo{idx};
  std::vector<int> img(idx.size());
  while (!todo.empty()) {
    const std::vector<int> cur = std::move(todo.back());
    todo.pop_back();
    for (const auto& perm : tables.root_perm) {
      for (std::size_t i = 0; i < cur.size(); ++i)
        img[i] = perm[cur[i]];
      if (out.insert(mask_of(img)).second)
        todo.push_back(img);
    }
  }
  return out;
}

struct ClassData {
  std::vector<int> roots;  // root indices
  DynkinType type;
  std::unordered_set<Mask, MaskHash> orbit;
};

std::optional<DynkinType> type_of(const PicardLattice& lat, const ActionTables& t, const std::vector<int>& idx) {
  const std::size_t k = idx.size();
  std::vector<std::vector<long>> gram(k, std::vector<long>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      gram[i][j] = lat.intersect(t.roots[idx[i]], t.roots[idx[j]]);
  return classify_dynkin(gram);
}

// Level-by-level extension: every configuration minus one root is again a
// configuration, so extending one representative per class by one root
// reaches every class of the next size.
std::vector<std::vector<int>> enumerate_classes(int degree) {
  if (degree < 1 || degree > 7)
    fail_input("root subsystem classes are enumerated for degrees 1..7");
  const auto lat = PicardLattice::standard(degree);
  const auto& t = action_tables(degree);
  const int nroots = static_cast<int>(t.roots.size());
  std::vector<std::vector<int>> out{{}};
  std::vector<std::vector<int>> level{{}};
  while (!level.empty()) {
    std::vector<ClassData> next;
    for (const auto& base : level) {
      for (int r = 0; r < nroots; ++r) {
        bool ok = true;
        for (int b : base) {
          const long p = lat.intersect(t.roots[b], t.roots[r]);
          if (b == r || (p != 0 && p != 1)) {
            ok = false;
            break;
          }
        }
        if (!ok)
          continue;
        std::vector<int> cand(base);
        cand.push_back(r);
        auto type = type_of(lat, t, cand);
        if (!type)
          continue;
        const Mask m = mask_of(closure(lat, t, cand));
        bool known = false;
        for (const auto& c : next)
          if (c.type == *type && c.orbit.count(m)) {
            known = true;
            break;
          }
        if (known)
          continue;
        next.push_back({cand, *type, set_orbit(t, closure(lat, t, cand))});
      }
    }
    level.clear();
    for (auto& c : next) {
      out.push_back(c.roots);
      level.push_back(std::move(c.roots));
    }
  }
  return out;
}

std::string base_name(const SurfaceModel& s) { return format_dynkin(s.dynkin()); }

}  // namespace

std::vector<SurfaceModel> root_subsystem_classes(int degree) {
  static std::mutex mu;
  static std::map<int, std::vector<SurfaceModel>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(degree); it != cache.end())
    return it->second;
  const auto lat = PicardLattice::standard(degree);
  const auto& t = action_tables(degree);
  std::vector<SurfaceModel> models;
  for (const auto& idx : enumerate_classes(degree)) {
    std::vector<DivisorClass> roots;
    for (int i : idx)
      roots.push_back(t.roots[i]);
    SurfaceModel s(lat, roots, "");
    models.emplace_back(lat, roots, base_name(s), static_cast<int>(s.irreducible_lines().size()));
  }
  // Types with several classes get the line count appended.
  std::map<std::string, int> count;
  for (const auto& s : models)
    ++count[s.name()];
  std::vector<SurfaceModel> named;
  std::map<std::string, int> seen;
  for (const auto& s : models) {
    std::string name = s.name();
    if (count[name] > 1) {
      name += "," + std::to_string(*s.line_count());
      // Same type and line count: number them.
      if (++seen[name] > 1)
        name += "#" + std::to_string(seen[name]);
    }
    named.emplace_back(lat, s.simple_roots(), name, s.line_count());
  }
  std::stable_sort(named.begin(), named.end(), [](const SurfaceModel& a, const SurfaceModel& b) {
    if (a.simple_roots().size() != b.simple_roots().size())
      return a.simple_roots().size() < b.simple_roots().size();
    return a.name() < b.name();
  });
  cache[degree] = named;
  return named;
}

std::optional<std::size_t> conjugate_class(int degree, const std::vector<SurfaceModel>& classes,
                                           const std::vector<DivisorClass>& roots) {
  const auto lat = PicardLattice::standard(degree);
  const auto& t = action_tables(degree);
  std::vector<int> idx;
  for (const auto& r : roots) {
    const int i = t.root(r);
    if (i < 0)
      fail_input(format_class(lat, r) + " is not a (-2)-class");
    idx.push_back(i);
  }
  const auto orbit = set_orbit(t, closure(lat, t, idx));
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].simple_roots().size() != roots.size())
      continue;
    std::vector<int> ci;
    for (const auto& r : classes[c].simple_roots())
      ci.push_back(t.root(r));
    if (orbit.count(mask_of(closure(lat, t, ci))))
      return c;
  }
  return std::nullopt;
}

std::vector<SurfaceModel> census_surfaces(int degree) {
  auto classes = root_subsystem_classes(degree);
  if (degree == 2) {
    const auto& worked = catalog_load(2).find("A1+2A3");
    auto c = conjugate_class(2, classes, worked.simple_roots());
    if (!c)
      fail_invariant("the worked A1+2A3 configuration matches no subsystem class");
    classes[*c] = SurfaceModel(worked.lattice(), worked.simple_roots(), classes[*c].name(),
                               classes[*c].line_count());
  }
  return classes;
}

}  // namespace wdp
