#include "wdp/weyl.hpp"

#include <array>
#include <cstdlib>
#include <map>
#include <mutex>

#include "wdp/errors.hpp"
#include "wdp/toric.hpp"

namespace wdp {

DivisorClass reflect(const PicardLattice& lat, const DivisorClass& r, const DivisorClass& d) {
  return d + static_cast<int>(lat.intersect(d, r)) * r;
}

WeylElement WeylElement::identity(const PicardLattice& lat) {
  std::vector<DivisorClass> im;
  for (int i = 0; i < lat.rank(); ++i)
    im.push_back(lat.basis(i));
  return WeylElement(lat, std::move(im), {});
}

WeylElement WeylElement::reflection(const PicardLattice& lat, const DivisorClass& r) {
  if (lat.square(r) != -2 || lat.dot_k(r) != 0)
    fail_input(format_class(lat, r) + " is not a (-2)-class");
  std::vector<DivisorClass> im;
  for (int i = 0; i < lat.rank(); ++i)
    im.push_back(reflect(lat, r, lat.basis(i)));
  return WeylElement(lat, std::move(im), {});
}

WeylElement WeylElement::from_word(const PicardLattice& lat, const std::vector<DivisorClass>& gens,
                                   const std::vector<int>& word) {
  std::vector<DivisorClass> im;
  for (int i = 0; i < lat.rank(); ++i) {
    DivisorClass d = lat.basis(i);
    for (int g : word)
      d = reflect(lat, gens.at(g), d);
    im.push_back(d);
  }
  return WeylElement(lat, std::move(im), word);
}

WeylElement WeylElement::from_images(const PicardLattice& lat, std::vector<DivisorClass> images,
                                     std::vector<int> word, bool check) {
  if (static_cast<int>(images.size()) != lat.rank())
    fail_input("Weyl element needs one image per basis vector");
  WeylElement w(lat, std::move(images), std::move(word));
  if (check && (!w.preserves_form() || !w.fixes_canonical()))
    fail_input("images do not define an isometry fixing K");
  return w;
}

DivisorClass WeylElement::apply(const DivisorClass& d) const {
  lat_.require(d);
  DivisorClass out = lat_.zero();
  for (int i = 0; i < lat_.rank(); ++i)
    if (d[i] != 0)
      out += d[i] * images_[i];
  return out;
}

WeylElement WeylElement::compose(const WeylElement& other) const {
  std::vector<DivisorClass> im;
  for (const auto& x : other.images_)
    im.push_back(apply(x));
  std::vector<int> w = other.word_;
  w.insert(w.end(), word_.begin(), word_.end());
  return WeylElement(lat_, std::move(im), std::move(w));
}

bool WeylElement::preserves_form() const {
  for (int i = 0; i < lat_.rank(); ++i)
    for (int j = 0; j < lat_.rank(); ++j)
      if (lat_.intersect(images_[i], images_[j]) != lat_.gram(i, j))
        return false;
  return true;
}

bool WeylElement::fixes_canonical() const { return apply(lat_.canonical()) == lat_.canonical(); }

long WeylElement::determinant() const {
  // Fraction-free elimination on the integer matrix of images.
  const int n = lat_.rank();
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[i][j] = images_[j][i];
  int sign = 1;
  __int128 prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int p = k + 1;
      while (p < n && m[p][k] == 0)
        ++p;
      if (p == n)
        return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return static_cast<long>(sign * m[n - 1][n - 1]);
}

std::vector<DivisorClass> weyl_generators(const PicardLattice& lat) {
  if (!lat.is_blowup())
    fail_input("Weyl groups are implemented for blow-up lattices only");
  std::vector<DivisorClass> g;
  const int p = lat.points();
  for (int i = 1; i < p; ++i)
    g.push_back(lat.E(i) - lat.E(i + 1));
  if (p >= 3)
    g.push_back(lat.L() - lat.E(1) - lat.E(2) - lat.E(3));
  return g;
}

WeylPlan::WeylPlan(const PicardLattice& lat) : lattice(lat), gens(weyl_generators(lat)) {
  const int k = size();
  gram.assign(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      gram[i][j] = static_cast<int>(lat.intersect(gens[i], gens[j]));
  DivisorClass v = lat.L();
  for (int i = 1; i <= lat.points(); ++i)
    v += i * lat.E(i);
  for (const auto& g : gens) {
    marker_pairing.push_back(lat.intersect(v, g));
    if (marker_pairing.back() <= 0)
      fail_invariant("marker is not in the open fundamental chamber");
  }
}

namespace {

void split_rec(const WeylPlan& plan, std::vector<long>& c, std::vector<int>& word, int depth, WeylSplit& out) {
  if (static_cast<int>(word.size()) == depth) {
    out.tasks.push_back({word, c});
    return;
  }
  out.head.push_back(word);
  const int k = plan.size();
  for (int i = 0; i < k; ++i) {
    const long ci = c[i];
    if (ci <= 0)
      continue;
    bool child = true;
    for (int j = 0; j < i && child; ++j)
      child = c[j] + ci * plan.gram[i][j] > 0;
    if (!child)
      continue;
    std::vector<long> y(k);
    for (int j = 0; j < k; ++j)
      y[j] = c[j] + ci * plan.gram[i][j];
    word.push_back(i);
    split_rec(plan, y, word, depth, out);
    word.pop_back();
  }
}

}  // namespace

WeylSplit split_walk(const WeylPlan& plan, int depth) {
  WeylSplit out;
  std::vector<long> c = plan.marker_pairing;
  std::vector<int> word;
  split_rec(plan, c, word, depth, out);
  return out;
}

ActionTables::ActionTables(const PicardLattice& lat, const std::vector<DivisorClass>& gens)
    : roots(enumerate_classes(lat, -2)), lines(enumerate_classes(lat, -1)) {
  for (int i = 0; i < static_cast<int>(roots.size()); ++i)
    root_index.emplace(roots[i], i);
  for (int i = 0; i < static_cast<int>(lines.size()); ++i)
    line_index.emplace(lines[i], i);
  for (const auto& g : gens) {
    std::vector<std::uint16_t> rp, lp;
    for (const auto& r : roots)
      rp.push_back(static_cast<std::uint16_t>(root_index.at(reflect(lat, g, r))));
    for (const auto& c : lines)
      lp.push_back(static_cast<std::uint16_t>(line_index.at(reflect(lat, g, c))));
    root_perm.push_back(std::move(rp));
    line_perm.push_back(std::move(lp));
  }
  for (const auto& r : roots)
    root_negation.push_back(root_index.at(-r));
}

int ActionTables::root(const DivisorClass& r) const {
  auto it = root_index.find(r);
  return it == root_index.end() ? -1 : it->second;
}

int ActionTables::line(const DivisorClass& c) const {
  auto it = line_index.find(c);
  return it == line_index.end() ? -1 : it->second;
}

const ActionTables& action_tables(int degree) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<ActionTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[degree];
  if (!slot) {
    auto lat = PicardLattice::standard(degree);
    slot = std::make_unique<ActionTables>(lat, weyl_generators(lat));
  }
  return *slot;
}

void require_memory(std::uint64_t bytes, const std::string& what) {
  std::uint64_t budget_mb = 1024;
  if (const char* env = std::getenv("WDP_MEMORY_BUDGET_MB"))
    budget_mb = std::strtoull(env, nullptr, 10);
  if (bytes > budget_mb * 1024 * 1024)
    throw ResourceError(what + " needs " + std::to_string(bytes >> 20) + " MiB, over the budget of " +
                        std::to_string(budget_mb) +
                        " MiB (WDP_MEMORY_BUDGET_MB); run it in shards or raise the budget");
}

namespace {

// Carries images of the basis vectors down the walk.
struct ElementVisitor {
  const WeylPlan& plan;
  const std::function<void(const WeylElement&)>& fn;
  std::vector<std::vector<DivisorClass>> images;
  std::vector<int> word;
  std::uint64_t seen = 0;

  void descend(int depth, int g) {
    if (static_cast<int>(images.size()) <= depth)
      images.resize(depth + 1);
    images[depth].clear();
    for (const auto& x : images[depth - 1])
      images[depth].push_back(reflect(plan.lattice, plan.gens[g], x));
    word.resize(depth - 1);
    word.push_back(g);
  }
  void visit(int depth) {
    // Every 10^4th element is checked to preserve the form and K.
    const bool check = seen++ % 10000 == 0;
    fn(WeylElement::from_images(plan.lattice, images[depth], std::vector<int>(word.begin(), word.begin() + depth),
                                check));
  }
};

struct CountVisitor {
  void descend(int, int) {}
  void visit(int) {}
};

// Carries the images of the terms of a toric system.
struct OrbitVisitor {
  const WeylPlan& plan;
  const std::function<void(const ToricSystem&)>& fn;
  std::vector<std::vector<DivisorClass>> terms;
  std::vector<std::uint64_t>* hashes = nullptr;

  void descend(int depth, int g) {
    if (static_cast<int>(terms.size()) <= depth)
      terms.resize(depth + 1);
    terms[depth].clear();
    for (const auto& x : terms[depth - 1])
      terms[depth].push_back(reflect(plan.lattice, plan.gens[g], x));
  }
  void visit(int depth) {
    if (hashes) {
      std::uint64_t h = 1469598103934665603ull;
      for (const auto& c : terms[depth])
        h = (h ^ c.hash()) * 1099511628211ull;
      hashes->push_back(h);
    }
    if (fn)
      fn(ToricSystem(plan.lattice, terms[depth]));
  }
};

// Carries the root indices of a root set and tests set equality.
struct StabilizerVisitor {
  const WeylPlan& plan;
  const ActionTables& tables;
  std::vector<char> member;
  std::vector<std::vector<int>> images;
  std::vector<int> word;
  std::vector<WeylElement>* out = nullptr;  // null: count only
  std::uint64_t hits = 0;

  void descend(int depth, int g) {
    if (static_cast<int>(images.size()) <= depth)
      images.resize(depth + 1);
    images[depth].clear();
    for (int r : images[depth - 1])
      images[depth].push_back(tables.root_perm[g][r]);
    word.resize(depth - 1);
    word.push_back(g);
  }
  void visit(int depth) {
    for (int r : images[depth])
      if (!member[r])
        return;
    ++hits;
    if (out)
      out->push_back(WeylElement::from_word(plan.lattice, plan.gens,
                                          std::vector<int>(word.begin(), word.begin() + depth)));
  }
};

}  // namespace

std::uint64_t enumerate_group(int degree, const std::function<void(const WeylElement&)>& fn) {
  WeylPlan plan(PicardLattice::standard(degree));
  ElementVisitor v{plan, fn, {}, {}};
  v.images.resize(1);
  for (int i = 0; i < plan.lattice.rank(); ++i)
    v.images[0].push_back(plan.lattice.basis(i));
  return walk(plan, v);
}

std::uint64_t group_order(int degree) {
  static std::mutex mu;
  static std::map<int, std::uint64_t> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(degree); it != cache.end())
      return it->second;
  }
  WeylPlan plan(PicardLattice::standard(degree));
  CountVisitor v;
  const std::uint64_t n = walk(plan, v);
  std::lock_guard<std::mutex> lock(mu);
  cache[degree] = n;
  return n;
}

std::uint64_t orbit_of_toric_system(const ToricSystem& a0, const std::function<void(const ToricSystem&)>& fn,
                                    bool check_free) {
  WeylPlan plan(a0.lattice());
  OrbitVisitor v{plan, fn, {a0.terms()}};
  std::vector<std::uint64_t> hashes;
  if (check_free) {
    const std::uint64_t order = group_order(a0.lattice().degree());
    require_memory(order * sizeof(std::uint64_t), "freeness check of the orbit");
    hashes.reserve(order);
    v.hashes = &hashes;
  }
  const std::uint64_t n = walk(plan, v);
  if (check_free) {
    std::sort(hashes.begin(), hashes.end());
    if (std::adjacent_find(hashes.begin(), hashes.end()) != hashes.end())
      fail_invariant("two group elements give toric systems with equal hashes: freeness not confirmed");
  }
  return n;
}

namespace {

std::uint64_t stabilizer_walk(int degree, const std::vector<DivisorClass>& roots, std::vector<WeylElement>* out) {
  WeylPlan plan(PicardLattice::standard(degree));
  const auto& tables = action_tables(degree);
  StabilizerVisitor v{plan, tables, std::vector<char>(tables.roots.size(), 0), {{}}, {}, out};
  for (const auto& r : roots) {
    const int i = tables.root(r);
    if (i < 0)
      fail_input(format_class(plan.lattice, r) + " is not a (-2)-class");
    v.member[i] = 1;
    v.images[0].push_back(i);
  }
  walk(plan, v);
  return v.hits;
}

}  // namespace

std::vector<WeylElement> stabilizer_of_root_set(int degree, const std::vector<DivisorClass>& roots) {
  std::vector<WeylElement> out;
  stabilizer_walk(degree, roots, &out);
  return out;
}

std::uint64_t stabilizer_order_of_root_set(int degree, const std::vector<DivisorClass>& roots) {
  return stabilizer_walk(degree, roots, nullptr);
}

}  // namespace wdp
