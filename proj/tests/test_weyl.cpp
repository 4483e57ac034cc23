#include "doctest.h"

#include <random>
#include <set>

#include "wdp/errors.hpp"
#include "wdp/toric.hpp"
#include "wdp/weyl.hpp"

using namespace wdp;

namespace {

// A standard system on the degree-d blow-up: augment at the end each time.
ToricSystem standard_system(int degree) {
  ToricSystem a = plane_system();
  while (a.lattice().points() < 9 - degree)
    a = augment(a, a.size() + 1);
  return a;
}

// Independent oracle: closure of the identity under the generators, with
// elements keyed by their full image matrices.
std::size_t brute_force_order(int degree) {
  const auto lat = PicardLattice::standard(degree);
  const auto gens = weyl_generators(lat);
  std::set<std::vector<DivisorClass>> seen;
  std::vector<WeylElement> todo{WeylElement::identity(lat)};
  seen.insert(todo.back().images());
  while (!todo.empty()) {
    WeylElement w = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      auto next = WeylElement::reflection(lat, g).compose(w);
      if (seen.insert(next.images()).second)
        todo.push_back(next);
    }
  }
  return seen.size();
}

}  // namespace

TEST_CASE("reflections") {
  auto lat = PicardLattice::standard(5);
  auto r = lat.E(1) - lat.E(2);
  CHECK(reflect(lat, r, lat.E(1)) == lat.E(2));
  CHECK(reflect(lat, r, lat.E(3)) == lat.E(3));
  CHECK(reflect(lat, r, lat.canonical()) == lat.canonical());
  auto q = lat.L() - lat.E(1) - lat.E(2) - lat.E(3);
  CHECK(reflect(lat, q, lat.E(1)) == lat.L() - lat.E(2) - lat.E(3));

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-5, 5);
  const auto roots = enumerate_classes(lat, -2);
  std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
  for (int t = 0; t < 300; ++t) {
    DivisorClass d = lat.zero(), e = lat.zero();
    for (int i = 0; i < lat.rank(); ++i) {
      d[i] = c(rng);
      e[i] = c(rng);
    }
    const auto& rr = roots[pick(rng)];
    CHECK(reflect(lat, rr, reflect(lat, rr, d)) == d);
    CHECK(lat.intersect(reflect(lat, rr, d), reflect(lat, rr, e)) == lat.intersect(d, e));
  }
}

TEST_CASE("weyl elements") {
  auto lat = PicardLattice::standard(4);
  auto gens = weyl_generators(lat);
  CHECK(gens.size() == 5);
  auto w = WeylElement::from_word(lat, gens, {0, 4, 2, 1});
  CHECK(w.preserves_form());
  CHECK(w.fixes_canonical());
  CHECK(std::abs(w.determinant()) == 1);
  // g_1 applied first.
  auto manual = WeylElement::reflection(lat, gens[1])
                    .compose(WeylElement::reflection(lat, gens[2]))
                    .compose(WeylElement::reflection(lat, gens[4]))
                    .compose(WeylElement::reflection(lat, gens[0]));
  CHECK(w == manual);
  auto bad = w.images();
  bad[0] = 2 * bad[0];
  CHECK_THROWS(WeylElement::from_images(lat, bad));
  CHECK(weyl_generators(PicardLattice::standard(7)).size() == 1);
  CHECK(weyl_generators(PicardLattice::standard(8)).empty());
}

TEST_CASE("group orders") {
  CHECK(group_order(7) == 2);
  CHECK(group_order(6) == 12);
  CHECK(group_order(5) == 120);
  CHECK(group_order(4) == 1920);
  CHECK(group_order(3) == 51840);
  for (int d = 4; d <= 7; ++d)
    CHECK(brute_force_order(d) == group_order(d));

  // Streamed elements are distinct isometries fixing K.
  std::set<std::vector<DivisorClass>> seen;
  bool all_ok = true;
  const auto n = enumerate_group(4, [&](const WeylElement& w) {
    all_ok = all_ok && w.preserves_form() && w.fixes_canonical();
    seen.insert(w.images());
  });
  CHECK(all_ok);
  CHECK(n == 1920);
  CHECK(seen.size() == 1920);
}

TEST_CASE("split walks cover the group once") {
  for (int degree = 3; degree <= 6; ++degree) {
    WeylPlan plan(PicardLattice::standard(degree));
    for (int depth : {1, 3, 6}) {
      auto split = split_walk(plan, depth);
      struct Null {
        void descend(int, int) {}
        void visit(int) {}
      } v;
      std::uint64_t total = split.head.size();
      for (const auto& t : split.tasks)
        total += walk_task(plan, v, t);
      CHECK(total == group_order(degree));
    }
  }
}

TEST_CASE("orbits are free") {
  for (int degree = 5; degree <= 7; ++degree) {
    auto a0 = standard_system(degree);
    std::set<std::vector<DivisorClass>> systems;
    const auto n = orbit_of_toric_system(a0, [&](const ToricSystem& a) {
      CHECK(axiom_violations(a.lattice(), a.terms()).empty());
      CHECK(a.squares() == a0.squares());
      systems.insert(a.terms());
    }, true);
    CHECK(n == group_order(degree));
    CHECK(systems.size() == n);
  }
}

TEST_CASE("stabilizers of root sets") {
  CHECK(stabilizer_order_of_root_set(6, {}) == 12);
  const auto& s5 = catalog_load(5).find("A2");
  auto stab = stabilizer_of_root_set(5, s5.simple_roots());
  CHECK(stab.size() == stabilizer_order_of_root_set(5, s5.simple_roots()));
  CHECK(group_order(5) % stab.size() == 0);
  std::set<DivisorClass> roots(s5.simple_roots().begin(), s5.simple_roots().end());
  for (const auto& w : stab) {
    std::set<DivisorClass> image;
    for (const auto& r : roots)
      image.insert(w.apply(r));
    CHECK(image == roots);
  }
  // Brute force over the whole group.
  std::uint64_t direct = 0;
  enumerate_group(5, [&](const WeylElement& w) {
    std::set<DivisorClass> image;
    for (const auto& r : roots)
      image.insert(w.apply(r));
    direct += image == roots;
  });
  CHECK(direct == stab.size());

  CHECK(stabilizer_order_of_root_set(2, catalog_load(2).find("7A1").simple_roots()) == 168);
  CHECK(stabilizer_order_of_root_set(2, catalog_load(2).find("A1+2A3").simple_roots()) == 4);
}
