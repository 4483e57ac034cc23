#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "wdp/errors.hpp"
#include "wdp/sequence.hpp"
#include "wdp/toric.hpp"

using namespace wdp;

namespace {

const std::vector<std::string> kIIbSystem = {"L25", "L137", "E3-E4", "L236", "L15",
                                             "E1-E7", "-L567", "3L-E12345567", "-L345", "-2L+E12257"};

const SurfaceModel& iib_surface() { return catalog_load(2).find("A1+2A3"); }

ToricSystem iib_system() { return parse_toric(iib_surface().lattice(), kIIbSystem); }

// The worked example on X_{4,2A1,8}.
const std::vector<std::string> kExample48 = {"L-E145", "E4", "L-E234", "L-E5", "E5-E1", "L-E35", "E3-E2", "-L+E125"};

int sum(const IntSequence& a) {
  int s = 0;
  for (int v : a)
    s += v;
  return s;
}

// Random chain of augmentations starting from the plane.
ToricSystem random_augmented(std::mt19937& rng, int points) {
  ToricSystem a = plane_system();
  for (int p = 0; p < points; ++p) {
    std::uniform_int_distribution<int> m(1, a.size() + 1);
    a = augment(a, m(rng));
  }
  return a;
}

}  // namespace

TEST_CASE("toric system axioms") {
  auto a = iib_system();
  CHECK(a.size() == 10);
  CHECK(a.squares() == std::vector<int>{-1, -2, -2, -2, -1, -2, -2, -1, -2, -3});

  auto p = plane_system();
  CHECK(p.squares() == std::vector<int>{1, 1, 1});
  auto lat0 = PicardLattice::blowup(0);
  CHECK_FALSE(axiom_violations(lat0, {lat0.L(), lat0.L(), 2 * lat0.L()}).empty());
  CHECK_THROWS_AS(validate(lat0, {lat0.L(), lat0.L(), 2 * lat0.L()}), InputError);

  // Swapping two adjacent terms breaks the adjacency products.
  std::vector<DivisorClass> t(a.terms());
  std::swap(t[0], t[1]);
  CHECK_THROWS_AS(validate(a.lattice(), t), InputError);
  CHECK(format_toric(a).size() == 10);
  CHECK(parse_toric(a.lattice(), format_toric(a)) == a);
}

TEST_CASE("window arithmetic") {
  auto a = iib_system();
  const auto& lat = a.lattice();
  CHECK(a.window(2, 3) == parse_class(lat, "L147"));
  CHECK(a.window(3, 4) == parse_class(lat, "L246"));
  CHECK(a.window(2, 4) == parse_class(lat, "2L-E123467"));
  CHECK(a.window(6, 7) == parse_class(lat, "-L156"));
  CHECK(a.window(9, 10) == parse_class(lat, "-3L+E12234557"));
  // A_{1..n-1} = -K - A_n.
  CHECK(a.window(1, 9) == -lat.canonical() - a.at(10));
  CHECK_THROWS_AS(a.window(3, 2), InputError);
  for (int k = 1; k <= a.size(); ++k)
    for (int len = 1; len < a.size(); ++len) {
      const int l = a.index(k + len - 1) + 1;
      CHECK(a.window_square(k, l) == lat.square(a.window(k, l)));
    }
  CHECK(a.at(0) == a.at(10));
  CHECK(a.at(11) == a.at(1));
}

TEST_CASE("permutation, shift and symmetry") {
  auto a = iib_system();
  for (int k = 1; k <= a.size(); ++k) {
    if (a.lattice().square(a.at(k)) != -2) {
      CHECK_THROWS_AS(perm(a, k), InputError);
      continue;
    }
    auto b = perm(a, k);
    CHECK(axiom_violations(b.lattice(), b.terms()).empty());
    CHECK(b.squares() == a.squares());
    CHECK(perm(b, k) == a);
  }
  ToricSystem s = a;
  for (int i = 0; i < a.size(); ++i) {
    s = shift(s);
    CHECK(axiom_violations(s.lattice(), s.terms()).empty());
  }
  CHECK(s == a);
  CHECK(shift(a).at(1) == a.at(2));
  auto y = symmetry(a);
  CHECK(axiom_violations(y.lattice(), y.terms()).empty());
  CHECK(symmetry(y) == a);
  CHECK(y.squares() == sequence_symmetry(a.squares()));
}

TEST_CASE("augmentation of sequences and systems") {
  CHECK(augment_sequence({0, 0, 0, 0}, 1) == IntSequence{-1, -1, 0, 0, -1});
  CHECK(augment_sequence({1, 1, 1}, 4) == IntSequence{0, 1, 0, -1});
  CHECK_THROWS_AS(augment_sequence({1, 1, 1}, 5), InputError);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> pts(0, 7);
    auto a = random_augmented(rng, pts(rng));
    std::uniform_int_distribution<int> m(1, a.size() + 1);
    const int mm = m(rng);
    auto b = augment(a, mm);
    CHECK(b.squares() == augment_sequence(a.squares(), mm));
    CHECK(is_admissible(b.squares()));
    CHECK(sum(b.squares()) == 12 - 3 * b.size());
    for (int k = 1; k <= b.size(); ++k)
      for (int len = 1; len < b.size(); ++len) {
        const int l = (k + len - 2) % b.size() + 1;
        CHECK(b.window_square(k, l) == b.lattice().square(b.window(k, l)));
      }
  }
}

TEST_CASE("admissibility") {
  CHECK(is_admissible({1, 1, 1}));
  CHECK(is_admissible({0, 3, 0, -3}));
  CHECK(is_admissible({-1, -2, -2, -2, -1, -2, -2, -1, -2, -3}));
  CHECK(is_admissible({-2, -2, -1, -2, -2, -1, -2, -2, -1}));
  CHECK_FALSE(is_admissible({1, 1, 2}));
  CHECK_FALSE(is_admissible({0, 0, 0, -1}));
  CHECK_FALSE(is_admissible({-2, -2, -2, -2, -2}));
  // Invariant under rotation and reversal.
  IntSequence a{-2, -1, -2, -2, 0, 1};
  for (int i = 0; i < 6; ++i) {
    std::rotate(a.begin(), a.begin() + 1, a.end());
    CHECK(is_admissible(a));
    CHECK(is_admissible(IntSequence(a.rbegin(), a.rend())));
  }
}

TEST_CASE("cyclic strong admissible sequences") {
  const auto& table = cyclic_strong_table();
  CHECK(table.size() == 15);
  std::set<IntSequence> tabulated;
  for (const auto& row : table) {
    CHECK_MESSAGE(is_admissible(row.values), row.name);
    CHECK(sum(row.values) == 12 - 3 * static_cast<int>(row.values.size()));
    tabulated.insert(dihedral_canonical(row.values));
  }
  auto found = enumerate_cyclic_strong_admissible();
  CHECK(found.size() == 15);
  CHECK(std::set<IntSequence>(found.begin(), found.end()) == tabulated);
  auto count_len = [&](std::size_t n) {
    return std::count_if(found.begin(), found.end(), [n](const IntSequence& s) { return s.size() == n; });
  };
  CHECK(count_len(4) == 3);
  CHECK(count_len(9) == 1);
}

TEST_CASE("sequence classification") {
  auto r = classify_sequence({-1, -2, -2, -2, -1, -2, -2, -1, -2, -3});
  CHECK(r.kind == SequenceKind::kSecond);
  CHECK(r.type == "IIb");
  auto f = classify_sequence({0, 0, -1, -1, -1});
  CHECK(f.kind == SequenceKind::kFirst);
  CHECK(f.type == "5a");
  CHECK(classify_sequence({-1, 0, 0, -1, -1}).type == "5a");
  // (1,0,-1,-2,...,-2,-1,4-n) breaks the sum rule, hence is not admissible.
  for (int n = 6; n <= 10; ++n) {
    IntSequence bad{1, 0, -1};
    while (static_cast<int>(bad.size()) < n - 2)
      bad.push_back(-2);
    bad.push_back(-1);
    bad.push_back(4 - n);
    CHECK_THROWS_AS(classify_sequence(bad), InputError);
  }
  CHECK(classify_sequence({1, 0, -2, -2, -2, -1, -3}).type == "IIIa");
  CHECK(classify_sequence({1, 0, -2, -2, -1, -2}).type == "6d");
  CHECK(classify_sequence({1, 1, 1}).type == "P2");
  CHECK(classify_sequence({0, -5, 0, 5}).type == "F5");
  CHECK_THROWS_AS(classify_sequence({1, 1, 2}), InputError);

  const std::vector<std::pair<IntSequence, std::string>> degree2 = {
      {{-2, -2, -1, -2, 0, -2, -2, -2, -1, -4}, "VI"},  {{-2, -1, -1, 0, -2, -2, -2, -2, -1, -5}, "V"},
      {{-2, 0, 1, -2, -2, -2, -2, -2, -1, -6}, "IV"},   {{-1, -2, -2, -2, 0, 0, -2, -2, -1, -6}, "IIIc"},
      {{-1, -2, -2, -2, -2, 0, 0, -2, -1, -6}, "IIIc"}, {{-1, -2, -2, -2, -2, -2, 0, 0, -1, -6}, "IIIc"},
      {{-1, -2, -2, -2, -2, -2, -2, 0, 1, -6}, "IIIa"},
  };
  for (const auto& [seq, type] : degree2) {
    auto k = classify_sequence(seq);
    CHECK(k.kind == SequenceKind::kSecond);
    CHECK(k.type == type);
  }
}

TEST_CASE("every strong admissible sequence of length <= 11 classifies") {
  // Closure of the base cases under augmentations keeping at most one entry
  // below -2; the Hirzebruch parameter bounds the single low entry.
  std::set<IntSequence> seen;
  std::vector<IntSequence> todo;
  auto strong = [](const IntSequence& a) {
    return std::count_if(a.begin(), a.end(), [](int v) { return v < -2; }) <= 1;
  };
  todo.push_back({1, 1, 1});
  for (int k = -8; k <= 8; ++k)
    todo.push_back({0, k, 0, -k});
  for (const auto& t : todo)
    seen.insert(dihedral_canonical(t));
  int second = 0;
  while (!todo.empty()) {
    IntSequence a = todo.back();
    todo.pop_back();
    if (!strong(a))
      continue;
    const auto r = classify_sequence(a);
    if (r.kind == SequenceKind::kSecond)
      ++second;
    if (a.size() >= 11)
      continue;
    for (int m = 1; m <= static_cast<int>(a.size()) + 1; ++m) {
      auto b = augment_sequence(a, m);
      if (strong(b) && seen.insert(dihedral_canonical(b)).second)
        todo.push_back(b);
    }
  }
  CHECK(second > 100);
}

TEST_CASE("I(X,A) windows") {
  CHECK(compute_ixa({0, 0, -1, -1, -1}) == std::vector<std::pair<int, int>>{{3, 3}, {4, 4}, {5, 5}});
  std::vector<std::size_t> counts;
  for (const auto& row : cyclic_strong_table())
    if (row.values.size() >= 5)
      counts.push_back(compute_ixa(row.values).size());
  CHECK(counts == std::vector<std::size_t>{3, 3, 6, 6, 6, 6, 10, 10, 16, 16, 16, 27});

  // First-kind rows at degree <= 7 realise all of I(X).
  const int lines[] = {0, 240, 56, 27, 16, 10, 6, 3};
  for (const auto& row : cyclic_strong_table()) {
    const int degree = 12 - static_cast<int>(row.values.size());
    if (degree <= 7)
      CHECK(compute_ixa(row.values).size() == static_cast<std::size_t>(lines[degree]));
  }

  // The degree-2 IIb system: three blocks of windows, 4 + 12 + 6 divisors.
  auto a = iib_system();
  const auto& lat = a.lattice();
  auto w = compute_ixa(a.squares());
  CHECK(w.size() == 22);
  std::set<DivisorClass> got;
  for (auto [k, l] : w)
    got.insert(a.window(k, l));
  const std::vector<std::string> printed = {
      "L25",        "2L-E12357",  "2L-E12457",  "3L-E12234567", "L15",        "2L-E12356",
      "2L-E12456",  "3L-E11234567", "L57",      "2L-E23567",   "2L-E24567",  "3L-E12345677",
      "E6",         "L23",        "L24",        "2L-E12347",   "3L-E12345567", "2L-E12345",
      "2L-E23457",  "2L-E12567",  "L12",        "L27"};
  std::set<DivisorClass> expected;
  for (const auto& p : printed)
    expected.insert(parse_class(lat, p));
  CHECK(expected.size() == 22);
  CHECK(got == expected);
  for (const auto& d : got) {
    CHECK(lat.square(d) == -1);
    CHECK_FALSE(iib_surface().is_irreducible_line(d));
  }
}

TEST_CASE("exceptionality of the degree-2 IIb system") {
  const auto& s = iib_surface();
  auto a = iib_system();
  for (auto m : {CheckMethod::kReference, CheckMethod::kOptimized}) {
    CHECK(check_exceptional(s, a, m).ok);
    CHECK(check_strong(s, a, m).ok);
  }
  CHECK(is_strong_exceptional(s, a));
  auto c = check_cyclic_strong(s, a, CheckMethod::kReference);
  CHECK_FALSE(c.ok);
  REQUIRE(c.witness);
  CHECK_FALSE(is_cyclic_strong_exceptional(s, a));
  // Optimized cyclic mode needs all squares >= -2.
  CHECK(check_cyclic_strong(s, a, CheckMethod::kOptimized).fell_back);
  CHECK_FALSE(elementary_augmentation_index(s, a));
}

TEST_CASE("closure search on the degree-4 example") {
  const auto& s = catalog_load(4).find("2A1,8");
  auto a = parse_toric(s.lattice(), kExample48);
  CHECK_FALSE(elementary_augmentation_index(s, a));
  CHECK(is_cyclic_strong_exceptional(s, a));
  auto b = perm(perm(a, 8), 7);
  CHECK(b.at(6) == s.lattice().E(1));
  CHECK(elementary_augmentation_index(s, b) == 6);
  auto hit = find_augmentation_in_closure(s, a);
  REQUIRE(hit);
  CHECK(s.is_irreducible_line(hit->system.at(hit->index)));
  ToricSystem replay = a;
  for (int k : hit->perms)
    replay = perm(replay, k);
  CHECK(replay == hit->system);
  CHECK(hit->perms.size() <= 2);

  auto [small, a2] = blow_down(s, b, 6);
  CHECK(small.degree() == 5);
  CHECK(a2.size() == 7);
  CHECK(axiom_violations(a2.lattice(), a2.terms()).empty());
  CHECK(augment_sequence(a2.squares(), 6) == b.squares());
  CHECK(is_cyclic_strong_exceptional(small, a2));

  auto chain = decompose(s, a);
  REQUIRE(chain);
  CHECK(chain->size() == 4);
  CHECK(chain->back().degree_after >= 8);
}

TEST_CASE("blow-down inverts augmentation") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> pts(1, 5);
    const int p = pts(rng);
    auto a = random_augmented(rng, p - 1);
    std::uniform_int_distribution<int> m(1, a.size() + 1);
    const int mm = m(rng);
    auto b = augment(a, mm);
    auto s = del_pezzo(9 - p);
    REQUIRE(s.is_irreducible_line(b.at(mm)));
    auto [small, back] = blow_down(s, b, mm);
    CHECK(small.degree() == 10 - p);
    CHECK(back.squares() == a.squares());
    CHECK(back.size() == a.size());
  }
  const auto& s = iib_surface();
  CHECK_THROWS_AS(blow_down(s, iib_system(), 1), InputError);
}

TEST_CASE("optimized and reference checkers agree") {
  std::mt19937 rng(3);
  int compared = 0;
  for (int degree = 3; degree <= 7; ++degree)
    for (const auto& s : catalog_load(degree).entries) {
      for (int trial = 0; trial < 6; ++trial) {
        ToricSystem a = plane_system();
        while (a.lattice().points() < 9 - degree) {
          std::uniform_int_distribution<int> m(1, a.size() + 1);
          a = augment(a, m(rng));
        }
        // Mix in some permutations so terms leave the standard shape.
        for (int step = 0; step < 6; ++step) {
          std::uniform_int_distribution<int> k(1, a.size());
          const int kk = k(rng);
          if (a.lattice().square(a.at(kk)) == -2)
            a = perm(a, kk);
          else
            a = shift(a);
        }
        for (int mode = 0; mode < 3; ++mode) {
          CheckResult opt, ref;
          if (mode == 0) {
            opt = check_exceptional(s, a, CheckMethod::kOptimized);
            ref = check_exceptional(s, a, CheckMethod::kReference);
          } else if (mode == 1) {
            opt = check_strong(s, a, CheckMethod::kOptimized);
            ref = check_strong(s, a, CheckMethod::kReference);
          } else {
            opt = check_cyclic_strong(s, a, CheckMethod::kOptimized);
            ref = check_cyclic_strong(s, a, CheckMethod::kReference);
          }
          CHECK_MESSAGE(opt.ok == ref.ok, s.tag() << " mode " << mode);
          ++compared;
        }
      }
    }
  CHECK(compared > 500);
}

TEST_CASE("printed initial systems validate") {
  const auto lat = PicardLattice::standard(2);
  const std::vector<std::vector<std::string>> systems = {
      {"E2-E3", "L127", "E7", "E1-E7", "L-E1", "L234", "E4-E5", "E5-E6", "E6", "E3-E4-E5-E6"},
      {"E2-E3", "L12", "E1", "L-E1", "L234", "E4-E5", "E5-E6", "E6-E7", "E7", "E3-E4-E5-E6-E7"},
      {"E1-E2", "L-E1", "L", "L123", "E3-E4", "E4-E5", "E5-E6", "E6-E7", "E7", "E2-E3-E4-E5-E6-E7"},
      {"E7", "E5-E7", "E4-E5", "E3-E4", "L-E3", "L-E1", "E1-E2", "E2-E6", "E6", "L1234567"},
      {"E7", "E5-E7", "E4-E5", "E3-E4", "E2-E3", "L-E2", "L-E1", "E1-E6", "E6", "L1234567"},
      {"E7", "E5-E7", "E4-E5", "E3-E4", "E2-E3", "E1-E2", "L-E1", "L-E6", "E6", "L1234567"},
      {"E7", "E6-E7", "E5-E6", "E4-E5", "E3-E4", "E2-E3", "E1-E2", "L-E1", "L", "L1234567"},
  };
  const std::vector<IntSequence> squares = {
      {-2, -2, -1, -2, 0, -2, -2, -2, -1, -4}, {-2, -1, -1, 0, -2, -2, -2, -2, -1, -5},
      {-2, 0, 1, -2, -2, -2, -2, -2, -1, -6},  {-1, -2, -2, -2, 0, 0, -2, -2, -1, -6},
      {-1, -2, -2, -2, -2, 0, 0, -2, -1, -6},  {-1, -2, -2, -2, -2, -2, 0, 0, -1, -6},
      {-1, -2, -2, -2, -2, -2, -2, 0, 1, -6},
  };
  for (std::size_t i = 0; i < systems.size(); ++i) {
    auto a = parse_toric(lat, systems[i]);
    CHECK(a.squares() == squares[i]);
  }
}
