#include "doctest.h"

#include "wdp/errors.hpp"
#include "wdp/picard.hpp"

using namespace wdp;

TEST_CASE("intersection basics") {
  auto lat = PicardLattice::standard(7);
  CHECK(lat.intersect(lat.L(), lat.L()) == 1);
  CHECK(lat.intersect(lat.E(1), lat.E(2)) == 0);
  CHECK(lat.intersect(lat.L() - lat.E(1) - lat.E(2), lat.canonical()) == -1);
  CHECK_THROWS_AS(intersect(lat, lat.L(), PicardLattice::standard(6).L()), InputError);
}

TEST_CASE("Euler characteristic") {
  for (int d = 1; d <= 9; ++d) {
    auto lat = PicardLattice::standard(d);
    CHECK(chi(lat, lat.zero()) == 1);
    CHECK(chi(lat, -lat.canonical()) == d + 1);
    if (d <= 8)
      CHECK(chi(lat, lat.E(1)) == 1);
  }
}

TEST_CASE("classify_r") {
  auto lat = PicardLattice::standard(3);
  CHECK(classify_r(lat, lat.E(1)) == -1);
  CHECK(classify_r(lat, lat.E(1) - lat.E(2)) == -2);
  CHECK(classify_r(lat, lat.L()) == 1);
  // 2L: 4 - 6 = -2, so 2L is a 4-class.
  CHECK(classify_r(lat, 2 * lat.L()) == 4);
  CHECK_FALSE(classify_r(lat, lat.L() + lat.E(1)).has_value());
}

TEST_CASE("class inventories match the root system table") {
  const int roots[] = {0, 240, 126, 72, 40, 20, 8, 2};
  const int lines[] = {0, 240, 56, 27, 16, 10, 6, 3};
  for (int d = 1; d <= 7; ++d) {
    auto lat = PicardLattice::standard(d);
    auto r = enumerate_classes(lat, -2);
    auto c = enumerate_classes(lat, -1);
    CHECK(r.size() == static_cast<std::size_t>(roots[d]));
    CHECK(c.size() == static_cast<std::size_t>(lines[d]));
    CHECK(std::is_sorted(r.begin(), r.end()));
    for (const auto& x : r) {
      CHECK(lat.square(x) == -2);
      CHECK(lat.dot_k(x) == 0);
    }
    for (const auto& x : c) {
      CHECK(lat.square(x) == -1);
      CHECK(lat.dot_k(x) == -1);
    }
  }
  auto lat7 = PicardLattice::standard(7);
  auto c7 = enumerate_classes(lat7, -1);
  std::vector<DivisorClass> want{lat7.E(1), lat7.E(2), lat7.L() - lat7.E(1) - lat7.E(2)};
  std::sort(want.begin(), want.end());
  CHECK(c7 == want);
  CHECK_THROWS_AS(enumerate_classes(lat7, 3), InputError);
}

TEST_CASE("signature is hyperbolic") {
  for (int d = 1; d <= 9; ++d) {
    auto lat = PicardLattice::standard(d);
    CHECK(signature(lat) == std::make_pair(1, lat.rank() - 1));
    CHECK(lat.square(lat.canonical()) == d);
  }
  CHECK(signature(PicardLattice::hyperbolic()) == std::make_pair(1, 1));
}

TEST_CASE("residual class D' = -K - D") {
  for (int d = 2; d <= 7; ++d) {
    auto lat = PicardLattice::standard(d);
    for (int r : {-2, -1, 0, 1})
      for (const auto& x : enumerate_classes(lat, r)) {
        auto rp = classify_r(lat, -lat.canonical() - x);
        REQUIRE(rp.has_value());
        CHECK(r + *rp == d - 4);
      }
  }
}

TEST_CASE("(d-2)-classes meet (-1)-classes nonnegatively") {
  for (int d = 2; d <= 7; ++d) {
    auto lat = PicardLattice::standard(d);
    std::vector<DivisorClass> top;
    if (d - 2 <= 1) {
      top = enumerate_classes(lat, d - 2);
    } else {
      // Larger r: D' = -K - D is a (-2)-class exactly when D is a (d-2)-class.
      for (const auto& x : enumerate_classes(lat, -2))
        top.push_back(-lat.canonical() - x);
    }
    for (const auto& dcl : top)
      for (const auto& c : enumerate_classes(lat, -1))
        CHECK(lat.intersect(dcl, c) >= 0);
  }
}

TEST_CASE("D + mF for a 0-class F with D.F = 1") {
  auto lat = PicardLattice::standard(4);
  auto zeros = enumerate_classes(lat, 0);
  int checked = 0;
  for (int r : {-2, -1})
    for (const auto& dcl : enumerate_classes(lat, r))
      for (const auto& f : zeros) {
        if (lat.intersect(dcl, f) != 1)
          continue;
        for (int m = 0; m <= 3; ++m)
          CHECK(classify_r(lat, dcl + m * f) == r + 2 * m);
        ++checked;
      }
  CHECK(checked > 0);
}

TEST_CASE("parse and format round trip") {
  auto lat = PicardLattice::standard(2);
  auto d = parse_class(lat, "2L-E12257");
  CHECK(d == DivisorClass{2, -1, -2, 0, 0, -1, 0, -1});
  CHECK(parse_class(lat, "L123") == lat.L() - lat.E(1) - lat.E(2) - lat.E(3));
  CHECK(parse_class(lat, "-L567") == -(lat.L() - lat.E(5) - lat.E(6) - lat.E(7)));
  CHECK(parse_class(lat, "K") == lat.canonical());
  for (const auto& x : enumerate_classes(lat, -1))
    CHECK(parse_class(lat, format_class(lat, x)) == x);
  CHECK_THROWS_AS(parse_class(lat, "L9"), InputError);
  CHECK_THROWS_AS(parse_class(lat, "X1"), InputError);
}
