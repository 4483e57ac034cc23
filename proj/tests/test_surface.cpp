#include "doctest.h"

#include <set>

#include "wdp/errors.hpp"
#include "wdp/surface.hpp"

using namespace wdp;

namespace {

std::set<DivisorClass> as_set(const std::vector<DivisorClass>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("Dynkin classification") {
  auto lat = PicardLattice::standard(3);
  auto type_of = [&](std::vector<std::string> names) {
    std::vector<DivisorClass> r;
    for (auto& n : names)
      r.push_back(parse_class(lat, n));
    return format_dynkin(SurfaceModel(lat, r, "t").dynkin());
  };
  CHECK(type_of({}) == "none");
  CHECK(type_of({"E1-E2", "E2-E3"}) == "A2");
  CHECK(type_of({"L123", "E1-E2", "E2-E3", "E3-E4", "E4-E5", "E5-E6"}) == "E6");
  CHECK(type_of({"E1-E2", "E3-E4", "E5-E6", "L135"}) == "D4");
  CHECK(type_of({"E1-E2", "E3-E4"}) == "2A1");
  CHECK(format_dynkin(parse_dynkin("D4+2A1")) == "2A1+D4");
  CHECK(parse_dynkin("A3,5") == parse_dynkin("A3"));
  // E1-E2 and E2-E1 meet with product 2: not a curve configuration.
  CHECK_THROWS_AS(SurfaceModel(lat, {parse_class(lat, "E1-E2"), parse_class(lat, "E2-E1")}, "bad"),
                  InputError);
  CHECK_THROWS_AS(SurfaceModel(lat, {lat.E(1)}, "bad"), InputError);
}

TEST_CASE("effective roots by saturation") {
  const auto& c6 = catalog_load(6);
  CHECK(c6.find("none").effective_roots().empty());
  auto lat = PicardLattice::standard(6);
  CHECK(as_set(c6.find("A2").effective_roots()) ==
        std::set<DivisorClass>{parse_class(lat, "E1-E2"), parse_class(lat, "E2-E3"),
                               parse_class(lat, "E1-E3")});
  const auto& x44 = catalog_load(4).find("4A1");
  CHECK(as_set(x44.effective_roots()) == as_set(x44.simple_roots()));
}

TEST_CASE("irreducible (-1)-curves") {
  auto lat6 = PicardLattice::standard(6);
  CHECK(catalog_load(6).find("A1+A2").irreducible_lines() == std::vector<DivisorClass>{lat6.E(3)});
  auto lat3 = PicardLattice::standard(3);
  CHECK(catalog_load(3).find("E6").irreducible_lines() == std::vector<DivisorClass>{lat3.E(6)});
  CHECK(catalog_load(5).find("none").irreducible_lines().size() == 10);
}

TEST_CASE("catalog sizes and line counts") {
  CHECK(catalog_load(7).entries.size() == 2);
  CHECK(catalog_load(6).entries.size() == 6);
  CHECK(catalog_load(5).entries.size() == 7);
  CHECK(catalog_load(4).entries.size() == 16);
  CHECK(catalog_load(3).entries.size() == 21);
  for (int d = 3; d <= 7; ++d) {
    const auto& cat = catalog_load(d);
    const auto& rows = catalog_rows(d);
    REQUIRE(rows.size() == cat.entries.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(cat.entries[i].irreducible_lines().size() == static_cast<std::size_t>(rows[i].lines));
      CHECK(format_dynkin(cat.entries[i].dynkin()) == format_dynkin(parse_dynkin(rows[i].name)));
    }
  }
  CHECK_THROWS_AS(catalog_load(0), InputError);
  CHECK_THROWS_AS(catalog_load(8), InputError);
}

TEST_CASE("degree 2 catalog holds the census subsystems") {
  const auto& c2 = catalog_load(2);
  for (auto name : {"7A1", "6A1", "5A1", "A3+3A1", "A1+2A3", "D4+2A1", "D4+3A1", "D6+A1"})
    CHECK_NOTHROW(c2.find(name));
  auto lat = PicardLattice::standard(2);
  std::vector<DivisorClass> want;
  for (auto s : {"L123", "E1-E2", "E2-E3", "2L-E124567", "E4-E5", "E5-E6", "E6-E7"})
    want.push_back(parse_class(lat, s));
  CHECK(c2.find("A1+2A3").simple_roots() == want);
  CHECK(format_dynkin(c2.find("A1+2A3").dynkin()) == "A1+2A3");
  CHECK(catalog_load(1).find("E8").simple_roots().size() == 8);
}

TEST_CASE("unknown names suggest the nearest entry") {
  try {
    catalog_load(4).find("A3,6");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("did you mean") != std::string::npos);
  }
  // A3 alone is ambiguous in degree 4, unique in degree 5.
  CHECK_THROWS_AS(catalog_load(4).find("A3"), InputError);
  CHECK(catalog_load(5).find("A3").name() == "A3");
}

TEST_CASE("root decomposition R = Reff + (-Reff) + Rslo") {
  for (int d = 2; d <= 7; ++d)
    for (const auto& s : catalog_load(d).entries) {
      std::set<DivisorClass> eff = as_set(s.effective_roots());
      std::set<DivisorClass> slo = as_set(s.slo_roots());
      std::size_t total = 0;
      for (const auto& r : s.roots()) {
        int hits = eff.count(r) + eff.count(-r) + slo.count(r);
        CHECK(hits == 1);
        ++total;
      }
      CHECK(2 * eff.size() + slo.size() == total);
    }
}

TEST_CASE("lines orthogonal to a 1-class, and to a pair of 0-classes") {
  for (int d = 3; d <= 7; ++d) {
    auto lat = PicardLattice::standard(d);
    auto lines = enumerate_classes(lat, -1);
    for (const auto& h : enumerate_classes(lat, 1)) {
      int zero = 0;
      for (const auto& c : lines) {
        CHECK(lat.intersect(c, h) >= 0);
        zero += lat.intersect(c, h) == 0;
      }
      CHECK(zero == 9 - d);
    }
    auto zeros = enumerate_classes(lat, 0);
    for (const auto& s1 : zeros)
      for (const auto& s2 : zeros) {
        if (lat.intersect(s1, s2) != 1)
          continue;
        int both = 0;
        for (const auto& c : lines)
          both += lat.intersect(c, s1) == 0 && lat.intersect(c, s2) == 0;
        CHECK(both == 8 - d);
      }
  }
}

TEST_CASE("root coordinates") {
  const auto& s = catalog_load(3).find("E6");
  for (const auto& r : s.effective_roots()) {
    auto c = s.root_coordinates(r);
    REQUIRE(c.has_value());
    for (long v : *c)
      CHECK(v >= 0);
  }
  CHECK_FALSE(s.root_coordinates(s.lattice().E(1)).has_value());
}
