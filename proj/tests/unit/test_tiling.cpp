#include <doctest.h>

#include <functional>

#include "vplc/error.hpp"
#include "vplc/suite.hpp"
#include "vplc/tiling.hpp"

using namespace vplc;

namespace {

// Direct reading of the cover rules: white exactly on the outer sides, matching colours inside.
bool cover_ok(const DominoSystem& d, int n, int m, const std::vector<int>& cells) {
  auto t = [&](int x, int y) -> const Tile& { return d.tiles[static_cast<size_t>(cells[static_cast<size_t>(x + y * n)])]; };
  for (int y = 0; y < m; ++y)
    for (int x = 0; x < n; ++x) {
      const Tile& c = t(x, y);
      if ((c.sides[0] == d.white) != (x == 0)) return false;
      if ((c.sides[1] == d.white) != (y == 0)) return false;
      if ((c.sides[2] == d.white) != (x == n - 1)) return false;
      if ((c.sides[3] == d.white) != (y == m - 1)) return false;
      if (x + 1 < n && c.sides[2] != t(x + 1, y).sides[0]) return false;
      if (y + 1 < m && c.sides[3] != t(x, y + 1).sides[1]) return false;
    }
  return true;
}

// Does any assignment of tiles to an n x m grid pass cover_ok.
bool any_cover(const DominoSystem& d, int n, int m) {
  std::vector<int> cells(static_cast<size_t>(n * m), 0);
  const int nt = static_cast<int>(d.tiles.size());
  while (true) {
    if (cover_ok(d, n, m, cells)) return true;
    size_t k = 0;
    while (k < cells.size() && ++cells[k] == nt) cells[k++] = 0;
    if (k == cells.size()) return false;
  }
}

DominoSystem tiny() {
  return parse_tiling(
      "colors: w a b\nwhite: w\n"
      "tile L = w w a w\n"
      "tile R = a w w w\n"
      "tile M = a w a w\n");
}

}  // namespace

TEST_CASE("compatibility and validation") {
  auto d = tiny();
  CHECK(h_compatible(d.tiles[0], d.tiles[1]));
  CHECK_FALSE(h_compatible(d.tiles[2], d.tiles[0]));
  CHECK(v_compatible(Tile{"x", {"a", "b", "a", "c"}}, Tile{"y", {"a", "c", "a", "b"}}));
  CHECK_THROWS_AS(validate_rect_system(parse_tiling("colors: w\nwhite: w\ntile Z = w w w w\n")), Error);
  CHECK_THROWS_AS(validate_octant_system(d), Error);
  CHECK_NOTHROW(validate_octant_system(three_tile_octant_system()));
  CHECK_THROWS_AS(parse_tiling("colors: w\ntile Z = w w w w\n"), ParseError);
  CHECK_THROWS_AS(parse_tiling("colors: w\nwhite: w\ntile Z = w w w\n"), ParseError);
  CHECK(parse_tiling(print_tiling(twelve_tile_system())) == twelve_tile_system());
}

TEST_CASE("rectangle covers") {
  auto d = tiny();
  RectCover c{3, 1, {0, 2, 1}};
  CHECK(check_rect_cover(d, c).pass);
  RectCover swapped{3, 1, {1, 2, 0}};
  auto rep = check_rect_cover(d, swapped);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.cells[0].borders);
  CHECK(rep.firstViolation.find("(0,0)") != std::string::npos);
  CHECK_FALSE(check_rect_cover(d, RectCover{1, 1, {0}}).pass);
  CHECK_FALSE(check_rect_cover(d, RectCover{2, 1, {0}}).pass);

  auto found = solve_rect(d, 4, 3);
  REQUIRE(found);
  CHECK(found->n == 2);
  CHECK(found->m == 1);
  CHECK(check_rect_cover(d, *found).pass);

  auto twelve = twelve_tile_system();
  auto t = solve_rect(twelve, 4, 3);
  REQUIRE(t);
  CHECK(check_rect_cover(twelve, *t).pass);
  CHECK(cover_ok(twelve, t->n, t->m, t->cells));
  CHECK(parse_rect_cover(twelve, print_rect_cover(twelve, *t)).cells == t->cells);
  // Swapped covers: the checker verdict matches the direct reading.
  for (size_t a = 0; a < t->cells.size(); ++a)
    for (size_t b = a + 1; b < t->cells.size(); ++b) {
      if (t->cells[a] == t->cells[b]) continue;
      auto s = *t;
      std::swap(s.cells[a], s.cells[b]);
      CHECK(check_rect_cover(twelve, s).pass == cover_ok(twelve, s.n, s.m, s.cells));
    }
}

TEST_CASE("solver agrees with exhaustive enumeration") {
  auto systems = corner_systems(4);
  REQUIRE(systems.size() >= 10);
  systems.push_back(tiny());
  systems.push_back(twelve_tile_system());
  for (const auto& d : systems) {
    for (int n = 1; n <= 3; ++n)
      for (int m = 1; m <= 2; ++m) {
        bool any = false;
        // Twelve tiles make the exhaustive search too large past four cells.
        if (d.tiles.size() > 4 && n * m > 4) continue;
        for (int n2 = 1; n2 <= n; ++n2)
          for (int m2 = 1; m2 <= m; ++m2) any = any || any_cover(d, n2, m2);
        auto s = solve_rect(d, n, m);
        REQUIRE(s.has_value() == any);
        if (s) CHECK(cover_ok(d, s->n, s->m, s->cells));
      }
    auto s = solve_rect(d, 4, 3);
    REQUIRE(s);
    CHECK(cover_ok(d, s->n, s->m, s->cells));
  }
  CHECK_FALSE(solve_rect(parse_tiling("colors: w a\nwhite: w\ntile A = w w a w\n"), 3, 3));
}

TEST_CASE("white bordered transform") {
  CHECK_THROWS_AS(white_bordered_transform(tiny()), Error);
  auto two = parse_tiling("colors: w a b\nwhite: w\ntile P = a b a b\ntile Q = b a b a\n");
  auto three = parse_tiling("colors: w a b c\nwhite: w\ntile P = a b c a\ntile Q = c a b b\ntile R = b c a c\n");
  for (const auto& d : {two, three}) {
    auto t = white_bordered_transform(d);
    CHECK(t.tiles.size() == 2 * d.tiles.size() + 1);
    int allWhite = 0;
    for (size_t k = 0; k < t.tiles.size(); ++k) allWhite += t.is_all_white(static_cast<int>(k));
    CHECK(allWhite == 1);
    for (size_t k = 0; k < d.tiles.size(); ++k) {
      const auto& s = d.tiles[k].sides;
      bool plain = false, bordered = false;
      for (const auto& x : t.tiles) {
        plain |= x.sides == s;
        bordered |= x.sides == std::array<std::string, 4>{d.white, s[1], s[2], d.white};
      }
      CHECK(plain);
      CHECK(bordered);
    }
  }
}

TEST_CASE("octant prefixes") {
  auto d = three_tile_octant_system();
  for (int depth = 0; depth <= 4; ++depth) {
    auto p = solve_octant_prefix(d, depth);
    REQUIRE(p);
    auto rep = check_octant_prefix(d, *p);
    CHECK(rep.pass);
    CHECK(rep.diagonal);
    for (int n = 0; n <= depth; ++n) CHECK(d.is_all_white(p->at(n, n)));
  }
  auto p = *solve_octant_prefix(d, 3);
  auto bad = p;
  int other = 0;
  while (d.is_all_white(other)) ++other;
  bad.cells[static_cast<size_t>(OctantPrefixCover::index(0, 0))] = other;
  auto rep = check_octant_prefix(d, bad);
  CHECK_FALSE(rep.pass);
  CHECK(rep.firstViolation.find("initial") != std::string::npos);

  auto five = five_tile_octant_system();
  CHECK(five.tiles.size() == 5);
  CHECK_NOTHROW(validate_octant_system(five));
  auto q = solve_octant_prefix(five, 4);
  REQUIRE(q);
  CHECK(check_octant_prefix(five, *q).pass);
  CHECK_THROWS_AS(solve_octant_prefix(d, -1), Error);
  CHECK_FALSE(check_octant_prefix(d, OctantPrefixCover{2, {0}}).pass);
}
