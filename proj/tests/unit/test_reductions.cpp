#include <doctest.h>

#include "../support/oracles.hpp"
#include "vplc/error.hpp"
#include "vplc/reductions.hpp"
#include "vplc/suite.hpp"

using namespace vplc;

namespace {

const std::vector<Symbol> kAB{"a", "b"};

// Accepts words with an even number of a's; the counter stays at zero.
Doca even_a() {
  return parse_doca(
      "alphabet: a b\nstates: e o\ninitial: e\nfinal: e\n"
      "e a zero -> o 0\no a zero -> e 0\ne b zero -> e 0\no b zero -> o 0\n");
}

// a^n b^m with m <= n, counting the a's.
Doca a_then_b() {
  return parse_doca(
      "alphabet: a b\nstates: p q\ninitial: p\nfinal: p q\n"
      "p a zero -> p +1\np a nonzero -> p +1\np b nonzero -> q -1\nq b nonzero -> q -1\n");
}

std::set<Element> accepted_prefixes(const Doca& d, const Word& w) {
  std::set<Element> out;
  for (size_t k = 1; k <= w.size(); ++k)
    if (oracle::sim_doca(d, Word(w.begin(), w.begin() + static_cast<long>(k)))) out.insert(static_cast<Element>(k - 1));
  return out;
}

// r-chain distance from a to b, -1 when b is not ahead of a.
int chain_distance(const Interpretation& i, Element a, Element b) {
  int steps = 0;
  std::set<Element> seen{a};
  while (a != b) {
    auto it = std::find_if(i.roles.at("r").begin(), i.roles.at("r").end(), [&](const Edge& e) { return e.first == a; });
    if (it == i.roles.at("r").end()) return -1;
    a = it->second;
    if (!seen.insert(a).second) return -1;
    ++steps;
  }
  return steps;
}

}  // namespace

TEST_CASE("decorated metawords") {
  for (const auto& d : {even_a(), a_then_b()})
    for (int len = 1; len <= 5; ++len)
      for (const auto& w : oracle::all_words(kAB, len)) {
        auto p = decorate_metaword(build_metaword(w, kAB), d, "Acc");
        REQUIRE(p.interp.concepts.at("Acc") == accepted_prefixes(d, w));
        CHECK(metaword_word(p, kAB) == w);
        CHECK(check_pointed(p, acceptance_concept(d, "Acc", kAB)));
        // Flipping the last position breaks acceptance.
        auto q = p;
        Element flip = static_cast<Element>(len - 1);
        auto& acc = q.interp.concepts["Acc"];
        if (acc.count(flip)) acc.erase(flip);
        else acc.insert(flip);
        CHECK_FALSE(check_pointed(q, acceptance_concept(d, "Acc", kAB)));
      }
  auto p = build_metaword(parse_word("a b"), kAB);
  p.interp.roles["x"].insert({1, 0});
  CHECK_THROWS_AS(metaword_word(p, kAB), Error);
}

TEST_CASE("intersection concept on metawords") {
  auto d1 = even_a(), d2 = a_then_b();
  for (int len = 1; len <= 5; ++len)
    for (const auto& w : oracle::all_words(kAB, len)) {
      auto p = build_metaword(w, kAB);
      p = decorate_metaword(p, d1, "Acc1");
      p = decorate_metaword(p, d2, "Acc2");
      auto both = accepted_prefixes(d1, w);
      auto two = accepted_prefixes(d2, w);
      bool common = std::any_of(both.begin(), both.end(), [&](Element e) { return two.count(e) > 0; });
      CHECK(check_pointed(p, intersection_concept(d1, "Acc1", d2, "Acc2", kAB)) == common);
    }
}

TEST_CASE("snakes") {
  auto d = twelve_tile_system();
  auto c = solve_rect(d, 4, 3);
  REQUIRE(c);
  auto s = snake_from_cover(d, *c);
  CHECK(s.size == c->n * c->m);
  CHECK(s.individuals.at("ld") == 0);
  CHECK(s.individuals.at("rd") == c->n - 1);
  CHECK(s.individuals.at("lu") == (c->m - 1) * c->n);
  CHECK(s.individuals.at("ru") == c->n * c->m - 1);
  auto rep = check_snake(s, d);
  CHECK(rep.pass());
  REQUIRE(rep.length);
  CHECK(*rep.length == c->n);
  CHECK(is_pseudosnake(rep));
  CHECK(check_pointed({s, 0}, pseudosnake_concept(d)));

  auto broken = mutate(s, Mutation::drop_edge("r", 0, 1));
  auto br = check_snake(broken, d);
  CHECK_FALSE(br.holds("SPath"));
  CHECK(is_pseudosnake(br) == check_pointed({broken, 0}, pseudosnake_concept(d)));
  auto loop = mutate(s, Mutation::add_edge("r", s.size - 1, 0));
  CHECK_FALSE(check_snake(loop, d).holds("SNoLoop"));
  CHECK_THROWS_AS(snake_from_cover(d, RectCover{1, 1, {0}}), Error);
}

TEST_CASE("yardsticks") {
  auto y = yardstick({"h", "s"}, 3);
  CHECK(y.size == 10);
  CHECK(y.individuals.at("st") == 0);
  CHECK(y.individuals.at("md") == 3);
  CHECK(y.individuals.at("md_h") == 4);
  CHECK(y.individuals.at("end_h") == 6);
  CHECK(y.individuals.at("md_s") == 7);
  CHECK(y.individuals.at("end_s") == 9);
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::string> tiles{"p", "q", "t"};
    auto i = yardstick(tiles, n);
    CHECK(check_yardstick(i, tiles).pass());
    CHECK(check_pointed({i, 0}, yardstick_concept(tiles)));
    auto len = yardstick_length(i, tiles);
    REQUIRE(len);
    CHECK(*len == chain_distance(i, i.individuals.at("st"), i.individuals.at("md")));
    CHECK(*len == n);
  }
  auto cut = mutate(y, Mutation::drop_edge("s", 4, 5));
  auto rep = check_yardstick(cut, {"h", "s"});
  CHECK_FALSE(rep.pass());
  CHECK(rep.pass() == check_pointed({cut, 0}, yardstick_concept({"h", "s"})));
  auto moved = mutate(y, Mutation::move("end_s", 8));
  CHECK_FALSE(check_yardstick(moved, {"h", "s"}).pass());
  CHECK_FALSE(check_pointed({moved, 0}, yardstick_concept({"h", "s"})));
  CHECK_THROWS_AS(yardstick({"h"}, 0), Error);
}

TEST_CASE("metricobras") {
  auto d = twelve_tile_system();
  auto c = *solve_rect(d, 4, 3);
  auto s = snake_from_cover(d, c);
  auto y = yardstick(tile_names(d), c.n);
  auto m = metricobra(s, y, d);
  CHECK(m.size == s.size + y.size + 1);
  CHECK(check_metricobra(m, d).pass());
  Element cbra = m.individuals.at("cbra");
  CHECK(check_pointed({m, cbra}, metricobra_concept(d)));
  CHECK_THROWS_AS(metricobra(s, yardstick(tile_names(d), c.n + 1), d), Error);
  // Cutting the yardstick's r-chain, or retiling a snake cell, breaks the cobra.
  Element st = m.individuals.at("st");
  auto cut = mutate(m, Mutation::drop_edge("r", st, st + 1));
  CHECK_FALSE(check_metricobra(cut, d).pass());
  CHECK_FALSE(check_pointed({cut, cbra}, metricobra_concept(d)));
  int tile0 = c.at(0, 0), other = tile0 == 0 ? 1 : 0;
  auto retiled = mutate(m, Mutation::retile(0, tile_concept(d.tiles[static_cast<size_t>(other)])));
  CHECK(check_metricobra(retiled, d).pass() == check_pointed({retiled, cbra}, metricobra_concept(d)));
}

TEST_CASE("hyperoctant layout") {
  for (int N = 1; N <= 3; ++N)
    for (int D = 0; D <= 4; ++D) {
      HyperoctantLayout l(N, D, false);
      CHECK(l.size() == N + (D + 1) * (D + 2) / 2 * (N + 1));
      CHECK(l.id(-N, 0, 0) == 0);
      std::set<Element> ids;
      for (int j = 1; j <= N; ++j) ids.insert(l.id(-j, 0, 0));
      for (int n = 0; n <= D; ++n)
        for (int m = 0; m <= n; ++m)
          for (int k = 0; k <= N; ++k) {
            Element e = l.id(n, m, k);
            ids.insert(e);
            CHECK(l.coords(e) == std::make_tuple(n, m, k));
          }
      CHECK(static_cast<int>(ids.size()) == l.size());
      CHECK(*ids.rbegin() == l.size() - 1);
      CHECK_FALSE(l.contains(0, 1, 0));
      CHECK_THROWS_AS(l.id(D + 1, 0, 0), Error);
      HyperoctantLayout g(N, D, true);
      CHECK(g.size() == N + (D + 1) * (D + 1) * (N + 1));
    }
}

TEST_CASE("hyperoctants and properness") {
  auto d = three_tile_octant_system();
  int N = static_cast<int>(d.tiles.size());
  auto cover = solve_octant_prefix(d, 2);
  REQUIRE(cover);
  auto h = hyperoctant(d, *cover);
  HyperoctantLayout l(N, 2, false);
  CHECK(h.size == l.size());
  CHECK(is_proper(h, l));
  CHECK(structural_checks(h).treeLike);

  // Direct reading: Cur at (n, m, k) demands Prev at (n+1, m, k) when that cell exists.
  auto oracle_violations = [&](const Interpretation& i) {
    std::vector<std::tuple<int, int, int>> out;
    for (int n = 0; n <= l.depth(); ++n)
      for (int m = 0; m <= n; ++m)
        for (int k = 0; k <= N; ++k)
          if (i.concepts.at("Cur").count(l.id(n, m, k)) && l.contains(n + 1, m, k) &&
              !i.concepts.at("Prev").count(l.id(n + 1, m, k)))
            out.emplace_back(n, m, k);
    return out;
  };
  CHECK(oracle_violations(h).empty());
  oracle::Rng rng(4);
  std::uniform_int_distribution<Element> any(N, h.size - 1);
  for (int k = 0; k < 40; ++k) {
    auto i = mutate(h, Mutation::flip(k % 2 ? "Prev" : "Cur", any(rng)));
    auto v = properness_violations(i, l);
    CHECK(v == oracle_violations(i));
    CHECK(is_proper(i, l) == v.empty());
  }
}

TEST_CASE("triangle query and TBox") {
  auto d = three_tile_octant_system();
  int N = static_cast<int>(d.tiles.size()), D = N + 5;
  auto cover = *solve_octant_prefix(d, D);
  auto h = hyperoctant(d, cover);
  HyperoctantLayout l(N, D, false);
  auto qt = q_triangle(d);
  CHECK_FALSE(find_match(h, qt));

  // Drop Prev above a Cur cell in the interior: exactly that pair is matched.
  int hits = 0;
  for (int n = 0; n <= D - N - 2; ++n)
    for (int m = 0; m <= n; ++m)
      for (int k = 1; k <= N; ++k) {
        if (!h.concepts.at("Cur").count(l.id(n, m, k))) continue;
        Element above = l.id(n + 1, m, k);
        auto i = mutate(mutate(h, Mutation::flip("Prev", above)), Mutation::flip("PrevBar", above));
        auto match = find_match(i, qt);
        REQUIRE(match);
        CHECK(replay(i, qt, {}, *match));
        CHECK(l.coords(match->at("v1")) == std::make_tuple(n, m, k));
        CHECK(l.coords(match->at("v2")) == std::make_tuple(n + 1, m, k));
        ++hits;
      }
  CHECK(hits > 0);

  auto g = extend_to_grid(h, l);
  Kb kb{{}, tbox_triangle(d)};
  CHECK(satisfies_kb(g.interp, kb, {}, &g.checkSets).holds);
  auto noAux = g.interp;
  noAux.roles["aux"].erase({5, g.layout.id(-N, 0, 0)});
  auto rep = satisfies_kb(noAux, kb, {}, &g.checkSets);
  CHECK_FALSE(rep.holds);
  CHECK(rep.violations[0].witness == "element 5");
  CHECK_THROWS_AS(extend_to_grid(g.interp, g.layout), Error);
}

TEST_CASE("ldru automaton") {
  auto a = ldru_vpa();
  for (const auto& [w, acc] : oracle::live_words(a, 14)) REQUIRE(acc == oracle::is_ldru(w));
  for (int k = 0; k <= 2; ++k)
    for (int m = 0; m <= 2; ++m) {
      auto w = oracle::ldru_word(k, m);
      CHECK(static_cast<int>(w.size()) == 9 + 4 * k + 4 * m);
      CHECK(accepts(a, w));
      CHECK(oracle::sim_accepts(a, w));
    }
}

TEST_CASE("mutations") {
  Interpretation i;
  i.size = 3;
  i.roles["r"] = {{0, 1}};
  i.concepts["C_x"] = {0};
  i.concepts["C_y"] = {0};
  i.concepts["A"] = {};
  i.individuals["a"] = 0;
  CHECK(mutate(i, Mutation::drop_edge("r", 0, 1)).roles.at("r").empty());
  CHECK(mutate(i, Mutation::add_edge("r", 2, 2)).roles.at("r").count({2, 2}));
  auto t = mutate(i, Mutation::retile(0, "C_y"));
  CHECK(t.concepts.at("C_x").empty());
  CHECK(t.concepts.at("C_y") == std::set<Element>{0});
  CHECK(mutate(i, Mutation::flip("A", 1)).concepts.at("A") == std::set<Element>{1});
  CHECK(mutate(i, Mutation::move("a", 2)).individuals.at("a") == 2);
  CHECK_THROWS_AS(mutate(i, Mutation::flip("A", 7)), Error);
  for (const char* text : {"drop-edge r 0 1", "add-edge r 2 2", "retile 0 C_y", "flip A 1", "move a 2"}) {
    auto m = parse_mutation(text);
    CHECK(print_mutation(m) == text);
  }
  CHECK_THROWS_AS(parse_mutation("drop-edge r 0"), ParseError);
  CHECK_THROWS_AS(parse_mutation("explode"), ParseError);
}
