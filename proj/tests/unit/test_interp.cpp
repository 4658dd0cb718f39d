#include <doctest.h>

#include "../support/oracles.hpp"
#include "vplc/concepts.hpp"
#include "vplc/error.hpp"
#include "vplc/interp.hpp"

using namespace vplc;

TEST_CASE("edge relations per binding kind") {
  Interpretation i;
  i.size = 3;
  i.roles["r"] = {{0, 1}};
  i.concepts["A"] = {2};
  SymbolBinding b;
  b.explicitBindings["go"] = {BindingKind::Role, "r"};
  b.explicitBindings["back"] = {BindingKind::InverseRole, "r"};
  b.explicitBindings["isA"] = {BindingKind::Test, "A"};
  CHECK(edge_relation(i, b, "go") == std::vector<Edge>{{0, 1}});
  CHECK(edge_relation(i, b, "back") == std::vector<Edge>{{1, 0}});
  CHECK(edge_relation(i, b, "isA") == std::vector<Edge>{{2, 2}});
  // Naming convention when nothing is bound explicitly.
  CHECK(edge_relation(i, {}, "r^-") == std::vector<Edge>{{1, 0}});
  CHECK(edge_relation(i, {}, "A?") == std::vector<Edge>{{2, 2}});
  CHECK_THROWS_AS(edge_relation(i, {}, "q"), Error);

  oracle::Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    auto j = oracle::random_interp(rng, 5, 0.3);
    auto fwd = edge_relation(j, {}, "r"), inv = edge_relation(j, {}, "r^-");
    std::set<Edge> swapped;
    for (auto [a, c] : fwd) swapped.insert({c, a});
    CHECK(std::set<Edge>(inv.begin(), inv.end()) == swapped);
    for (auto [a, c] : edge_relation(j, {}, "A?")) CHECK(a == c);
  }
}

TEST_CASE("metawords") {
  auto p = build_metaword(parse_word("a b b a c"));
  const auto& i = p.interp;
  CHECK(i.size == 5);
  CHECK(p.point == 0);
  CHECK(i.roles.at("x") == std::set<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  for (const char* m : {"(a,c)", "(a,i)", "(a,r)"}) CHECK(i.roles.at(m) == std::set<Edge>{{0, 0}, {3, 3}});
  CHECK(i.roles.at("(c,i)") == std::set<Edge>{{4, 4}});
  CHECK(is_sigma_friendly(p, {"a", "b", "c"}));

  auto one = build_metaword(parse_word("a"));
  CHECK(one.interp.size == 1);
  CHECK(one.interp.roles.at("x").empty());
  CHECK(one.interp.roles.at("(a,c)") == std::set<Edge>{{0, 0}});
  CHECK_THROWS_AS(build_metaword({}), Error);

  for (int len = 1; len <= 8; ++len)
    for (const auto& w : oracle::all_words({"a", "b"}, len)) REQUIRE(is_sigma_friendly(build_metaword(w, {"a", "b"}), {"a", "b"}));

  auto two = p;
  two.interp.roles["(b,c)"].insert({0, 0});
  CHECK_FALSE(is_sigma_friendly(two, {"a", "b", "c"}));
  auto loop = p;
  loop.interp.roles["x"].insert({2, 2});
  CHECK_FALSE(is_sigma_friendly(loop, {"a", "b", "c"}));
  auto missing = p;
  missing.interp.roles["(b,r)"].erase({1, 1});
  CHECK_FALSE(is_sigma_friendly(missing, {"a", "b", "c"}));
}

TEST_CASE("structural checks") {
  Interpretation chain;
  chain.size = 3;
  chain.roles["r"] = {{0, 1}, {1, 2}};
  auto s = structural_checks(chain);
  CHECK(s.treeLike);
  CHECK(s.singleRole);
  CHECK_FALSE(structural_checks(build_metaword(parse_word("a b")).interp).singleRole);

  // Adding edges never repairs a non-tree.
  oracle::Rng rng(9);
  for (int k = 0; k < 30; ++k) {
    auto i = oracle::random_interp(rng, 4, 0.2, {"r"});
    bool before = structural_checks(i).treeLike;
    i.roles["r"].insert({static_cast<Element>(k % 4), static_cast<Element>((k / 4) % 4)});
    if (!before) CHECK_FALSE(structural_checks(i).treeLike);
  }
  Interpretation cyc = chain;
  cyc.roles["r"].insert({2, 0});
  CHECK_FALSE(structural_checks(cyc).treeLike);
}

TEST_CASE("assertions") {
  Interpretation i;
  i.size = 2;
  i.roles["r"] = {{0, 1}};
  i.concepts["A"] = {1};
  i.individuals = {{"a", 0}, {"b", 1}};
  Evaluator ev(i);
  CHECK(satisfies_assertion(ev, {false, false, cpt::top(), "", "a", ""}));
  CHECK(satisfies_assertion(ev, {true, false, nullptr, "r", "a", "b"}));
  CHECK_FALSE(satisfies_assertion(ev, {true, false, nullptr, "r", "b", "a"}));
  CHECK(satisfies_assertion(ev, {false, true, cpt::atom("A"), "", "a", ""}));
  CHECK_THROWS_AS(satisfies_assertion(ev, {false, false, cpt::top(), "", "zz", ""}), Error);
}

TEST_CASE("interpretation text format") {
  auto i = parse_interpretation("elements: 5\nconcept A = {0,2}\nrole r = {(0,1),(1,2)}\nindividual ld = 0\n");
  CHECK(i.size == 5);
  CHECK(i.concepts.at("A") == std::set<Element>{0, 2});
  CHECK(i.roles.at("r") == std::set<Edge>{{0, 1}, {1, 2}});
  CHECK(i.individuals.at("ld") == 0);
  CHECK(parse_interpretation(print_interpretation(i)) == i);

  oracle::Rng rng(4);
  for (int k = 0; k < 20; ++k) {
    auto j = oracle::random_interp(rng, 1 + k % 6, 0.3);
    CHECK(parse_interpretation(print_interpretation(j)) == j);
  }
  CHECK_THROWS_AS(parse_interpretation("elements: 2\nconcept A = {5}\n"), Error);
  CHECK_THROWS_AS(parse_interpretation("elements: 0\n"), Error);
  try {
    parse_interpretation("elements: 2\nrole r = {(0,1)\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}
