#include <doctest.h>

#include "../support/oracles.hpp"
#include "vplc/error.hpp"
#include "vplc/queries.hpp"

using namespace vplc;

namespace {

void collect_vars(const Peq& q, std::set<std::string>& vs) {
  if (q->kind == PeqNode::Kind::Atom) {
    vs.insert(q->atom.x);
    if (q->atom.kind != QueryAtom::Kind::Concept) vs.insert(q->atom.y);
  }
  for (const auto& k : q->kids) collect_vars(k, vs);
}

void collect_pairs(const Interpretation& i, const Peq& q, std::map<std::string, std::set<Edge>>& lp) {
  if (q->kind == PeqNode::Kind::Atom && q->atom.kind == QueryAtom::Kind::Lang && !lp.count(q->atom.lang->key()))
    lp[q->atom.lang->key()] = oracle::bfs_pairs(i, compile(*q->atom.lang), 10);
  for (const auto& k : q->kids) collect_pairs(i, k, lp);
}

bool eval_under(const Interpretation& i, const Peq& q, const Assignment& m, const std::map<std::string, std::set<Edge>>& lp) {
  switch (q->kind) {
    case PeqNode::Kind::Bot:
      return false;
    case PeqNode::Kind::Atom:
      return oracle::atom_holds(i, q->atom, m, lp);
    case PeqNode::Kind::And:
      return std::all_of(q->kids.begin(), q->kids.end(), [&](const Peq& k) { return eval_under(i, k, m, lp); });
    case PeqNode::Kind::Or:
      return std::any_of(q->kids.begin(), q->kids.end(), [&](const Peq& k) { return eval_under(i, k, m, lp); });
  }
  return false;
}

// Some assignment of all variables of q satisfies the formula.
bool brute_peq(const Interpretation& i, const Peq& q) {
  std::set<std::string> vs;
  collect_vars(q, vs);
  std::vector<std::string> vars(vs.begin(), vs.end());
  std::map<std::string, std::set<Edge>> lp;
  collect_pairs(i, q, lp);
  Assignment m;
  std::function<bool(size_t)> go = [&](size_t k) {
    if (k == vars.size()) return eval_under(i, q, m, lp);
    for (Element e = 0; e < i.size; ++e) {
      m[vars[k]] = e;
      if (go(k + 1)) return true;
    }
    return false;
  };
  return go(0);
}

Peq random_peq(oracle::Rng& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 3);
  switch (pick(rng)) {
    case 0: {
      auto q = oracle::random_cq(rng, 3, 1);
      return peq::atom(q.atoms[0]);
    }
    case 1: return peq::conj({random_peq(rng, depth - 1), random_peq(rng, depth - 1)});
    case 2: return peq::disj({random_peq(rng, depth - 1), random_peq(rng, depth - 1)});
    default: return pick(rng) == 0 ? peq::bot() : peq::atom(oracle::random_cq(rng, 3, 1).atoms[0]);
  }
}

}  // namespace

TEST_CASE("query examples") {
  Interpretation i;
  i.size = 4;
  i.roles["r"] = {{0, 1}, {1, 2}};
  i.roles["s"] = {{2, 3}};
  i.concepts["A"] = {3};
  auto qs = parse_query("r(x,y)\nL<rnsn r s>(y,z)\nA(z)\n");
  REQUIRE(qs.size() == 1);
  auto m = find_match(i, qs[0]);
  REQUIRE(m);
  CHECK(*m == Assignment{{"x", 0}, {"y", 1}, {"z", 3}});
  CHECK(replay(i, qs[0], {}, *m));
  CHECK_FALSE(replay(i, qs[0], {}, {{"x", 1}, {"y", 2}, {"z", 3}}));
  CHECK_THROWS_AS(replay(i, qs[0], {}, {{"x", 0}}), Error);

  auto none = parse_query("A(x)\nr(x,y)\n");
  CHECK_FALSE(find_match(i, none[0]));
  CHECK(all_matches(i, parse_query("r(x,y)\n")[0]).size() == 2);
  // Unconstrained variable pairs: 4 * 4 assignments of (x, y) with L = {empty word} forcing x = y.
  CHECK(all_matches(i, parse_query("L<re \"()\">(x,y)\n")[0]).size() == 4);
}

TEST_CASE("matching agrees with brute force") {
  oracle::Rng rng(55);
  for (int k = 0; k < 150; ++k) {
    auto i = oracle::random_interp(rng, 2 + k % 3, 0.3);
    auto q = oracle::random_cq(rng, 1 + k % 3, 1 + k % 4);
    INFO(print_query({q}));
    auto got = all_matches(i, q);
    auto want = oracle::brute_matches(i, q, 10);
    REQUIRE(got == want);
    auto one = find_match(i, q);
    CHECK(one.has_value() == !want.empty());
    if (one) CHECK(replay(i, q, {}, *one));
  }
}

TEST_CASE("positive queries") {
  oracle::Rng rng(56);
  for (int k = 0; k < 150; ++k) {
    auto i = oracle::random_interp(rng, 3, 0.25);
    auto q = random_peq(rng, 3);
    REQUIRE(satisfies_peq(i, q) == brute_peq(i, q));
  }
  Interpretation i;
  i.size = 1;
  CHECK_FALSE(satisfies_peq(i, peq::bot()));
  CHECK(to_dnf(peq::bot()).empty());
  auto a = peq::atom(QueryAtom::concept_atom("A", "x"));
  std::vector<Peq> wide;
  for (int k = 0; k < 11; ++k) wide.push_back(peq::disj({a, a}));
  CHECK_THROWS_AS(to_dnf(peq::conj(wide)), Error);
  CHECK(to_dnf(peq::conj({peq::disj({a, a}), peq::disj({a, a, a})})).size() == 6);
}

TEST_CASE("matches survive homomorphisms") {
  oracle::Rng rng(57);
  int kept = 0;
  for (int k = 0; k < 150; ++k) {
    auto i = oracle::random_interp(rng, 3 + k % 3, 0.3);
    auto q = oracle::random_cq(rng, 3, 3);
    auto m = find_match(i, q);
    if (!m) continue;
    int size = 1 + k % 4;
    std::uniform_int_distribution<Element> to(0, size - 1);
    std::vector<Element> h(static_cast<size_t>(i.size));
    for (auto& e : h) e = to(rng);
    auto j = oracle::hom_image(rng, i, h, size, 0.1);
    Assignment image;
    for (const auto& [v, e] : *m) image[v] = h[static_cast<size_t>(e)];
    CHECK(replay(j, q, {}, image));
    CHECK(find_match(j, q).has_value());
    ++kept;
  }
  CHECK(kept >= 40);
}

TEST_CASE("query text format") {
  auto qs = parse_query("A(x)\nr(x,y)\nL<rnsn r s>(x,y)\n|\nbot\n|\nL<re \"r^- A?\">(y,x)\n");
  REQUIRE(qs.size() == 2);
  CHECK(qs[0].atoms.size() == 3);
  CHECK(qs[0].vars == std::vector<std::string>{"x", "y"});
  CHECK(print_atom(qs[0].atoms[0]) == "A(x)");
  CHECK(print_atom(qs[0].atoms[1]) == "r(x,y)");
  CHECK(print_atom(qs[0].atoms[2]) == "L<rnsn r s>(x,y)");
  CHECK(print_query(parse_query(print_query(qs))) == print_query(qs));

  oracle::Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    std::vector<Cq> d{oracle::random_cq(rng, 3, 1 + k % 4), oracle::random_cq(rng, 2, 2)};
    CHECK(print_query(parse_query(print_query(d))) == print_query(d));
  }
  try {
    parse_query("A(x)\nr(x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_query("L<frob>(x,y)\n"), ParseError);
  CHECK_THROWS_AS(parse_query("r(x,y,z)\n"), ParseError);
}
