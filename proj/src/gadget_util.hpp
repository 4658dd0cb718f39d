#pragma once

#include <set>
#include <string>
#include <vector>

#include "vplc/concepts.hpp"
#include "vplc/error.hpp"
#include "vplc/interp.hpp"
#include "vplc/reach.hpp"
#include "vplc/reductions.hpp"

namespace vplc::gadget {

using Adj = std::vector<std::vector<Element>>;

inline Adj successors(const Interpretation& i, const std::vector<std::string>& roles) {
  Adj out(static_cast<size_t>(i.size));
  for (const auto& r : roles) {
    auto it = i.roles.find(r);
    if (it == i.roles.end()) throw Error("dangling role " + r);
    for (const auto& [a, b] : it->second) out[static_cast<size_t>(a)].push_back(b);
  }
  return out;
}

inline Adj reversed(const Adj& g) {
  Adj out(g.size());
  for (size_t a = 0; a < g.size(); ++a)
    for (Element b : g[a]) out[static_cast<size_t>(b)].push_back(static_cast<Element>(a));
  return out;
}

// Elements reachable in one or more steps.
inline ElementSet plus(const Adj& g, Element from) {
  ElementSet seen(g.size());
  std::vector<Element> todo(g[static_cast<size_t>(from)].begin(), g[static_cast<size_t>(from)].end());
  for (Element e : todo) seen.set(static_cast<size_t>(e));
  while (!todo.empty()) {
    Element e = todo.back();
    todo.pop_back();
    for (Element f : g[static_cast<size_t>(e)])
      if (!seen.test(static_cast<size_t>(f))) {
        seen.set(static_cast<size_t>(f));
        todo.push_back(f);
      }
  }
  return seen;
}

inline ElementSet star(const Adj& g, Element from) {
  auto s = plus(g, from);
  s.set(static_cast<size_t>(from));
  return s;
}

// Elements at the end of some walk of exactly n steps.
inline ElementSet exactly(const Adj& g, Element from, int n) {
  ElementSet cur(g.size());
  cur.set(static_cast<size_t>(from));
  for (int k = 0; k < n; ++k) {
    ElementSet next(g.size());
    for (auto e = cur.find_first(); e != ElementSet::npos; e = cur.find_next(e))
      for (Element f : g[e]) next.set(static_cast<size_t>(f));
    cur = next;
  }
  return cur;
}

inline std::set<Element> succ_set(const Adj& g, Element e) {
  return {g[static_cast<size_t>(e)].begin(), g[static_cast<size_t>(e)].end()};
}

inline Element individual(const Interpretation& i, const std::string& a) {
  auto it = i.individuals.find(a);
  if (it == i.individuals.end()) throw Error("missing individual " + a);
  return it->second;
}

inline const std::set<Element>& concept_ext(const Interpretation& i, const std::string& a) {
  auto it = i.concepts.find(a);
  if (it == i.concepts.end()) throw Error("dangling concept " + a);
  return it->second;
}

// Tile indices whose concept holds at e.
inline std::vector<int> tiles_at(const Interpretation& i, const DominoSystem& d, Element e) {
  std::vector<int> out;
  for (size_t t = 0; t < d.tiles.size(); ++t)
    if (concept_ext(i, tile_concept(d.tiles[t])).count(e)) out.push_back(static_cast<int>(t));
  return out;
}

// Targets of { r^n s^n : n >= 1 } per source, i.e. r, then the rnsn language, then s.
inline std::vector<ElementSet> rnsn_plus(const Interpretation& i) {
  auto res = l_reachable_pairs(i, SymbolBinding{}, rnsn_vpa("r", "s"));
  Adj R = successors(i, {"r"}), S = successors(i, {"s"});
  size_t n = static_cast<size_t>(i.size);
  std::vector<ElementSet> out(n, ElementSet(n));
  for (size_t d = 0; d < n; ++d)
    for (Element d2 : R[d])
      for (auto e = res.targets[static_cast<size_t>(d2)].find_first(); e != ElementSet::npos;
           e = res.targets[static_cast<size_t>(d2)].find_next(e))
        for (Element f : S[e]) out[d].set(static_cast<size_t>(f));
  return out;
}

inline Concept ex_rnsn_plus(const Concept& c) {
  auto one = [](const char* r) { return LangExpr::regex(r); };
  return cpt::exists(one("r"), cpt::exists(LangExpr::rnsn("r", "s"), cpt::exists(one("s"), c)));
}

inline Concept all_rnsn_plus(const Concept& c) {
  auto one = [](const char* r) { return LangExpr::regex(r); };
  return cpt::forall(one("r"), cpt::forall(LangExpr::rnsn("r", "s"), cpt::forall(one("s"), c)));
}

inline Condition cond(const std::string& name, bool holds, const std::string& detail = "") {
  return {name, holds, holds ? "" : detail};
}

inline LangExpr re(const std::string& p) { return LangExpr::regex(p); }

// (Q L.C)^n.D with exponent 0 meaning D.
inline Concept nested(bool exists, const LangExpr& l, const Concept& c, int n, const Concept& d) {
  Concept out = d;
  for (int k = 0; k < n; ++k)
    out = exists ? cpt::exists(l, cpt::conj(c, out)) : cpt::forall(l, cpt::implies(c, out));
  return out;
}

}  // namespace vplc::gadget
