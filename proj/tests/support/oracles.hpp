#pragma once

// Test-side reference implementations. None of them call into the library's
// engines: automata are simulated straight from their rule lists, reachability
// is explicit breadth-first search, queries are matched by brute force.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "vplc/concepts.hpp"
#include "vplc/interp.hpp"
#include "vplc/queries.hpp"
#include "vplc/vpa.hpp"

namespace oracle {

using namespace vplc;
using Rng = std::mt19937_64;

// ---- words ----

inline std::vector<Word> all_words(const std::vector<Symbol>& sigma, int len) {
  std::vector<Word> out{Word{}};
  for (int k = 0; k < len; ++k) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (const auto& a : sigma) {
        auto v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<Word> words_up_to(const std::vector<Symbol>& sigma, int maxLen) {
  std::vector<Word> out;
  for (int l = 0; l <= maxLen; ++l)
    for (auto& w : all_words(sigma, l)) out.push_back(std::move(w));
  return out;
}

inline Word rep(const Word& w, int n) {
  Word out;
  for (int k = 0; k < n; ++k) out.insert(out.end(), w.begin(), w.end());
  return out;
}

inline Word cat(std::initializer_list<Word> parts) {
  Word out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// ---- automaton simulation from the rule lists ----

using Cfg = std::pair<StateId, std::vector<StackSym>>;

inline std::set<Cfg> sim_step(const Vpa& a, const std::set<Cfg>& cur, const Symbol& x) {
  std::set<Cfg> out;
  auto k = a.alphabet.kind(x);
  if (!k) return out;
  for (const auto& [q, st] : cur) {
    if (*k == LetterKind::Call) {
      for (const auto& r : a.calls)
        if (r.from == q && r.letter == x) {
          auto s2 = st;
          s2.push_back(r.push);
          out.insert({r.to, s2});
        }
    } else if (*k == LetterKind::Internal) {
      for (const auto& r : a.internals)
        if (r.from == q && r.letter == x) out.insert({r.to, st});
    } else {
      for (const auto& r : a.returns) {
        if (r.from != q || r.letter != x) continue;
        if (st.empty() && r.pop == kBottom) out.insert({r.to, st});
        if (!st.empty() && r.pop == st.back()) {
          auto s2 = st;
          s2.pop_back();
          out.insert({r.to, s2});
        }
      }
    }
  }
  return out;
}

inline std::set<Cfg> sim_start(const Vpa& a) {
  std::set<Cfg> s;
  for (StateId q : a.initial) s.insert({q, {}});
  return s;
}

inline bool sim_final(const Vpa& a, const std::set<Cfg>& s) {
  return std::any_of(s.begin(), s.end(), [&](const Cfg& c) { return a.final.count(c.first) > 0; });
}

inline bool sim_accepts(const Vpa& a, const Word& w) {
  auto s = sim_start(a);
  for (const auto& x : w) s = sim_step(a, s, x);
  return sim_final(a, s);
}

// Every word of length <= maxLen that has a live run, paired with acceptance.
// Words outside the result have no run at all and are rejected.
inline std::vector<std::pair<Word, bool>> live_words(const Vpa& a, int maxLen) {
  std::vector<std::pair<Word, bool>> out;
  auto syms = a.alphabet.symbols();
  std::function<void(Word&, const std::set<Cfg>&)> go = [&](Word& w, const std::set<Cfg>& s) {
    out.push_back({w, sim_final(a, s)});
    if (static_cast<int>(w.size()) == maxLen) return;
    for (const auto& x : syms) {
      auto n = sim_step(a, s, x);
      if (n.empty()) continue;
      w.push_back(x);
      go(w, n);
      w.pop_back();
    }
  };
  Word w;
  go(w, sim_start(a));
  return out;
}

// ---- pattern languages ----

inline bool is_rnsn(const Word& w, const Symbol& c, const Symbol& r) {
  size_t n = w.size() / 2;
  if (w.size() % 2) return false;
  for (size_t k = 0; k < w.size(); ++k)
    if (w[k] != (k < n ? c : r)) return false;
  return true;
}

inline bool is_goller(const Word& w, const Symbol& r, const Symbol& s, const Symbol& rinv) {
  if (w.size() % 2 == 0) return false;
  size_t n = w.size() / 2;
  for (size_t k = 0; k < w.size(); ++k) {
    const Symbol& want = k < n ? r : k == n ? s : rinv;
    if (w[k] != want) return false;
  }
  return true;
}

// Cur? InBar? (s^- InBar?)^k s^- (In? s^-)^m In? r In? (s In?)^m s (InBar? s)^k InBar? PrevBar?
inline Word ldru_word(int k, int m) {
  Word cur{"Cur?"}, ib{"InBar?"}, sm{"s^-"}, s{"s"}, in{"In?"}, pb{"PrevBar?"}, r{"r"};
  return cat({cur, ib, rep(cat({sm, ib}), k), sm, rep(cat({in, sm}), m), in, r, in, rep(cat({s, in}), m), s,
              rep(cat({ib, s}), k), ib, pb});
}

inline bool is_ldru(const Word& w) {
  if (w.size() < 9 || (w.size() - 9) % 4) return false;
  int total = static_cast<int>(w.size() - 9) / 4;
  for (int k = 0; k <= total; ++k)
    if (ldru_word(k, total - k) == w) return true;
  return false;
}

// ---- DOCA simulation ----

inline bool sim_doca(const Doca& d, const Word& w) {
  StateId q = d.initial;
  long c = 0;
  for (const auto& x : w) {
    auto it = d.moves.find({q, x, c == 0});
    if (it == d.moves.end()) return false;
    q = it->second.to;
    c += it->second.delta;
    if (c < 0) return false;
  }
  return d.final.count(q) > 0;
}

// ---- explicit reachability ----

inline std::vector<Edge> symbol_edges(const Interpretation& i, const Symbol& x) {
  std::vector<Edge> out;
  if (x.size() > 1 && x.back() == '?') {
    auto it = i.concepts.find(x.substr(0, x.size() - 1));
    if (it != i.concepts.end())
      for (Element e : it->second) out.push_back({e, e});
  } else if (x.size() > 2 && x.substr(x.size() - 2) == "^-") {
    auto it = i.roles.find(x.substr(0, x.size() - 2));
    if (it != i.roles.end())
      for (const auto& [a, b] : it->second) out.push_back({b, a});
  } else {
    auto it = i.roles.find(x);
    if (it != i.roles.end())
      for (const auto& [a, b] : it->second) out.push_back({a, b});
  }
  return out;
}

// Pairs (d, e) joined by some path of length <= maxLen whose label is accepted.
inline std::set<Edge> bfs_pairs(const Interpretation& i, const Vpa& a, int maxLen) {
  auto syms = a.alphabet.symbols();
  std::map<Symbol, std::vector<std::vector<Element>>> adj;
  for (const auto& x : syms) {
    auto& g = adj[x];
    g.assign(static_cast<size_t>(i.size), {});
    for (const auto& [u, v] : symbol_edges(i, x)) g[static_cast<size_t>(u)].push_back(v);
  }
  std::set<Edge> out;
  for (Element src = 0; src < i.size; ++src) {
    using Node = std::tuple<Element, StateId, std::vector<StackSym>>;
    std::set<Node> seen;
    std::vector<Node> layer;
    for (StateId q : a.initial) layer.push_back({src, q, {}});
    for (const auto& n : layer) seen.insert(n);
    for (int len = 0;; ++len) {
      for (const auto& [e, q, st] : layer)
        if (a.final.count(q)) out.insert({src, e});
      if (len == maxLen) break;
      std::vector<Node> next;
      for (const auto& [e, q, st] : layer)
        for (const auto& x : syms)
          for (const auto& [q2, st2] : sim_step(a, {{q, st}}, x))
            for (Element f : adj[x][static_cast<size_t>(e)]) {
              Node n{f, q2, st2};
              if (seen.insert(n).second) next.push_back(n);
            }
      layer = std::move(next);
    }
  }
  return out;
}

inline bool replays(const Interpretation& i, const Vpa& a, const Witness& w, Element from, Element to) {
  if (w.path.size() != w.word.size() + 1 || w.path.front() != from || w.path.back() != to) return false;
  if (!sim_accepts(a, w.word)) return false;
  for (size_t k = 0; k < w.word.size(); ++k) {
    auto es = symbol_edges(i, w.word[k]);
    if (std::find(es.begin(), es.end(), Edge{w.path[k], w.path[k + 1]}) == es.end()) return false;
  }
  return true;
}

// ---- random structures ----

inline Interpretation random_interp(Rng& rng, int size, double density, const std::vector<std::string>& roles = {"r", "s"},
                                    const std::vector<std::string>& concepts = {"A", "B"}) {
  Interpretation i;
  i.size = size;
  std::bernoulli_distribution coin(density), half(0.4);
  for (const auto& r : roles) {
    auto& ext = i.roles[r];
    for (Element a = 0; a < size; ++a)
      for (Element b = 0; b < size; ++b)
        if (coin(rng)) ext.insert({a, b});
  }
  for (const auto& c : concepts) {
    auto& ext = i.concepts[c];
    for (Element a = 0; a < size; ++a)
      if (half(rng)) ext.insert(a);
  }
  std::uniform_int_distribution<Element> pick(0, size - 1);
  i.individuals["a"] = pick(rng);
  i.individuals["b"] = pick(rng);
  return i;
}

// Random automaton over the given symbols with a random call/internal/return split
// (symbols ending in '?' stay internal).
inline Vpa random_vpa(Rng& rng, const std::vector<Symbol>& symbols, int maxStates, int maxStack = 2, double density = 0.35) {
  std::uniform_int_distribution<int> nStates(1, maxStates), nStack(1, maxStack), kind(0, 2);
  std::bernoulli_distribution coin(density), half(0.5);
  std::vector<Symbol> calls, ints, rets;
  for (const auto& x : symbols) {
    int k = x.back() == '?' ? 1 : kind(rng);
    (k == 0 ? calls : k == 1 ? ints : rets).push_back(x);
  }
  Vpa a;
  a.alphabet = PushdownAlphabet(calls, ints, rets);
  int Q = nStates(rng), G = nStack(rng);
  for (int q = 0; q < Q; ++q) a.addState("q" + std::to_string(q));
  for (int g = 0; g < G; ++g) a.addStackSymbol("g" + std::to_string(g));
  for (int q = 0; q < Q; ++q) {
    if (half(rng) || q == 0) a.initial.insert(q);
    if (half(rng)) a.final.insert(q);
  }
  for (int q = 0; q < Q; ++q)
    for (int q2 = 0; q2 < Q; ++q2) {
      for (const auto& x : calls)
        for (int g = 1; g <= G; ++g)
          if (coin(rng)) a.calls.push_back({q, x, q2, g});
      for (const auto& x : ints)
        if (coin(rng)) a.internals.push_back({q, x, q2});
      for (const auto& x : rets)
        for (int g = 0; g <= G; ++g)
          if (coin(rng)) a.returns.push_back({q, x, g, q2});
    }
  a.normalize();
  return a;
}

// ---- brute-force query matching ----

inline bool atom_holds(const Interpretation& i, const QueryAtom& at, const Assignment& m,
                       const std::map<std::string, std::set<Edge>>& langPairs) {
  Element x = m.at(at.x);
  switch (at.kind) {
    case QueryAtom::Kind::Concept: {
      auto it = i.concepts.find(at.name);
      return it != i.concepts.end() && it->second.count(x);
    }
    case QueryAtom::Kind::Role: {
      auto it = i.roles.find(at.name);
      return it != i.roles.end() && it->second.count({x, m.at(at.y)});
    }
    case QueryAtom::Kind::Lang:
      return langPairs.at(at.lang->key()).count({x, m.at(at.y)}) > 0;
  }
  return false;
}

// Language atoms are decided by bounded search of the given length.
inline std::vector<Assignment> brute_matches(const Interpretation& i, const Cq& q, int langLen) {
  std::map<std::string, std::set<Edge>> lp;
  for (const auto& at : q.atoms)
    if (at.kind == QueryAtom::Kind::Lang && !lp.count(at.lang->key())) lp[at.lang->key()] = bfs_pairs(i, compile(*at.lang), langLen);
  std::vector<Assignment> out;
  Assignment m;
  std::function<void(size_t)> go = [&](size_t k) {
    if (k == q.vars.size()) {
      if (std::all_of(q.atoms.begin(), q.atoms.end(), [&](const QueryAtom& a) { return atom_holds(i, a, m, lp); }))
        out.push_back(m);
      return;
    }
    for (Element e = 0; e < i.size; ++e) {
      m[q.vars[k]] = e;
      go(k + 1);
    }
    m.erase(q.vars[k]);
  };
  go(0);
  return out;
}

// ---- concepts by their set definition ----

inline std::set<Element> naive_ext(const Interpretation& i, const Concept& c, int langLen) {
  std::set<Element> all;
  for (Element e = 0; e < i.size; ++e) all.insert(e);
  auto rec = [&](const Concept& k) { return naive_ext(i, k, langLen); };
  switch (c->kind) {
    case ConceptKind::Top:
      return all;
    case ConceptKind::Atom:
      return i.concepts.at(c->name);
    case ConceptKind::Nominal:
      return {i.individuals.at(c->name)};
    case ConceptKind::Self: {
      std::set<Element> out;
      for (const auto& [a, b] : i.roles.at(c->name))
        if (a == b) out.insert(a);
      return out;
    }
    case ConceptKind::Not: {
      auto in = rec(c->kids[0]);
      std::set<Element> out;
      for (Element e : all)
        if (!in.count(e)) out.insert(e);
      return out;
    }
    case ConceptKind::And: {
      auto out = all;
      for (const auto& k : c->kids) {
        auto in = rec(k);
        std::erase_if(out, [&](Element e) { return !in.count(e); });
      }
      return out;
    }
    case ConceptKind::Or: {
      std::set<Element> out;
      for (const auto& k : c->kids) {
        auto in = rec(k);
        out.insert(in.begin(), in.end());
      }
      return out;
    }
    case ConceptKind::Exists:
    case ConceptKind::Forall: {
      auto pairs = bfs_pairs(i, compile(*c->lang), langLen);
      auto in = rec(c->kids[0]);
      std::set<Element> out;
      for (Element d : all) {
        bool some = false, every = true;
        for (const auto& [x, y] : pairs) {
          if (x != d) continue;
          if (in.count(y))
            some = true;
          else
            every = false;
        }
        if (c->kind == ConceptKind::Exists ? some : every) out.insert(d);
      }
      return out;
    }
  }
  return {};
}

inline std::set<Element> to_set(const ElementSet& s) {
  std::set<Element> out;
  for (auto e = s.find_first(); e != ElementSet::npos; e = s.find_next(e)) out.insert(static_cast<Element>(e));
  return out;
}

// Languages over roles r, s and concepts A, B.
inline std::vector<LangExpr> language_pool() {
  return {LangExpr::regex("r"),          LangExpr::regex("r s*"),       LangExpr::regex("(r | s^-)^+"),
          LangExpr::regex("A? r B?"),    LangExpr::regex("()"),         LangExpr::rnsn("r", "s"),
          LangExpr::goller("r", "s", "r^-")};
}

inline Concept random_concept(Rng& rng, int depth) {
  static const auto pool = language_pool();
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 9), lang(0, static_cast<int>(pool.size()) - 1);
  switch (pick(rng)) {
    case 0: return cpt::atom("A");
    case 1: return cpt::atom("B");
    case 2: return cpt::nominal(pick(rng) % 2 ? "a" : "b");
    case 3: return pick(rng) % 2 ? cpt::top() : cpt::self("r");
    case 4: return cpt::neg(random_concept(rng, depth - 1));
    case 5: return cpt::conj(random_concept(rng, depth - 1), random_concept(rng, depth - 1));
    case 6: return cpt::disj(random_concept(rng, depth - 1), random_concept(rng, depth - 1));
    case 7:
    case 8: return cpt::exists(pool[static_cast<size_t>(lang(rng))], random_concept(rng, depth - 1));
    default: return cpt::forall(pool[static_cast<size_t>(lang(rng))], random_concept(rng, depth - 1));
  }
}

// ---- queries ----

inline Cq random_cq(Rng& rng, int nVars, int nAtoms) {
  static const auto pool = language_pool();
  std::uniform_int_distribution<int> var(0, nVars - 1), kind(0, 2), lang(0, static_cast<int>(pool.size()) - 1), two(0, 1);
  auto v = [&] { return "x" + std::to_string(var(rng)); };
  Cq q;
  for (int k = 0; k < nAtoms; ++k) {
    switch (kind(rng)) {
      case 0: q.add(QueryAtom::concept_atom(two(rng) ? "A" : "B", v())); break;
      case 1: q.add(QueryAtom::role_atom(two(rng) ? "r" : "s", v(), v())); break;
      default: q.add(QueryAtom::lang_atom(pool[static_cast<size_t>(lang(rng))], v(), v()));
    }
  }
  return q;
}

// The image of i under h, with extra random facts on top.
inline Interpretation hom_image(Rng& rng, const Interpretation& i, const std::vector<Element>& h, int size, double extra) {
  Interpretation j;
  j.size = size;
  std::bernoulli_distribution coin(extra);
  for (const auto& [r, ext] : i.roles) {
    auto& out = j.roles[r];
    for (const auto& [a, b] : ext) out.insert({h[static_cast<size_t>(a)], h[static_cast<size_t>(b)]});
    for (Element a = 0; a < size; ++a)
      for (Element b = 0; b < size; ++b)
        if (coin(rng)) out.insert({a, b});
  }
  for (const auto& [c, ext] : i.concepts) {
    auto& out = j.concepts[c];
    for (Element a : ext) out.insert(h[static_cast<size_t>(a)]);
    for (Element a = 0; a < size; ++a)
      if (coin(rng)) out.insert(a);
  }
  for (const auto& [n, e] : i.individuals) j.individuals[n] = h[static_cast<size_t>(e)];
  return j;
}

}  // namespace oracle
