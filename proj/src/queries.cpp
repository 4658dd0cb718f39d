#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "text_util.hpp"
#include "vplc/error.hpp"
#include "vplc/queries.hpp"
#include "vplc/reach.hpp"

namespace vplc {

QueryAtom QueryAtom::concept_atom(const std::string& a, const std::string& x) {
  QueryAtom q;
  q.kind = Kind::Concept;
  q.name = a;
  q.x = x;
  return q;
}

QueryAtom QueryAtom::role_atom(const std::string& r, const std::string& x, const std::string& y) {
  QueryAtom q;
  q.kind = Kind::Role;
  q.name = r;
  q.x = x;
  q.y = y;
  return q;
}

QueryAtom QueryAtom::lang_atom(const LangExpr& l, const std::string& x, const std::string& y) {
  QueryAtom q;
  q.kind = Kind::Lang;
  q.lang = l;
  q.name = l.key();
  q.x = x;
  q.y = y;
  return q;
}

void Cq::add(QueryAtom a) {
  auto note = [&](const std::string& v) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  };
  note(a.x);
  if (a.kind != QueryAtom::Kind::Concept) note(a.y);
  atoms.push_back(std::move(a));
}

namespace peq {

Peq atom(QueryAtom a) {
  auto n = std::make_shared<PeqNode>();
  n->kind = PeqNode::Kind::Atom;
  n->atom = std::move(a);
  return n;
}

Peq conj(std::vector<Peq> ks) {
  auto n = std::make_shared<PeqNode>();
  n->kind = PeqNode::Kind::And;
  n->kids = std::move(ks);
  return n;
}

Peq disj(std::vector<Peq> ks) {
  auto n = std::make_shared<PeqNode>();
  n->kind = PeqNode::Kind::Or;
  n->kids = std::move(ks);
  return n;
}

Peq bot() { return std::make_shared<PeqNode>(); }

Peq from_cq(const Cq& q) {
  std::vector<Peq> ks;
  for (const auto& a : q.atoms) ks.push_back(atom(a));
  return conj(std::move(ks));
}

}  // namespace peq

namespace {

struct Binary {
  int x, y;
  std::vector<ElementSet> fwd, bwd;
};

struct Problem {
  size_t size = 0;
  std::vector<ElementSet> dom;
  std::vector<Binary> rels;
  std::vector<std::vector<size_t>> relsOf;  // var -> indices into rels
};

std::vector<Edge> atom_edges(const Interpretation& i, const SymbolBinding& b, const QueryAtom& a) {
  if (a.kind == QueryAtom::Kind::Role) return edge_relation(i, b, a.name);
  auto res = l_reachable_pairs(i, b, compile(*a.lang));
  return res.pairs();
}

Problem build(const Interpretation& i, const Cq& q, const SymbolBinding& b) {
  Problem p;
  p.size = static_cast<size_t>(i.size);
  std::map<std::string, int> idx;
  for (size_t v = 0; v < q.vars.size(); ++v) idx[q.vars[v]] = static_cast<int>(v);
  ElementSet all(p.size);
  all.set();
  p.dom.assign(q.vars.size(), all);
  p.relsOf.resize(q.vars.size());
  std::map<std::string, std::vector<Edge>> cache;
  for (const auto& a : q.atoms) {
    if (!idx.count(a.x) || (a.kind != QueryAtom::Kind::Concept && !idx.count(a.y)))
      throw Error("query atom uses an undeclared variable");
    int x = idx[a.x];
    if (a.kind == QueryAtom::Kind::Concept) {
      auto it = i.concepts.find(a.name);
      if (it == i.concepts.end()) throw Error("dangling name: concept " + a.name);
      ElementSet ext(p.size);
      for (Element e : it->second) ext.set(static_cast<size_t>(e));
      p.dom[static_cast<size_t>(x)] &= ext;
      continue;
    }
    std::string key = (a.kind == QueryAtom::Kind::Role ? "role " : "lang ") + a.name;
    auto c = cache.find(key);
    if (c == cache.end()) c = cache.emplace(key, atom_edges(i, b, a)).first;
    int y = idx[a.y];
    if (x == y) {
      ElementSet loops(p.size);
      for (const auto& [d, e] : c->second)
        if (d == e) loops.set(static_cast<size_t>(d));
      p.dom[static_cast<size_t>(x)] &= loops;
      continue;
    }
    Binary r{x, y, std::vector<ElementSet>(p.size, ElementSet(p.size)), std::vector<ElementSet>(p.size, ElementSet(p.size))};
    for (const auto& [d, e] : c->second) {
      r.fwd[static_cast<size_t>(d)].set(static_cast<size_t>(e));
      r.bwd[static_cast<size_t>(e)].set(static_cast<size_t>(d));
    }
    p.relsOf[static_cast<size_t>(x)].push_back(p.rels.size());
    p.relsOf[static_cast<size_t>(y)].push_back(p.rels.size());
    p.rels.push_back(std::move(r));
  }
  return p;
}

// Arc consistency; false when some domain empties.
bool ac3(const Problem& p, std::vector<ElementSet>& dom) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : p.rels) {
      auto& dx = dom[static_cast<size_t>(r.x)];
      auto& dy = dom[static_cast<size_t>(r.y)];
      for (auto a = dx.find_first(); a != ElementSet::npos; a = dx.find_next(a))
        if (!r.fwd[a].intersects(dy)) {
          dx.reset(a);
          changed = true;
        }
      for (auto b = dy.find_first(); b != ElementSet::npos; b = dy.find_next(b))
        if (!r.bwd[b].intersects(dx)) {
          dy.reset(b);
          changed = true;
        }
      if (dx.none() || dy.none()) return false;
    }
  }
  return std::none_of(dom.begin(), dom.end(), [](const ElementSet& d) { return d.none(); });
}

// Calls emit for each match; emit returns false to stop.
bool search(const Problem& p, std::vector<ElementSet> dom, std::vector<int>& val,
            const std::function<bool(const std::vector<int>&)>& emit) {
  int pick = -1;
  size_t best = 0;
  for (size_t v = 0; v < dom.size(); ++v)
    if (val[v] < 0 && (pick < 0 || dom[v].count() < best)) {
      pick = static_cast<int>(v);
      best = dom[v].count();
    }
  if (pick < 0) return emit(val);
  auto pv = static_cast<size_t>(pick);
  for (auto e = dom[pv].find_first(); e != ElementSet::npos; e = dom[pv].find_next(e)) {
    auto next = dom;
    next[pv].reset();
    next[pv].set(e);
    bool ok = true;
    for (size_t ri : p.relsOf[pv]) {
      const auto& r = p.rels[ri];
      auto other = static_cast<size_t>(r.x == pick ? r.y : r.x);
      next[other] &= r.x == pick ? r.fwd[e] : r.bwd[e];
      if (next[other].none()) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    val[pv] = static_cast<int>(e);
    if (!search(p, std::move(next), val, emit)) {
      val[pv] = -1;
      return false;
    }
    val[pv] = -1;
  }
  return true;
}

Assignment to_assignment(const Cq& q, const std::vector<int>& val) {
  Assignment a;
  for (size_t v = 0; v < q.vars.size(); ++v) a[q.vars[v]] = val[v];
  return a;
}

}  // namespace

std::optional<Assignment> find_match(const Interpretation& i, const Cq& q, const SymbolBinding& b) {
  auto p = build(i, q, b);
  auto dom = p.dom;
  if (!ac3(p, dom)) return std::nullopt;
  std::vector<int> val(q.vars.size(), -1);
  std::optional<Assignment> out;
  search(p, dom, val, [&](const std::vector<int>& v) {
    out = to_assignment(q, v);
    return false;
  });
  return out;
}

std::vector<Assignment> all_matches(const Interpretation& i, const Cq& q, const SymbolBinding& b) {
  auto p = build(i, q, b);
  auto dom = p.dom;
  if (!ac3(p, dom)) return {};
  std::vector<int> val(q.vars.size(), -1);
  std::vector<std::vector<int>> found;
  search(p, dom, val, [&](const std::vector<int>& v) {
    found.push_back(v);
    return true;
  });
  std::sort(found.begin(), found.end());
  std::vector<Assignment> out;
  for (const auto& v : found) out.push_back(to_assignment(q, v));
  return out;
}

bool replay(const Interpretation& i, const Cq& q, const SymbolBinding& b, const Assignment& a) {
  auto get = [&](const std::string& v) {
    auto it = a.find(v);
    if (it == a.end()) throw Error("assignment misses variable " + v);
    if (it->second < 0 || it->second >= i.size) throw Error("assignment leaves the domain");
    return it->second;
  };
  for (const auto& at : q.atoms) {
    Element x = get(at.x);
    if (at.kind == QueryAtom::Kind::Concept) {
      auto it = i.concepts.find(at.name);
      if (it == i.concepts.end()) throw Error("dangling name: concept " + at.name);
      if (!it->second.count(x)) return false;
      continue;
    }
    Element y = get(at.y);
    auto edges = atom_edges(i, b, at);
    if (!std::binary_search(edges.begin(), edges.end(), Edge{x, y})) return false;
  }
  return true;
}

std::vector<Cq> to_dnf(const Peq& q, size_t cap) {
  switch (q->kind) {
    case PeqNode::Kind::Bot:
      return {};
    case PeqNode::Kind::Atom: {
      Cq c;
      c.add(q->atom);
      return {c};
    }
    case PeqNode::Kind::Or: {
      std::vector<Cq> out;
      for (const auto& k : q->kids) {
        auto part = to_dnf(k, cap);
        out.insert(out.end(), part.begin(), part.end());
        if (out.size() > cap) throw Error("disjunctive normal form exceeds " + std::to_string(cap) + " disjuncts");
      }
      return out;
    }
    case PeqNode::Kind::And: {
      std::vector<Cq> out{Cq{}};
      for (const auto& k : q->kids) {
        auto part = to_dnf(k, cap);
        if (out.size() * part.size() > cap)
          throw Error("disjunctive normal form exceeds " + std::to_string(cap) + " disjuncts");
        std::vector<Cq> next;
        for (const auto& a : out)
          for (const auto& b : part) {
            Cq c = a;
            for (const auto& at : b.atoms) c.add(at);
            next.push_back(std::move(c));
          }
        out = std::move(next);
      }
      return out;
    }
  }
  return {};
}

bool satisfies_peq(const Interpretation& i, const Peq& q, const SymbolBinding& b, size_t cap) {
  for (const auto& c : to_dnf(q, cap))
    if (find_match(i, c, b)) return true;
  return false;
}

std::string print_atom(const QueryAtom& a) {
  switch (a.kind) {
    case QueryAtom::Kind::Concept: return a.name + "(" + a.x + ")";
    case QueryAtom::Kind::Role: return a.name + "(" + a.x + "," + a.y + ")";
    case QueryAtom::Kind::Lang: {
      auto k = a.lang->key();
      return "L<" + k.substr(1, k.size() - 2) + ">(" + a.x + "," + a.y + ")";
    }
  }
  return "";
}

std::string print_query(const std::vector<Cq>& disjuncts) {
  std::ostringstream out;
  if (disjuncts.empty()) return "bot\n";
  for (size_t k = 0; k < disjuncts.size(); ++k) {
    if (k) out << "|\n";
    for (const auto& a : disjuncts[k].atoms) out << print_atom(a) << '\n';
  }
  return out.str();
}

namespace {

bool is_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '?' && c != '^') return false;
  return true;
}

// First '>' outside a quoted string.
size_t close_angle(const std::string& s, size_t from) {
  bool inStr = false;
  for (size_t k = from; k < s.size(); ++k) {
    char c = s[k];
    if (inStr) {
      if (c == '\\') ++k;
      else if (c == '"') inStr = false;
    } else if (c == '"') {
      inStr = true;
    } else if (c == '>') {
      return k;
    }
  }
  return std::string::npos;
}

// "(x)" or "(x,y)" with optional blanks.
std::vector<std::string> arg_list(const std::string& s) {
  auto t = text::trim(s);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw ParseError("expected an argument list, got '" + t + "'");
  std::vector<std::string> out;
  std::string inner = t.substr(1, t.size() - 2);
  size_t start = 0;
  while (true) {
    size_t comma = inner.find(',', start);
    auto v = text::trim(inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (!is_name(v)) throw ParseError("bad variable '" + v + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<Cq> parse_query(const std::string& src, const std::string& baseDir) {
  std::vector<Cq> out;
  Cq cur;
  bool isBot = false, any = false;
  auto flush = [&](int line) {
    if (isBot && !cur.atoms.empty()) throw ParseError("'bot' cannot be combined with atoms", line);
    if (!isBot) out.push_back(cur);
    cur = Cq{};
    isBot = false;
  };
  for (const auto& ln : text::content_lines(src)) {
    any = true;
    const auto& t = ln.text;
    if (t == "|") {
      flush(ln.number);
      continue;
    }
    if (t == "bot") {
      isBot = true;
      continue;
    }
    try {
      if (text::starts_with(t, "L<")) {
        size_t close = close_angle(t, 2);
        if (close == std::string::npos) throw ParseError("unterminated language in '" + t + "'");
        auto l = parse_language("(" + t.substr(2, close - 2) + ")", baseDir);
        auto vs = arg_list(t.substr(close + 1));
        if (vs.size() != 2) throw ParseError("language atom expects two variables");
        cur.add(QueryAtom::lang_atom(l, vs[0], vs[1]));
        continue;
      }
      size_t open = t.find('(');
      if (open == std::string::npos) throw ParseError("expected an atom, got '" + t + "'");
      auto name = text::trim(t.substr(0, open));
      if (!is_name(name)) throw ParseError("bad predicate '" + name + "'");
      auto vs = arg_list(t.substr(open));
      if (vs.size() == 1) cur.add(QueryAtom::concept_atom(name, vs[0]));
      else if (vs.size() == 2) cur.add(QueryAtom::role_atom(name, vs[0], vs[1]));
      else throw ParseError("atom " + name + " has " + std::to_string(vs.size()) + " arguments");
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      throw ParseError(e.what(), ln.number);
    }
  }
  if (!any) throw ParseError("empty query");
  flush(0);
  return out;
}

}  // namespace vplc
