#include <algorithm>

#include "gadget_util.hpp"
#include "vplc/error.hpp"
#include "vplc/reductions.hpp"

namespace vplc {

using namespace gadget;

HyperoctantLayout::HyperoctantLayout(int tiles, int depth, bool grid)
    : n_(tiles), depth_(depth), grid_(grid), size_(tiles) {
  if (tiles < 1 || depth < 0) throw Error("bad hyperoctant dimensions");
  cellBase_.assign(static_cast<size_t>((depth + 1) * (depth + 1)), -1);
  for (int n = 0; n <= depth; ++n)
    for (int m = 0; m <= n; ++m) cellBase_[static_cast<size_t>(n * (depth + 1) + m)] = n_ + OctantPrefixCover::index(n, m) * (n_ + 1);
  size_ = n_ + (depth + 1) * (depth + 2) / 2 * (n_ + 1);
  if (grid)
    for (int n = 0; n <= depth; ++n)
      for (int m = n + 1; m <= depth; ++m) {
        cellBase_[static_cast<size_t>(n * (depth + 1) + m)] = size_;
        size_ += n_ + 1;
      }
}

bool HyperoctantLayout::contains(int n, int m, int k) const {
  if (n < 0) return m == 0 && k == 0 && n >= -n_;
  if (n > depth_ || m < 0 || m > depth_ || k < 0 || k > n_) return false;
  return cellBase_[static_cast<size_t>(n * (depth_ + 1) + m)] >= 0;
}

Element HyperoctantLayout::id(int n, int m, int k) const {
  if (!contains(n, m, k))
    throw Error("(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k) + ") is outside the layout");
  if (n < 0) return n_ + n;
  return cellBase_[static_cast<size_t>(n * (depth_ + 1) + m)] + k;
}

std::tuple<int, int, int> HyperoctantLayout::coords(Element e) const {
  if (e < 0 || e >= size_) throw Error("element outside the layout");
  if (e < n_) return {e - n_, 0, 0};
  for (int n = 0; n <= depth_; ++n)
    for (int m = 0; m <= depth_; ++m) {
      int b = cellBase_[static_cast<size_t>(n * (depth_ + 1) + m)];
      if (b >= 0 && e >= b && e <= b + n_) return {n, m, e - b};
    }
  throw Error("element outside the layout");
}

namespace {

int all_white_index(const DominoSystem& d) {
  for (size_t t = 0; t < d.tiles.size(); ++t)
    if (d.is_all_white(static_cast<int>(t))) return static_cast<int>(t);
  throw Error("no all-white tile");
}

}  // namespace

Interpretation hyperoctant(const DominoSystem& d, const OctantPrefixCover& c) {
  validate_octant_system(d);
  auto rep = check_octant_prefix(d, c);
  if (!rep.pass) throw Error("not an octant prefix cover: " + rep.firstViolation);
  int N = static_cast<int>(d.tiles.size()), D = c.depth;
  int white = all_white_index(d) + 1;
  HyperoctantLayout l(N, D, false);
  Interpretation h;
  h.size = l.size();
  for (const auto& t : d.tiles) h.concepts[tile_concept(t)];
  for (const char* a : {"In", "InBar", "Cur", "Prev", "PrevBar"}) h.concepts[a];
  auto& r = h.roles["r"];
  auto& s = h.roles["s"];
  h.roles["aux"];

  for (int j = N; j >= 2; --j) r.insert({l.id(-j, 0, 0), l.id(-j + 1, 0, 0)});
  r.insert({l.id(-1, 0, 0), l.id(0, 0, 0)});
  for (int n = 0; n < D; ++n) r.insert({l.id(n, 0, 0), l.id(n + 1, 0, 0)});

  for (int n = 0; n <= D; ++n)
    for (int m = 0; m <= n; ++m) {
      int t = c.at(n, m);
      h.concepts[tile_concept(d.tiles[static_cast<size_t>(t)])].insert(l.id(n, m, 0));
      h.concepts["In"].insert(l.id(n, m, 0));
      h.concepts["Cur"].insert(l.id(n, m, t + 1));
      if (m < n) s.insert({l.id(n, m, 0), l.id(n, m + 1, 0)});
      for (int k = 0; k < N; ++k) s.insert({l.id(n, m, k), l.id(n, m, k + 1)});
      if (n + 1 <= D) h.concepts["Prev"].insert(l.id(n + 1, m, t + 1));
    }
  for (int n = 0; n <= D; ++n) h.concepts["Prev"].insert(l.id(n, n, white));
  for (Element e = 0; e < h.size; ++e) {
    if (!h.concepts["In"].count(e)) h.concepts["InBar"].insert(e);
    if (!h.concepts["Prev"].count(e)) h.concepts["PrevBar"].insert(e);
  }
  return h;
}

std::vector<std::tuple<int, int, int>> properness_violations(const Interpretation& i, const HyperoctantLayout& l) {
  const auto& cur = concept_ext(i, "Cur");
  const auto& prev = concept_ext(i, "Prev");
  std::vector<std::tuple<int, int, int>> out;
  for (int n = 0; n <= l.depth(); ++n)
    for (int m = 0; m <= l.depth(); ++m)
      for (int k = 0; k <= l.tiles(); ++k)
        if (l.contains(n, m, k) && cur.count(l.id(n, m, k)) && l.contains(n + 1, m, k) &&
            !prev.count(l.id(n + 1, m, k)))
          out.emplace_back(n, m, k);
  return out;
}

bool is_proper(const Interpretation& i, const HyperoctantLayout& l) { return properness_violations(i, l).empty(); }

GridExtension extend_to_grid(const Interpretation& h, const HyperoctantLayout& l) {
  if (l.grid()) throw Error("layout is already a grid");
  if (h.size != l.size()) throw Error("interpretation does not match the layout");
  if (!is_proper(h, l)) throw Error("hyperoctant is not proper");
  int N = l.tiles(), D = l.depth();
  HyperoctantLayout g(N, D, true);
  Interpretation out;
  out.size = g.size();
  auto remap = [&](Element e) {
    auto [n, m, k] = l.coords(e);
    return g.id(n, m, k);
  };
  for (const auto& [a, ext] : h.concepts) {
    auto& dst = out.concepts[a];
    for (Element e : ext) dst.insert(remap(e));
  }
  for (const auto& [r, ext] : h.roles) {
    auto& dst = out.roles[r];
    for (const auto& [a, b] : ext) dst.insert({remap(a), remap(b)});
  }
  for (const auto& [a, e] : h.individuals) out.individuals[a] = remap(e);

  auto& s = out.roles["s"];
  for (int n = 0; n <= D; ++n)
    for (int m = n + 1; m <= D; ++m)
      for (int k = 0; k <= N; ++k) {
        Element src = l.id(0, 0, k);
        for (const auto& [a, ext] : h.concepts)
          if (ext.count(src)) out.concepts[a].insert(g.id(n, m, k));
        if (k < N) s.insert({g.id(n, m, k), g.id(n, m, k + 1)});
      }
  for (int n = 0; n <= D; ++n)
    for (int m = n; m < D; ++m) s.insert({g.id(n, m, 0), g.id(n, m + 1, 0)});
  auto& aux = out.roles["aux"];
  Element root = g.id(-N, 0, 0);
  for (Element e = 0; e < out.size; ++e) aux.insert({e, root});

  ElementSet full(static_cast<size_t>(out.size));
  full.set();
  ElementSet interior = full;
  if (D >= 1) interior.reset(static_cast<size_t>(g.id(D - 1, 0, 0)));
  for (int n = 0; n <= D; ++n) interior.reset(static_cast<size_t>(g.id(n, D, 0)));
  GridExtension ext{out, g, std::vector<ElementSet>(9, full)};
  ext.checkSets[3] = interior;
  return ext;
}

Tbox tbox_triangle(const DominoSystem& d) {
  using namespace cpt;
  validate_octant_system(d);
  int N = static_cast<int>(d.tiles.size());
  auto r1 = re("r"), s1 = re("s"), aux = re("aux");
  auto In = atom("In"), InBar = atom("InBar"), Cur = atom("Cur"), Prev = atom("Prev");
  auto C = [&](size_t t) { return atom(tile_concept(d.tiles[t])); };
  auto W = C(static_cast<size_t>(all_white_index(d)));
  auto outerAll = [&](int k, const Concept& x) { return nested(false, s1, InBar, k, x); };
  auto outerSome = [&](int k, const Concept& x) { return nested(true, s1, InBar, k, x); };

  std::vector<Concept> ax;
  ax.push_back(conj(exists(aux, top()),
                    forall(aux, nested(true, r1, InBar, N - 1,
                                       exists(r1, conj({In, W, exists(r1, conj(In, neg(W)))}))))));
  ax.push_back(conj(iff(InBar, neg(In)), iff(atom("PrevBar"), neg(Prev))));
  {
    std::vector<Concept> some, one;
    for (size_t t = 0; t < d.tiles.size(); ++t) {
      some.push_back(C(t));
      std::vector<Concept> parts{C(t)};
      for (size_t u = 0; u < d.tiles.size(); ++u)
        if (u != t) parts.push_back(neg(C(u)));
      one.push_back(conj(parts));
    }
    ax.push_back(conj(implies(disj(some), In), implies(In, disj(one))));
  }
  ax.push_back(conj(forall(r1, implies(In, exists(r1, In))), implies(In, exists(s1, In))));
  ax.push_back(implies(In, outerSome(N, top())));
  {
    std::vector<Concept> parts;
    for (int k = 1; k <= N; ++k) {
      std::vector<Concept> rhs{outerAll(k, Cur)};
      for (int l = 1; l <= N; ++l)
        if (l != k) rhs.push_back(outerAll(l, neg(Cur)));
      parts.push_back(implies(C(static_cast<size_t>(k - 1)), conj(rhs)));
    }
    ax.push_back(conj(parts));
  }
  {
    std::vector<Concept> alts;
    for (int k = 1; k <= N; ++k) {
      std::vector<Concept> parts{outerAll(k, Prev)};
      for (int l = 1; l <= N; ++l)
        if (l != k) parts.push_back(outerAll(l, neg(Prev)));
      alts.push_back(conj(parts));
    }
    ax.push_back(disj(alts));
  }
  {
    std::vector<Concept> parts;
    for (size_t t = 0; t < d.tiles.size(); ++t) {
      std::vector<Concept> bad;
      for (size_t u = 0; u < d.tiles.size(); ++u)
        if (!v_compatible(d.tiles[t], d.tiles[u])) bad.push_back(neg(exists(s1, C(u))));
      parts.push_back(implies(C(t), conj(bad)));
    }
    ax.push_back(conj(parts));
  }
  {
    std::vector<Concept> parts;
    for (size_t t = 0; t < d.tiles.size(); ++t) {
      std::vector<Concept> bad;
      for (int l = 1; l <= N; ++l)
        if (!h_compatible(d.tiles[static_cast<size_t>(l - 1)], d.tiles[t])) bad.push_back(neg(outerSome(l, Prev)));
      parts.push_back(implies(C(t), conj(bad)));
    }
    ax.push_back(conj(parts));
  }
  Tbox tb;
  for (auto& c : ax) tb.gcis.push_back({top(), c});
  return tb;
}

Cq q_triangle(const DominoSystem& d) {
  validate_octant_system(d);
  using A = QueryAtom;
  auto rStar = re("r*"), sStar = re("s*");
  Cq q;
  q.add(A::role_atom("r", "u1", "u2"));
  q.add(A::lang_atom(rStar, "u2", "x1"));
  q.add(A::role_atom("r", "x1", "x2"));
  // Anchored at x1 rather than x2 so that the m = 0 column is reachable.
  q.add(A::lang_atom(rStar, "x1", "y1"));
  q.add(A::role_atom("r", "y1", "y2"));
  q.add(A::concept_atom("Cur", "v1"));
  q.add(A::concept_atom("PrevBar", "v2"));
  for (const char* i : {"1", "2"}) {
    std::string I(i);
    q.add(A::lang_atom(sStar, "y" + I, "z" + I));
    q.add(A::concept_atom("In", "z" + I));
    q.add(A::role_atom("s", "z" + I, "w" + I));
    q.add(A::concept_atom("InBar", "w" + I));
    q.add(A::lang_atom(sStar, "w" + I, "v" + I));
    q.add(A::lang_atom(LangExpr::rnsn("r", "s"), "x" + I, "z" + I));
    q.add(A::lang_atom(LangExpr::rnsn("r", "s"), "u" + I, "v" + I));
  }
  return q;
}

Vpa ldru_vpa() {
  Vpa a;
  a.alphabet = PushdownAlphabet({"s^-"}, {"r", "Cur?", "In?", "InBar?", "PrevBar?"}, {"s"});
  StateId q0 = a.addState("0"), q1 = a.addState("1"), q2p = a.addState("2'"), q2 = a.addState("2"),
          q3 = a.addState("3"), q4 = a.addState("4"), q5 = a.addState("5"), q6 = a.addState("6"),
          q7 = a.addState("7"), q8 = a.addState("8"), q9 = a.addState("9"), q10 = a.addState("10"),
          q9z = a.addState("9z"), q10z = a.addState("10z"), q11 = a.addState("11");
  StackSym A0 = a.addStackSymbol("A0"), sa = a.addStackSymbol("a"), sb = a.addStackSymbol("b");
  a.initial = {q0};
  a.final = {q11};
  a.internals = {{q0, "Cur?", q1},   {q1, "InBar?", q2p}, {q3, "InBar?", q2}, {q3, "In?", q4},
                 {q5, "In?", q4},    {q4, "r", q6},       {q6, "In?", q7},    {q8, "In?", q7},
                 {q9, "InBar?", q10}, {q9z, "InBar?", q10z}, {q10z, "PrevBar?", q11}};
  a.calls = {{q2p, "s^-", q3, A0}, {q2, "s^-", q3, sa}, {q4, "s^-", q5, sb}};
  a.returns = {{q7, "s", sb, q8}, {q7, "s", sa, q9}, {q7, "s", A0, q9z}, {q10, "s", sa, q9}, {q10, "s", A0, q9z}};
  a.normalize();
  a.validate();
  return a;
}

Cq q_2vpq(const DominoSystem& d) {
  validate_octant_system(d);
  Cq q;
  q.add(QueryAtom::lang_atom(LangExpr::ldru(), "x", "y"));
  return q;
}

}  // namespace vplc
