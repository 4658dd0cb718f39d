#include <algorithm>
#include <sstream>

#include "gadget_util.hpp"
#include "vplc/error.hpp"
#include "vplc/reductions.hpp"

namespace vplc {

using namespace gadget;

bool GadgetReport::holds(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return c.holds;
  throw Error("unknown condition " + name);
}

bool GadgetReport::all_of(const std::vector<std::string>& names) const {
  return std::all_of(names.begin(), names.end(), [&](const std::string& n) { return holds(n); });
}

bool GadgetReport::pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const Condition& c) { return c.holds; });
}

std::string GadgetReport::summary() const {
  std::ostringstream out;
  for (const auto& c : conditions) {
    out << c.name << ' ' << (c.holds ? "ok" : "FAIL");
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
  }
  if (length) out << "length " << *length << '\n';
  return out.str();
}

std::string tile_concept(const Tile& t) { return "C_" + t.name; }

namespace {

const std::vector<std::string> kCorners = {"ld", "rd", "lu", "ru"};

bool is_white(const DominoSystem& d, const std::string& c) { return c == d.white; }

// t' may follow t along the snake.
bool hori_ok(const DominoSystem& d, const Tile& t, const Tile& u) {
  if (!h_compatible(t, u)) return false;
  if (is_white(d, t.down()) && (!is_white(d, t.right()) != is_white(d, u.down()))) return false;
  if (is_white(d, t.up()) && !is_white(d, u.up())) return false;
  return true;
}

bool verti_ok(const DominoSystem& d, const Tile& t, const Tile& u) {
  return v_compatible(t, u) && is_white(d, t.left()) == is_white(d, u.left()) &&
         is_white(d, t.right()) == is_white(d, u.right());
}

// Tile indices with white on both given sides (indices into l, d, r, u).
std::vector<int> corner_tiles(const DominoSystem& d, int s1, int s2) {
  std::vector<int> out;
  for (size_t t = 0; t < d.tiles.size(); ++t)
    if (is_white(d, d.tiles[t].sides[static_cast<size_t>(s1)]) &&
        is_white(d, d.tiles[t].sides[static_cast<size_t>(s2)]))
      out.push_back(static_cast<int>(t));
  return out;
}

bool carries_any(const Interpretation& i, const DominoSystem& d, Element e, const std::vector<int>& ts) {
  for (int t : ts)
    if (concept_ext(i, tile_concept(d.tiles[static_cast<size_t>(t)])).count(e)) return true;
  return false;
}

Concept tile_disj(const DominoSystem& d, const std::vector<int>& ts) {
  std::vector<Concept> cs;
  for (int t : ts) cs.push_back(cpt::atom(tile_concept(d.tiles[static_cast<size_t>(t)])));
  return cpt::disj(cs);
}

std::string el(Element e) { return std::to_string(e); }

}  // namespace

Interpretation snake_from_cover(const DominoSystem& d, const RectCover& c) {
  auto rep = check_rect_cover(d, c);
  if (!rep.pass) throw Error("not a cover: " + rep.firstViolation);
  Interpretation i;
  i.size = c.n * c.m;
  auto& r = i.roles["r"];
  for (Element e = 0; e + 1 < i.size; ++e) r.insert({e, e + 1});
  for (const auto& t : d.tiles) i.concepts[tile_concept(t)];
  for (int k = 0; k < i.size; ++k) i.concepts[tile_concept(d.tiles[static_cast<size_t>(c.cells[static_cast<size_t>(k)])])].insert(k);
  i.individuals = {{"ld", 0}, {"rd", c.n - 1}, {"lu", (c.m - 1) * c.n}, {"ru", c.n * c.m - 1}};
  return i;
}

GadgetReport check_snake(const Interpretation& i, const DominoSystem& d) {
  GadgetReport rep;
  Element ld = individual(i, "ld"), rd = individual(i, "rd"), lu = individual(i, "lu"), ru = individual(i, "ru");
  std::vector<Element> named{ld, rd, lu, ru};
  for (const auto& t : d.tiles) concept_ext(i, tile_concept(t));
  Adj R = successors(i, {"r"});
  ElementSet fromLd = star(R, ld);
  auto sz = [](Element e) { return static_cast<size_t>(e); };

  bool path = plus(R, ld).test(sz(rd)) && plus(R, rd).test(sz(lu)) && plus(R, lu).test(sz(ru));
  rep.conditions.push_back(cond("SPath", path, "ld, rd, lu, ru are not r+-chained"));

  std::string loopAt;
  for (size_t k = 0; k < named.size(); ++k)
    if (plus(R, named[k]).test(sz(named[k]))) loopAt = kCorners[k];
  rep.conditions.push_back(cond("SNoLoop", loopAt.empty(), loopAt + " lies on an r-cycle"));

  std::string uniq;
  for (auto e = fromLd.find_first(); e != ElementSet::npos && uniq.empty(); e = fromLd.find_next(e))
    if (tiles_at(i, d, static_cast<Element>(e)).size() != 1) uniq = "element " + std::to_string(e);
  rep.conditions.push_back(cond("SUniqTil", uniq.empty(), uniq + " does not carry exactly one tile"));

  std::vector<int> twoWhite;
  for (size_t t = 0; t < d.tiles.size(); ++t)
    if (d.white_sides(static_cast<int>(t)) == 2) twoWhite.push_back(static_cast<int>(t));
  std::string spec;
  if (!carries_any(i, d, ld, corner_tiles(d, 0, 1))) spec = "ld is not a left-down corner";
  else if (!fromLd.test(sz(rd)) || !carries_any(i, d, rd, corner_tiles(d, 1, 2))) spec = "rd is not a reachable right-down corner";
  else if (!fromLd.test(sz(lu)) || !carries_any(i, d, lu, corner_tiles(d, 0, 3))) spec = "lu is not a reachable left-up corner";
  else if (!fromLd.test(sz(ru)) || !carries_any(i, d, ru, corner_tiles(d, 2, 3))) spec = "ru is not a reachable right-up corner";
  for (auto e = fromLd.find_first(); e != ElementSet::npos && spec.empty(); e = fromLd.find_next(e)) {
    bool isNamed = std::find(named.begin(), named.end(), static_cast<Element>(e)) != named.end();
    if (isNamed != carries_any(i, d, static_cast<Element>(e), twoWhite))
      spec = "element " + std::to_string(e) + (isNamed ? " is named without a corner tile" : " carries a corner tile");
  }
  rep.conditions.push_back(cond("SSpecTil", spec.empty(), spec));

  std::string hori;
  for (auto e = fromLd.find_first(); e != ElementSet::npos && hori.empty(); e = fromLd.find_next(e)) {
    if (static_cast<Element>(e) == ru) continue;
    const auto& next = R[e];
    for (int t : tiles_at(i, d, static_cast<Element>(e))) {
      bool ok = false;
      if (!next.empty())
        for (size_t u = 0; u < d.tiles.size() && !ok; ++u) {
          if (!hori_ok(d, d.tiles[static_cast<size_t>(t)], d.tiles[u])) continue;
          const auto& ext = concept_ext(i, tile_concept(d.tiles[u]));
          ok = std::all_of(next.begin(), next.end(), [&](Element f) { return ext.count(f) > 0; });
        }
      if (!ok) {
        hori = "element " + el(static_cast<Element>(e)) + " has no fitting right neighbour";
        break;
      }
    }
  }
  rep.conditions.push_back(cond("SHori", hori.empty(), hori));

  // Paths ld -> rd: every vertex both reachable from ld and reaching rd.
  ElementSet toRd = star(reversed(R), rd);
  ElementSet onPath = fromLd & toRd;
  bool cyclic = false;
  for (auto e = onPath.find_first(); e != ElementSet::npos && !cyclic; e = onPath.find_next(e))
    cyclic = plus(R, static_cast<Element>(e)).test(e);
  std::string lenDetail;
  if (cyclic) {
    lenDetail = "a path from ld to rd meets a cycle";
  } else if (!onPath.test(sz(ld)) || ld == rd) {
    lenDetail = "no r+-path from ld to rd";
  } else {
    // Acyclic: path-length sets by dynamic programming in topological order.
    size_t n = static_cast<size_t>(i.size);
    std::vector<ElementSet> lens(n, ElementSet(n + 1));
    std::vector<int> indeg(n, 0);
    for (auto e = onPath.find_first(); e != ElementSet::npos; e = onPath.find_next(e))
      for (Element f : R[e])
        if (onPath.test(sz(f))) ++indeg[sz(f)];
    std::vector<Element> order;
    for (auto e = onPath.find_first(); e != ElementSet::npos; e = onPath.find_next(e))
      if (indeg[e] == 0) order.push_back(static_cast<Element>(e));
    lens[sz(ld)].set(0);
    for (size_t k = 0; k < order.size(); ++k) {
      Element e = order[k];
      for (Element f : R[sz(e)]) {
        if (!onPath.test(sz(f))) continue;
        lens[sz(f)] |= (lens[sz(e)] << 1);
        if (--indeg[sz(f)] == 0) order.push_back(f);
      }
    }
    const auto& l = lens[sz(rd)];
    if (l.count() != 1) {
      lenDetail = "paths from ld to rd have " + std::to_string(l.count()) + " distinct lengths";
    } else {
      int L = static_cast<int>(l.find_first());
      ElementSet atL = exactly(R, ld, L);
      if (atL.count() != 1 || !atL.test(sz(rd)))
        lenDetail = "rd is not the only element at distance " + std::to_string(L);
      else
        rep.length = L + 1;
    }
  }
  rep.conditions.push_back(cond("SLen", rep.length.has_value(), lenDetail));

  std::string verti;
  if (!rep.length) {
    verti = "no length";
  } else {
    int N = *rep.length;
    for (auto e = fromLd.find_first(); e != ElementSet::npos && verti.empty(); e = fromLd.find_next(e)) {
      ElementSet above = exactly(R, static_cast<Element>(e), N);
      for (int t : tiles_at(i, d, static_cast<Element>(e))) {
        const Tile& tt = d.tiles[static_cast<size_t>(t)];
        if (is_white(d, tt.up())) continue;
        bool ok = false;
        for (size_t u = 0; u < d.tiles.size() && !ok; ++u) {
          if (!verti_ok(d, tt, d.tiles[u])) continue;
          const auto& ext = concept_ext(i, tile_concept(d.tiles[u]));
          ok = true;
          for (auto f = above.find_first(); f != ElementSet::npos && ok; f = above.find_next(f))
            ok = ext.count(static_cast<Element>(f)) > 0;
        }
        if (!ok) {
          verti = "element " + el(static_cast<Element>(e)) + " has no fitting upper neighbour";
          break;
        }
      }
    }
  }
  rep.conditions.push_back(cond("SVerti", verti.empty(), verti));
  return rep;
}

bool is_pseudosnake(const GadgetReport& r) { return r.all_of({"SPath", "SNoLoop", "SUniqTil", "SSpecTil", "SHori"}); }

Concept pseudosnake_concept(const DominoSystem& d) {
  using namespace cpt;
  auto rp = re("r^+"), rs = re("r*"), r1 = re("r");
  Concept path = exists(rp, conj(nominal("rd"), exists(rp, conj(nominal("lu"), exists(rp, nominal("ru"))))));

  std::vector<Concept> noLoop;
  for (const auto& a : kCorners) noLoop.push_back(forall(rs, implies(nominal(a), neg(exists(rp, nominal(a))))));

  std::vector<Concept> uniq;
  for (size_t t = 0; t < d.tiles.size(); ++t) {
    std::vector<Concept> parts{atom(tile_concept(d.tiles[t]))};
    for (size_t u = 0; u < d.tiles.size(); ++u)
      if (u != t) parts.push_back(neg(atom(tile_concept(d.tiles[u]))));
    uniq.push_back(conj(parts));
  }

  std::vector<int> twoWhite;
  for (size_t t = 0; t < d.tiles.size(); ++t)
    if (d.white_sides(static_cast<int>(t)) == 2) twoWhite.push_back(static_cast<int>(t));
  std::vector<Concept> noms;
  for (const auto& a : kCorners) noms.push_back(nominal(a));
  Concept spec = conj({conj(nominal("ld"), tile_disj(d, corner_tiles(d, 0, 1))),
                       exists(rs, conj(nominal("rd"), tile_disj(d, corner_tiles(d, 1, 2)))),
                       exists(rs, conj(nominal("lu"), tile_disj(d, corner_tiles(d, 0, 3)))),
                       exists(rs, conj(nominal("ru"), tile_disj(d, corner_tiles(d, 2, 3)))),
                       forall(rs, iff(disj(noms), tile_disj(d, twoWhite)))});

  std::vector<Concept> hori;
  for (const auto& t : d.tiles) {
    std::vector<Concept> nexts;
    for (const auto& u : d.tiles)
      if (hori_ok(d, t, u)) nexts.push_back(forall(r1, atom(tile_concept(u))));
    hori.push_back(forall(rs, implies(conj(neg(nominal("ru")), atom(tile_concept(t))),
                                      conj(exists(r1, top()), disj(nexts)))));
  }
  return conj({path, conj(noLoop), forall(rs, disj(uniq)), spec, conj(hori)});
}

}  // namespace vplc
