#include <algorithm>

#include "gadget_util.hpp"
#include "vplc/error.hpp"
#include "vplc/reach.hpp"
#include "vplc/reductions.hpp"

namespace vplc {

using namespace gadget;

Interpretation metricobra(const Interpretation& snake, const Interpretation& stick, const DominoSystem& d) {
  auto names = tile_names(d);
  auto srep = check_snake(snake, d);
  if (!srep.pass()) throw Error("not a snake:\n" + srep.summary());
  auto len = yardstick_length(stick, names);
  if (!len) throw Error("not a yardstick");
  if (*len != *srep.length)
    throw Error("yardstick length " + std::to_string(*len) + " differs from snake length " + std::to_string(*srep.length));

  Interpretation m;
  int off = snake.size;
  Element cbra = snake.size + stick.size;
  m.size = cbra + 1;
  m.concepts = snake.concepts;
  for (const auto& [a, ext] : stick.concepts)
    for (Element e : ext) m.concepts[a].insert(e + off);
  m.roles["r"];
  m.roles["s"];
  for (const auto& [r, ext] : snake.roles) m.roles[r].insert(ext.begin(), ext.end());
  for (const auto& [r, ext] : stick.roles)
    for (const auto& [a, b] : ext) m.roles[r].insert({a + off, b + off});
  m.individuals = snake.individuals;
  for (const auto& [a, e] : stick.individuals) {
    if (m.individuals.count(a)) throw Error("individual " + a + " named in both parts");
    m.individuals[a] = e + off;
  }
  m.individuals["cbra"] = cbra;

  m.roles["r"].insert({cbra, m.individuals.at("ld")});
  m.roles["s"].insert({cbra, m.individuals.at("st")});
  for (const auto& t : d.tiles) {
    Element md = m.individuals.at("md_" + t.name);
    for (Element e : snake.concepts.at(tile_concept(t))) m.roles["s"].insert({e, md});
  }
  return m;
}

GadgetReport check_metricobra(const Interpretation& i, const DominoSystem& d) {
  GadgetReport rep;
  auto names = tile_names(d);
  Element cbra = individual(i, "cbra"), ld = individual(i, "ld"), st = individual(i, "st"), rd = individual(i, "rd");
  std::vector<Element> mdT, endT;
  for (const auto& t : names) {
    mdT.push_back(individual(i, "md_" + t));
    endT.push_back(individual(i, "end_" + t));
  }
  Adj R = successors(i, {"r"}), S = successors(i, {"s"});
  auto sz = [](Element e) { return static_cast<size_t>(e); };

  auto srep = check_snake(i, d);
  auto yrep = check_yardstick(i, names);
  bool init = is_pseudosnake(srep) && yrep.pass() && succ_set(R, cbra) == std::set<Element>{ld} &&
              succ_set(S, cbra) == std::set<Element>{st} && ld != st;
  std::string initDetail;
  if (!is_pseudosnake(srep)) initDetail = "no pseudosnake";
  else if (!yrep.pass()) initDetail = "no yardstick";
  else initDetail = "cbra is not wired to ld and st";
  rep.conditions.push_back(cond("MInit", init, initDetail));

  ElementSet body = plus(R, cbra);
  std::string tile;
  for (auto e = body.find_first(); e != ElementSet::npos && tile.empty(); e = body.find_next(e))
    for (size_t t = 0; t < d.tiles.size(); ++t) {
      bool carries = concept_ext(i, tile_concept(d.tiles[t])).count(static_cast<Element>(e)) > 0;
      bool linked = succ_set(S, static_cast<Element>(e)) == std::set<Element>{mdT[t]};
      if (carries != linked) {
        tile = "element " + std::to_string(e) + " and md_" + names[t];
        break;
      }
    }
  rep.conditions.push_back(cond("MTile", tile.empty(), tile));

  auto reach = rnsn_plus(i);
  const auto& fromCbra = reach[sz(cbra)];
  std::string sync;
  if (body.test(sz(rd)))
    for (size_t t = 0; t < d.tiles.size() && sync.empty(); ++t) {
      if (!concept_ext(i, tile_concept(d.tiles[t])).count(rd)) continue;
      for (size_t u = 0; u < d.tiles.size(); ++u)
        if (fromCbra.test(sz(endT[u])) != (u == t)) sync = "cbra does not reach exactly end_" + names[t];
      for (auto e = fromCbra.find_first(); e != ElementSet::npos && sync.empty(); e = fromCbra.find_next(e))
        if (plus(S, static_cast<Element>(e)).test(sz(endT[t]))) sync = "end_" + names[t] + " is reached too late";
      for (auto e = body.find_first(); e != ElementSet::npos && sync.empty(); e = body.find_next(e))
        if (reach[e].test(sz(endT[t]))) sync = "element " + std::to_string(e) + " reaches end_" + names[t];
    }
  rep.conditions.push_back(cond("MSync", sync.empty(), sync));

  std::string verti;
  for (auto e = body.find_first(); e != ElementSet::npos && verti.empty(); e = body.find_next(e))
    for (int t : tiles_at(i, d, static_cast<Element>(e))) {
      const Tile& tt = d.tiles[static_cast<size_t>(t)];
      if (tt.up() == d.white) continue;
      bool ok = false;
      for (size_t u = 0; u < d.tiles.size() && !ok; ++u) {
        const Tile& uu = d.tiles[u];
        if (!v_compatible(tt, uu) || (tt.left() == d.white) != (uu.left() == d.white) ||
            (tt.right() == d.white) != (uu.right() == d.white))
          continue;
        ok = true;
        for (size_t v = 0; v < d.tiles.size() && ok; ++v)
          if (reach[e].test(sz(endT[v])) != (v == u)) ok = false;
      }
      if (!ok) {
        verti = "element " + std::to_string(e) + " has no synchronised upper tile";
        break;
      }
    }
  rep.conditions.push_back(cond("MVerti", verti.empty(), verti));
  return rep;
}

Concept metricobra_concept(const DominoSystem& d) {
  using namespace cpt;
  auto names = tile_names(d);
  auto r1 = re("r"), s1 = re("s"), rPlus = re("r^+"), sPlus = re("s^+");

  Concept init = conj({exists(r1, pseudosnake_concept(d)), exists(s1, yardstick_concept(names)),
                       forall(r1, conj(nominal("ld"), neg(nominal("st")))),
                       forall(s1, conj(neg(nominal("ld")), nominal("st")))});

  std::vector<Concept> tileParts;
  for (const auto& t : names)
    tileParts.push_back(iff(atom("C_" + t), conj(exists(s1, nominal("md_" + t)), forall(s1, nominal("md_" + t)))));
  Concept tile = forall(rPlus, conj(tileParts));

  std::vector<Concept> syncParts;
  for (const auto& t : names) {
    std::vector<Concept> exact{ex_rnsn_plus(nominal("end_" + t))};
    for (const auto& u : names)
      if (u != t) exact.push_back(all_rnsn_plus(neg(nominal("end_" + u))));
    Concept rhs = conj({conj(exact), all_rnsn_plus(neg(exists(sPlus, nominal("end_" + t)))),
                        forall(rPlus, all_rnsn_plus(neg(nominal("end_" + t))))});
    syncParts.push_back(implies(exists(rPlus, conj(nominal("rd"), atom("C_" + t))), rhs));
  }

  std::vector<Concept> vertiParts;
  for (const auto& tt : d.tiles) {
    if (tt.up() == d.white) continue;
    std::vector<Concept> alts;
    for (const auto& uu : d.tiles) {
      if (!v_compatible(tt, uu) || (tt.left() == d.white) != (uu.left() == d.white) ||
          (tt.right() == d.white) != (uu.right() == d.white))
        continue;
      std::vector<Concept> exact{ex_rnsn_plus(nominal("end_" + uu.name))};
      for (const auto& v : names)
        if (v != uu.name) exact.push_back(all_rnsn_plus(neg(nominal("end_" + v))));
      alts.push_back(conj(exact));
    }
    vertiParts.push_back(implies(atom(tile_concept(tt)), disj(alts)));
  }
  return conj({nominal("cbra"), init, tile, conj(syncParts), forall(rPlus, conj(vertiParts))});
}

}  // namespace vplc
