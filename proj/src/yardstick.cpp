#include <algorithm>

#include "gadget_util.hpp"
#include "vplc/error.hpp"
#include "vplc/reach.hpp"
#include "vplc/reductions.hpp"

namespace vplc {

using namespace gadget;

std::vector<std::string> tile_names(const DominoSystem& d) {
  std::vector<std::string> out;
  for (const auto& t : d.tiles) out.push_back(t.name);
  return out;
}

Interpretation yardstick(const std::vector<std::string>& tiles, int n) {
  if (n < 1) throw Error("yardstick length must be at least 1");
  if (tiles.empty()) throw Error("yardstick needs at least one tile");
  int T = static_cast<int>(tiles.size());
  auto cell = [&](int i, int t) { return n + 1 + t * n + i; };
  Interpretation y;
  y.size = n + 1 + T * n;
  auto& r = y.roles["r"];
  auto& s = y.roles["s"];
  for (int i = 0; i < n; ++i) r.insert({i, i + 1});
  for (int t = 0; t < T; ++t) {
    s.insert({n, cell(0, t)});
    for (int i = 0; i + 1 < n; ++i) s.insert({cell(i, t), cell(i + 1, t)});
  }
  y.individuals["st"] = 0;
  y.individuals["md"] = n;
  for (int t = 0; t < T; ++t) {
    y.individuals["md_" + tiles[static_cast<size_t>(t)]] = cell(0, t);
    y.individuals["end_" + tiles[static_cast<size_t>(t)]] = cell(n - 1, t);
  }
  return y;
}

namespace {

struct StickNames {
  Element st, md;
  std::vector<Element> mdT, endT;
  std::vector<Element> all() const {
    std::vector<Element> out{st, md};
    out.insert(out.end(), mdT.begin(), mdT.end());
    out.insert(out.end(), endT.begin(), endT.end());
    return out;
  }
};

StickNames stick_names(const Interpretation& i, const std::vector<std::string>& tiles) {
  StickNames n{individual(i, "st"), individual(i, "md"), {}, {}};
  for (const auto& t : tiles) {
    n.mdT.push_back(individual(i, "md_" + t));
    n.endT.push_back(individual(i, "end_" + t));
  }
  return n;
}

}  // namespace

GadgetReport check_yardstick(const Interpretation& i, const std::vector<std::string>& tiles) {
  GadgetReport rep;
  auto nm = stick_names(i, tiles);
  Adj R = successors(i, {"r"}), S = successors(i, {"s"}), RS = successors(i, {"r", "s"});
  auto sz = [](Element e) { return static_cast<size_t>(e); };
  auto named = nm.all();

  ElementSet fromSt = star(RS, nm.st);
  // md_t and end_t of the same tile are the same element when the length is 1.
  std::vector<std::pair<Element, std::string>> tagged{{nm.st, "st"}, {nm.md, "md"}};
  for (size_t t = 0; t < tiles.size(); ++t) tagged.push_back({nm.mdT[t], tiles[t]});
  for (size_t t = 0; t < tiles.size(); ++t) tagged.push_back({nm.endT[t], tiles[t]});
  bool nom = std::all_of(named.begin(), named.end(), [&](Element e) { return fromSt.test(sz(e)); });
  for (size_t a = 0; a < tagged.size(); ++a)
    for (size_t b = a + 1; b < tagged.size(); ++b) {
      bool pairOk = a >= 2 && b == a + tiles.size() && tagged[a].second == tagged[b].second;
      if (tagged[a].first == tagged[b].first && !pairOk) nom = false;
    }
  rep.conditions.push_back(cond("YNom", nom, "named elements coincide or are unreachable from st"));

  bool noLoop = std::none_of(named.begin(), named.end(), [&](Element e) { return plus(RS, e).test(sz(e)); });
  rep.conditions.push_back(cond("YNoLoop", noLoop, "a named element lies on an (r+s)-cycle"));

  ElementSet alongR = star(R, nm.st);
  bool mid = alongR.test(sz(nm.md)) && !S[sz(nm.md)].empty();
  for (auto e = alongR.find_first(); e != ElementSet::npos && mid; e = alongR.find_next(e))
    if (static_cast<Element>(e) != nm.md && !S[e].empty()) mid = false;
  rep.conditions.push_back(cond("YMid", mid, "md is not the only element with an s-successor on the r-chain"));

  std::set<Element> mds(nm.mdT.begin(), nm.mdT.end());
  rep.conditions.push_back(cond("YSuccOfMid", succ_set(S, nm.md) == mds, "s-successors of md differ from md_t"));

  bool reachT = true;
  for (size_t t = 0; t < tiles.size() && reachT; ++t) {
    ElementSet down = star(S, nm.mdT[t]);
    for (size_t u = 0; u < tiles.size(); ++u)
      if (down.test(sz(nm.endT[u])) != (u == t)) reachT = false;
  }
  rep.conditions.push_back(cond("YReachMidT", reachT, "md_t does not reach exactly end_t along s"));

  auto reach = rnsn_plus(i);
  std::set<Element> ends(nm.endT.begin(), nm.endT.end());
  auto hit = to_vector(reach[sz(nm.st)]);
  rep.conditions.push_back(cond("YEqDst", std::set<Element>(hit.begin(), hit.end()) == ends,
                                "st does not reach exactly the end_t by r^n s^n"));

  bool noEq = true;
  ElementSet later = plus(RS, nm.st);
  for (auto e = later.find_first(); e != ElementSet::npos && noEq; e = later.find_next(e))
    for (Element f : ends)
      if (reach[e].test(sz(f))) noEq = false;
  rep.conditions.push_back(cond("YNoEqDst", noEq, "an element after st reaches some end_t by r^n s^n"));
  return rep;
}

std::optional<int> yardstick_length(const Interpretation& i, const std::vector<std::string>& tiles) {
  if (!check_yardstick(i, tiles).pass()) return std::nullopt;
  auto nm = stick_names(i, tiles);
  auto res = l_reachable_pairs(i, SymbolBinding{}, rnsn_vpa("r", "s"), std::vector<Element>{nm.st}, true);
  auto it = res.witnesses.find({nm.st, nm.endT.front()});
  if (it == res.witnesses.end()) return std::nullopt;
  return static_cast<int>(std::count(it->second.word.begin(), it->second.word.end(), Symbol("r")));
}

Concept yardstick_concept(const std::vector<std::string>& tiles) {
  using namespace cpt;
  auto rsStar = re("(r+s)*"), rsPlus = re("(r+s)^+"), rStar = re("r*"), s1 = re("s"), sStar = re("s*");
  std::vector<std::string> names{"st", "md"};
  for (const auto& t : tiles) names.push_back("md_" + t);
  for (const auto& t : tiles) names.push_back("end_" + t);

  std::vector<Concept> nom;
  for (size_t a = 0; a < names.size(); ++a) {
    if (names[a] != "st") nom.push_back(exists(rsStar, nominal(names[a])));
    for (size_t b = a + 1; b < names.size(); ++b) {
      if (b == a + tiles.size() && names[a].rfind("md_", 0) == 0) continue;
      nom.push_back(forall(rsStar, implies(nominal(names[a]), neg(nominal(names[b])))));
    }
  }
  // st itself must differ from every other name.
  for (size_t b = 1; b < names.size(); ++b) nom.push_back(neg(nominal(names[b])));
  nom.push_back(nominal("st"));

  std::vector<Concept> noLoop;
  for (const auto& a : names) noLoop.push_back(forall(rsStar, implies(nominal(a), neg(exists(rsPlus, nominal(a))))));

  Concept mid = forall(rStar, iff(exists(s1, top()), nominal("md")));
  mid = conj(mid, exists(rStar, nominal("md")));

  std::vector<Concept> mdSucc, mdAlts;
  for (const auto& t : tiles) {
    mdSucc.push_back(exists(s1, nominal("md_" + t)));
    mdAlts.push_back(nominal("md_" + t));
  }
  Concept succOfMid = forall(rsStar, implies(nominal("md"), conj(conj(mdSucc), forall(s1, disj(mdAlts)))));

  std::vector<Concept> reachT;
  for (const auto& t : tiles) {
    std::vector<Concept> parts{exists(sStar, nominal("end_" + t))};
    for (const auto& u : tiles)
      if (u != t) parts.push_back(forall(sStar, neg(nominal("end_" + u))));
    reachT.push_back(forall(rsStar, implies(nominal("md_" + t), conj(parts))));
  }

  std::vector<Concept> eq, noEq, ends;
  for (const auto& t : tiles) {
    eq.push_back(ex_rnsn_plus(nominal("end_" + t)));
    ends.push_back(nominal("end_" + t));
    noEq.push_back(forall(rsPlus, all_rnsn_plus(neg(nominal("end_" + t)))));
  }
  eq.push_back(all_rnsn_plus(disj(ends)));
  return conj({conj(nom), conj(noLoop), mid, succOfMid, conj(reachT), conj(eq), conj(noEq)});
}

}  // namespace vplc
