#include "vplc/suite.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "vplc/concepts.hpp"
#include "vplc/error.hpp"
#include "vplc/interp.hpp"
#include "vplc/queries.hpp"
#include "vplc/reductions.hpp"

namespace vplc {

bool SuiteReport::pass() const {
  return !lines.empty() && std::all_of(lines.begin(), lines.end(), [](const SuiteLine& l) { return l.pass; });
}

void SuiteReport::add(std::string name, bool pass, std::string detail) {
  lines.push_back({std::move(name), pass, std::move(detail)});
}

std::string SuiteReport::table() const {
  std::ostringstream out;
  for (const auto& l : lines) {
    out << (l.pass ? "pass " : "FAIL ") << l.name;
    if (!l.detail.empty()) out << "  [" << l.detail << "]";
    out << '\n';
  }
  return out.str();
}

// ---- fixtures ----

namespace {

const std::vector<Symbol> kAB = {"a", "b"};

Doca doca_anbn() {
  // a^n b^n, n >= 1; the counter holds n - 1.
  Doca d;
  d.alphabet = kAB;
  StateId p0 = d.addState("p0"), pa = d.addState("pa"), pb = d.addState("pb"), acc = d.addState("acc");
  d.initial = p0;
  d.final = {acc};
  d.moves[{p0, "a", true}] = {pa, 0};
  d.moves[{pa, "a", true}] = {pa, 1};
  d.moves[{pa, "a", false}] = {pa, 1};
  d.moves[{pa, "b", true}] = {acc, 0};
  d.moves[{pa, "b", false}] = {pb, -1};
  d.moves[{pb, "b", false}] = {pb, -1};
  d.moves[{pb, "b", true}] = {acc, 0};
  return d;
}

Doca doca_even_a() {
  Doca d;
  d.alphabet = kAB;
  StateId e = d.addState("even"), o = d.addState("odd");
  d.initial = e;
  d.final = {e};
  d.moves[{e, "a", true}] = {o, 0};
  d.moves[{o, "a", true}] = {e, 0};
  d.moves[{e, "b", true}] = {e, 0};
  d.moves[{o, "b", true}] = {o, 0};
  return d;
}

Doca doca_dyck() {
  // Non-empty balanced words, a opens and b closes.
  Doca d;
  d.alphabet = kAB;
  StateId s = d.addState("start"), in = d.addState("open"), bal = d.addState("bal");
  d.initial = s;
  d.final = {bal};
  d.moves[{s, "a", true}] = {in, 0};
  d.moves[{bal, "a", true}] = {in, 0};
  d.moves[{in, "a", true}] = {in, 1};
  d.moves[{in, "a", false}] = {in, 1};
  d.moves[{in, "b", true}] = {bal, 0};
  d.moves[{in, "b", false}] = {in, -1};
  return d;
}

Doca doca_ends_b() {
  Doca d;
  d.alphabet = kAB;
  StateId o = d.addState("other"), b = d.addState("b");
  d.initial = o;
  d.final = {b};
  for (StateId q : {o, b}) {
    d.moves[{q, "a", true}] = {o, 0};
    d.moves[{q, "b", true}] = {b, 0};
  }
  return d;
}

Doca doca_a_plus() {
  Doca d;
  d.alphabet = kAB;
  StateId s = d.addState("start"), a = d.addState("as");
  d.initial = s;
  d.final = {a};
  d.moves[{s, "a", true}] = {a, 0};
  d.moves[{a, "a", true}] = {a, 0};
  return d;
}

std::vector<Word> words_of_length(const std::vector<Symbol>& sigma, int len) {
  std::vector<Word> out{Word{}};
  for (int k = 0; k < len; ++k) {
    std::vector<Word> next;
    for (const auto& w : out)
      for (const auto& a : sigma) {
        Word v = w;
        v.push_back(a);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

Tile tile(const std::string& name, const std::string& l, const std::string& d, const std::string& r, const std::string& u) {
  return {name, {l, d, r, u}};
}

}  // namespace

std::vector<NamedDoca> sample_docas() {
  return {{"anbn", doca_anbn()}, {"even-a", doca_even_a()}, {"dyck", doca_dyck()}, {"ends-b", doca_ends_b()},
          {"a-plus", doca_a_plus()}};
}

std::vector<std::pair<NamedDoca, NamedDoca>> doca_pairs() {
  auto ds = sample_docas();
  auto get = [&](const std::string& n) {
    for (const auto& d : ds)
      if (d.name == n) return d;
    throw Error("no sample automaton " + n);
  };
  return {{get("anbn"), get("even-a")}, {get("anbn"), get("ends-b")}, {get("dyck"), get("anbn")},
          {get("even-a"), get("dyck")}, {get("a-plus"), get("ends-b")}, {get("anbn"), get("a-plus")}};
}

std::vector<DominoSystem> corner_systems(int maxTiles) {
  // A cover needs four distinct corner tiles; with no tile to spare it is 2x2 and the system
  // is fixed by which of its four inner edges share a colour.
  std::vector<DominoSystem> out;
  if (maxTiles < 4) return out;
  std::vector<int> rgs(4, 0);
  std::function<void(int, int)> gen = [&](int pos, int used) {
    if (pos == 4) {
      DominoSystem d;
      d.white = "w";
      d.colors = {"w"};
      for (int c = 0; c < used; ++c) d.colors.push_back("c" + std::to_string(c + 1));
      auto col = [&](int k) { return "c" + std::to_string(rgs[static_cast<size_t>(k)] + 1); };
      d.tiles = {tile("ld", "w", "w", col(0), col(1)), tile("rd", col(0), "w", "w", col(2)),
                 tile("lu", "w", col(1), col(3), "w"), tile("ru", col(3), col(2), "w", "w")};
      out.push_back(d);
      return;
    }
    for (int c = 0; c <= used && c < 4; ++c) {
      rgs[static_cast<size_t>(pos)] = c;
      gen(pos + 1, std::max(used, c + 1));
    }
  };
  gen(0, 0);
  return out;
}

DominoSystem twelve_tile_system() {
  DominoSystem d;
  d.white = "w";
  d.colors = {"w", "cyan", "rouge", "lime"};
  d.tiles = {tile("t1", "w", "w", "cyan", "rouge"),       tile("t2", "cyan", "w", "lime", "rouge"),
             tile("t3", "lime", "w", "rouge", "rouge"),   tile("t4", "rouge", "w", "w", "cyan"),
             tile("t5", "w", "rouge", "cyan", "lime"),    tile("t6", "cyan", "rouge", "cyan", "cyan"),
             tile("t7", "cyan", "rouge", "rouge", "cyan"), tile("t8", "rouge", "cyan", "w", "lime"),
             tile("t9", "w", "lime", "cyan", "w"),        tile("t10", "cyan", "cyan", "cyan", "w"),
             tile("t11", "cyan", "cyan", "lime", "w"),    tile("t12", "lime", "lime", "w", "w")};
  return d;
}

DominoSystem three_tile_octant_system() {
  DominoSystem d;
  d.white = "w";
  d.colors = {"w", "rouge"};
  d.tiles = {tile("t1", "w", "w", "w", "w"), tile("t2", "w", "rouge", "rouge", "w"),
             tile("t3", "rouge", "rouge", "rouge", "rouge")};
  return d;
}

DominoSystem five_tile_octant_system() {
  DominoSystem base;
  base.white = "w";
  base.colors = {"w", "p", "q", "x"};
  base.tiles = {tile("a", "p", "x", "q", "x"), tile("b", "q", "x", "p", "x")};
  return white_bordered_transform(base);
}

// ---- lemma batteries ----

SuiteReport lemma3_suite(const SuiteOptions& o) {
  SuiteReport rep;
  for (const auto& nd : sample_docas()) {
    Concept c = acceptance_concept(nd.doca, "Acc", kAB);
    int count = 0, bad = 0;
    std::string firstBad;
    for (int len = 1; len <= o.wordLen; ++len)
      for (const auto& w : words_of_length(kAB, len)) {
        auto p = decorate_metaword(build_metaword(w, kAB), nd.doca, "Acc");
        ++count;
        if (!check_pointed(p, c)) {
          if (!bad++) firstBad = print_word(w);
        }
      }
    rep.add("decorated metawords satisfy the acceptance concept (" + nd.name + ")", bad == 0,
            std::to_string(count) + " words" + (bad ? ", first failure " + firstBad : ""));
  }

  for (const auto& [n1, n2] : doca_pairs()) {
    const Doca& d1 = n1.doca;
    const Doca& d2 = n2.doca;
    Concept c1 = acceptance_concept(d1, "Acc1", kAB), c2 = acceptance_concept(d2, "Acc2", kAB);
    Concept both = intersection_concept(d1, "Acc1", d2, "Acc2", kAB);
    bool sat = false, nonEmpty = false, unique = true;
    std::string satWord, langWord;
    for (int len = 1; len <= o.bound; ++len)
      for (const auto& w : words_of_length(kAB, len)) {
        if (!nonEmpty && doca_accepts(d1, w) && doca_accepts(d2, w)) {
          nonEmpty = true;
          langWord = print_word(w);
        }
        auto p = build_metaword(w, kAB);
        p.interp.concepts["Acc1"];
        p.interp.concepts["Acc2"];
        auto expect1 = decorate_metaword(p, d1, "Acc1").interp.concepts["Acc1"];
        auto expect2 = decorate_metaword(p, d2, "Acc2").interp.concepts["Acc2"];
        Evaluator ev(p.interp);
        // Every decoration of the positions, for each automaton separately.
        std::vector<std::set<Element>> ok1, ok2;
        for (unsigned mask = 0; mask < (1u << len); ++mask) {
          std::set<Element> s;
          for (int k = 0; k < len; ++k)
            if (mask & (1u << k)) s.insert(k);
          ev.set_concept("Acc1", s);
          if (ev.extension(c1).test(0)) ok1.push_back(s);
          ev.set_concept("Acc2", s);
          if (ev.extension(c2).test(0)) ok2.push_back(s);
        }
        if (ok1 != std::vector<std::set<Element>>{expect1} || ok2 != std::vector<std::set<Element>>{expect2})
          unique = false;
        for (const auto& s1 : ok1)
          for (const auto& s2 : ok2) {
            ev.set_concept("Acc1", s1);
            ev.set_concept("Acc2", s2);
            if (ev.extension(both).test(0) && !sat) {
              sat = true;
              satWord = print_word(w);
            }
          }
      }
    std::string detail = std::string("satisfiable ") + (sat ? "yes (" + satWord + ")" : "no") + ", intersection " +
                         (nonEmpty ? "non-empty (" + langWord + ")" : "empty") + (unique ? "" : ", decoration not unique");
    rep.add("intersection concept at bound " + std::to_string(o.bound) + " (" + n1.name + " & " + n2.name + ")",
            sat == nonEmpty && unique, detail);
  }
  return rep;
}

namespace {

struct ExpectedMutant {
  Mutation m;
  std::string condition;  // empty: the whole check must fail
};

std::string join_fails(const GadgetReport& r) {
  std::string out;
  for (const auto& c : r.conditions)
    if (!c.holds) out += (out.empty() ? "" : ",") + c.name;
  return out.empty() ? "none" : out;
}

std::vector<ExpectedMutant> snake_mutants(const DominoSystem& d, const RectCover& c, std::mt19937_64& rng) {
  std::vector<ExpectedMutant> out;
  int n = c.n, size = c.n * c.m;
  Element ld = 0, rd = n - 1, lu = (c.m - 1) * n, ru = size - 1;
  std::set<Element> named{ld, rd, lu, ru};
  auto tileOf = [&](Element e) { return c.cells[static_cast<size_t>(e)]; };
  auto tc = [&](int t) { return tile_concept(d.tiles[static_cast<size_t>(t)]); };

  for (Element e = 0; e + 1 < size; ++e) out.push_back({Mutation::drop_edge("r", e, e + 1), "SPath"});
  out.push_back({Mutation::add_edge("r", ru, ld), "SNoLoop"});
  for (Element a : named) out.push_back({Mutation::add_edge("r", a, a), "SNoLoop"});
  for (Element e = 0; e < size; ++e) {
    std::vector<int> others;
    for (int t = 0; t < static_cast<int>(d.tiles.size()); ++t)
      if (t != tileOf(e)) others.push_back(t);
    int u = others[std::uniform_int_distribution<size_t>(0, others.size() - 1)(rng)];
    out.push_back({Mutation::flip(tc(u), e), "SUniqTil"});
  }
  // Each corner carries the tile of another corner.
  std::vector<Element> corners{ld, rd, lu, ru};
  for (size_t k = 0; k < 4; ++k)
    out.push_back({Mutation::retile(corners[k], tc(tileOf(corners[(k + 1) % 4]))), "SSpecTil"});
  for (Element e = 0; e < size; ++e)
    if (!named.count(e)) {
      out.push_back({Mutation::retile(e, tc(tileOf(rd))), "SSpecTil"});
      out.push_back({Mutation::move("rd", e), "SSpecTil"});
    }
  for (Element e = 0; e + 2 <= rd; ++e) out.push_back({Mutation::add_edge("r", e, e + 2), "SLen"});
  // Single-tile changes on inner elements that break a horizontal or a vertical neighbourhood.
  for (Element e = 1; e < size; ++e) {
    if (named.count(e)) continue;
    for (int u = 0; u < static_cast<int>(d.tiles.size()); ++u) {
      if (u == tileOf(e) || d.white_sides(u) == 2) continue;
      const Tile& prev = d.tiles[static_cast<size_t>(tileOf(e - 1))];
      const Tile& cand = d.tiles[static_cast<size_t>(u)];
      if (!h_compatible(prev, cand)) {
        out.push_back({Mutation::retile(e, tc(u)), "SHori"});
        break;
      }
    }
  }
  return out;
}

std::vector<ExpectedMutant> yardstick_mutants(const std::vector<std::string>& tiles, int N) {
  std::vector<ExpectedMutant> out;
  int T = static_cast<int>(tiles.size());
  auto cell = [&](int i, int t) { return N + 1 + t * N + i; };
  for (int t = 0; t < T; ++t) {
    for (int i = 0; i + 1 < N; ++i) out.push_back({Mutation::drop_edge("s", cell(i, t), cell(i + 1, t)), "YReachMidT"});
    out.push_back({Mutation::drop_edge("s", N, cell(0, t)), "YSuccOfMid"});
    out.push_back({Mutation::add_edge("r", cell(N - 1, t), 0), "YNoLoop"});
    out.push_back({Mutation::add_edge("s", 0, cell(0, t)), "YMid"});
    if (T > 1) out.push_back({Mutation::add_edge("s", cell(0, t), cell(N - 1, (t + 1) % T)), "YReachMidT"});
    if (N >= 2) out.push_back({Mutation::move("end_" + tiles[static_cast<size_t>(t)], cell(N - 2, t)), "YEqDst"});
  }
  for (int i = 0; i < N; ++i) out.push_back({Mutation::drop_edge("r", i, i + 1), "YNom"});
  return out;
}

bool pins(const Interpretation& i, const Concept& c, Element e) {
  auto ext = extension(i, c);
  return ext.count() == 1 && ext.test(static_cast<size_t>(e));
}

}  // namespace

SuiteReport lemma4_suite(const SuiteOptions& o) {
  SuiteReport rep;
  std::mt19937_64 rng(o.seed);
  auto systems = corner_systems(o.maxTiles);
  size_t enumerated = systems.size();
  systems.push_back(twelve_tile_system());

  int snakeOk = 0, conceptOk = 0, stickOk = 0, cobraOk = 0, pinOk = 0, withCover = 0;
  std::string snakeBad, conceptBad, stickBad, cobraBad, pinBad;
  for (size_t k = 0; k < systems.size(); ++k) {
    const auto& d = systems[k];
    std::string label = k < enumerated ? "corner system " + std::to_string(k + 1) : "twelve-tile system";
    auto cover = solve_rect(d, o.nMax, o.mMax);
    if (!cover) {
      rep.add("cover exists for " + label, false, "no cover within " + std::to_string(o.nMax) + "x" + std::to_string(o.mMax));
      continue;
    }
    ++withCover;
    auto names = tile_names(d);
    auto snake = snake_from_cover(d, *cover);
    auto srep = check_snake(snake, d);
    if (srep.pass() && srep.length == cover->n) ++snakeOk;
    else if (snakeBad.empty()) snakeBad = label + ": " + join_fails(srep);
    if (check_pointed({snake, snake.individuals.at("ld")}, pseudosnake_concept(d))) ++conceptOk;
    else if (conceptBad.empty()) conceptBad = label;

    bool sticks = true;
    Concept yc = yardstick_concept(names);
    for (int N = 1; N <= o.maxStick; ++N) {
      auto y = yardstick(names, N);
      bool ok = check_yardstick(y, names).pass() && yardstick_length(y, names) == N && pins(y, yc, y.individuals.at("st"));
      if (!ok && stickBad.empty()) stickBad = label + " N=" + std::to_string(N);
      sticks = sticks && ok;
    }
    if (sticks) ++stickOk;

    if (!srep.length) continue;
    auto cobra = metricobra(snake, yardstick(names, *srep.length), d);
    auto crep = check_metricobra(cobra, d);
    if (crep.pass() && check_snake(cobra, d).pass()) ++cobraOk;
    else if (cobraBad.empty()) cobraBad = label + ": " + join_fails(crep);
    if (pins(cobra, metricobra_concept(d), cobra.individuals.at("cbra"))) ++pinOk;
    else if (pinBad.empty()) pinBad = label;
  }
  int total = static_cast<int>(systems.size());
  auto frac = [&](int ok, const std::string& bad) {
    return std::to_string(ok) + "/" + std::to_string(total) + (bad.empty() ? "" : ", first failure " + bad);
  };
  rep.add("systems with at most " + std::to_string(o.maxTiles) + " tiles (by corner pattern) plus the twelve-tile system",
          withCover == total, std::to_string(enumerated) + " enumerated, " + std::to_string(withCover) + " covered");
  rep.add("snake builder passes check_snake", snakeOk == total, frac(snakeOk, snakeBad));
  rep.add("ld satisfies the snake concept", conceptOk == total, frac(conceptOk, conceptBad));
  rep.add("yardsticks up to length " + std::to_string(o.maxStick) + " pass with their length", stickOk == total,
          frac(stickOk, stickBad));
  rep.add("metricobra passes check_metricobra and check_snake", cobraOk == total, frac(cobraOk, cobraBad));
  rep.add("cobra concept extension is exactly cbra", pinOk == total, frac(pinOk, pinBad));

  // Mutants on the twelve-tile system, whose snake has inner elements.
  const auto d = twelve_tile_system();
  auto names = tile_names(d);
  auto cover = solve_rect(d, o.nMax, o.mMax);
  if (!cover) {
    rep.add("mutants", false, "twelve-tile system has no cover");
    return rep;
  }
  auto snake = snake_from_cover(d, *cover);
  int N = cover->n;

  auto smut = snake_mutants(d, *cover, rng);
  Concept sc = pseudosnake_concept(d);
  int sFlip = 0, sAgree = 0;
  std::string sBad, sAgreeBad;
  for (const auto& em : smut) {
    auto i = mutate(snake, em.m);
    auto r = check_snake(i, d);
    if (!r.holds(em.condition)) ++sFlip;
    else if (sBad.empty()) sBad = print_mutation(em.m);
    if (is_pseudosnake(r) == check_pointed({i, i.individuals.at("ld")}, sc)) ++sAgree;
    else if (sAgreeBad.empty()) sAgreeBad = print_mutation(em.m);
  }
  rep.add("snake mutants flip the expected condition", sFlip == static_cast<int>(smut.size()) && sFlip >= o.mutants,
          std::to_string(sFlip) + "/" + std::to_string(smut.size()) + (sBad.empty() ? "" : ", first miss " + sBad));
  rep.add("pseudosnake checker and concept agree on mutants", sAgree == static_cast<int>(smut.size()),
          std::to_string(sAgree) + "/" + std::to_string(smut.size()) +
              (sAgreeBad.empty() ? "" : ", first miss " + sAgreeBad));

  Concept yc = yardstick_concept(names);
  int yFlip = 0, yAgree = 0, yTotal = 0, yMin = -1;
  std::string yBad;
  for (int len = 1; len <= o.maxStick; ++len) {
    auto stick = yardstick(names, len);
    auto ymut = yardstick_mutants(names, len);
    yTotal += static_cast<int>(ymut.size());
    if (yMin < 0 || static_cast<int>(ymut.size()) < yMin) yMin = static_cast<int>(ymut.size());
    for (const auto& em : ymut) {
      auto y = mutate(stick, em.m);
      auto r = check_yardstick(y, names);
      if (!r.holds(em.condition)) ++yFlip;
      else if (yBad.empty()) yBad = "length " + std::to_string(len) + ": " + print_mutation(em.m);
      bool p = r.pass();
      bool pinned = pins(y, yc, y.individuals.at("st"));
      bool hasLen = yardstick_length(y, names).has_value();
      if (p == pinned && p == hasLen) ++yAgree;
      else if (yBad.empty()) yBad = "disagreement at length " + std::to_string(len) + ": " + print_mutation(em.m);
    }
  }
  rep.add("yardstick mutants flip the expected condition", yFlip == yTotal && yMin >= o.mutants,
          std::to_string(yFlip) + "/" + std::to_string(yTotal) + ", lengths 1.." + std::to_string(o.maxStick) +
              ", at least " + std::to_string(yMin) + " per length" + (yBad.empty() ? "" : ", first miss " + yBad));
  rep.add("yardstick checker, concept and length agree on mutants", yAgree == yTotal,
          std::to_string(yAgree) + "/" + std::to_string(yTotal));

  auto stick = yardstick(names, N);
  auto cobra = metricobra(snake, stick, d);
  Element cbra = cobra.individuals.at("cbra"), st = cobra.individuals.at("st"),
          rd = cobra.individuals.at("rd");
  auto tc = [&](int t) { return tile_concept(d.tiles[static_cast<size_t>(t)]); };
  std::vector<ExpectedMutant> cmut;
  for (const auto& em : smut) {
    bool local = em.condition == "SLen";
    cmut.push_back({em.m, local ? "" : "MInit"});
  }
  for (int t = 0; t < static_cast<int>(d.tiles.size()); ++t)
    if (t != cover->cells[static_cast<size_t>(rd)]) cmut.push_back({Mutation::retile(rd, tc(t)), "MSync"});
  cmut.push_back({Mutation::drop_edge("s", cbra, st), "MInit"});
  for (Element e = 1; e < snake.size; ++e) cmut.push_back({Mutation::add_edge("r", cbra, e), "MInit"});
  for (Element e = 0; e < snake.size; ++e) {
    int t = cover->cells[static_cast<size_t>(e)];
    Element md = cobra.individuals.at("md_" + names[static_cast<size_t>(t)]);
    cmut.push_back({Mutation::drop_edge("s", e, md), "MTile"});
    Element other = cobra.individuals.at("md_" + names[static_cast<size_t>((t + 1) % names.size())]);
    cmut.push_back({Mutation::add_edge("s", e, other), "MTile"});
  }
  for (const auto& em : yardstick_mutants(names, N)) {
    Mutation m = em.m;
    if (m.kind != Mutation::Kind::MoveIndividual) {
      m.a += snake.size;
      m.b += snake.size;
    } else {
      m.a += snake.size;
    }
    cmut.push_back({m, "MInit"});
  }
  Concept cc = metricobra_concept(d);
  int cFlip = 0, implied = 0, cAgree = 0;
  std::string cBad, iBad;
  for (const auto& em : cmut) {
    auto i = mutate(cobra, em.m);
    auto r = check_metricobra(i, d);
    bool flipped = em.condition.empty() ? !r.pass() : !r.holds(em.condition);
    if (flipped) ++cFlip;
    else if (cBad.empty()) cBad = print_mutation(em.m);
    if (!r.pass() || check_snake(i, d).pass()) ++implied;
    else if (iBad.empty()) iBad = print_mutation(em.m);
    auto ext = extension(i, cc);
    if (r.pass() ? (ext.count() == 1 && ext.test(static_cast<size_t>(cbra))) : ext.none()) ++cAgree;
    else if (iBad.empty()) iBad = "concept disagrees at " + print_mutation(em.m);
  }
  int nc = static_cast<int>(cmut.size());
  rep.add("metricobra mutants flip the expected condition", cFlip == nc && cFlip >= o.mutants,
          std::to_string(cFlip) + "/" + std::to_string(nc) + (cBad.empty() ? "" : ", first miss " + cBad));
  rep.add("cobra pass implies snake pass on every mutant", implied == nc, std::to_string(implied) + "/" + std::to_string(nc));
  rep.add("cobra checker and concept agree on mutants", cAgree == nc,
          std::to_string(cAgree) + "/" + std::to_string(nc) + (iBad.empty() ? "" : ", first " + iBad));
  return rep;
}

namespace {

struct OctantCase {
  std::string name;
  DominoSystem d;
};

std::string coord_text(const HyperoctantLayout& l, Element e) {
  auto [n, m, k] = l.coords(e);
  return "(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(k) + ")";
}

}  // namespace

SuiteReport lemma5_suite(const SuiteOptions& o) {
  SuiteReport rep;
  std::mt19937_64 rng(o.seed);
  std::vector<OctantCase> cases{{"three-tile", three_tile_octant_system()}, {"five-tile", five_tile_octant_system()}};
  for (const auto& cs : cases) {
    const auto& d = cs.d;
    int N = static_cast<int>(d.tiles.size()), D = N + 5;
    auto cover = solve_octant_prefix(d, D);
    if (!cover) {
      rep.add(cs.name + ": octant cover to depth " + std::to_string(D), false, "none found");
      continue;
    }
    auto h = hyperoctant(d, *cover);
    HyperoctantLayout l(N, D, false);
    Cq qt = q_triangle(d), q2 = q_2vpq(d);
    rep.add(cs.name + ": built hyperoctant is proper and tree-like", is_proper(h, l) && structural_checks(h).treeLike,
            std::to_string(h.size) + " elements, depth " + std::to_string(D));
    rep.add(cs.name + ": q_triangle has no match", !find_match(h, qt).has_value());
    rep.add(cs.name + ": q_2vpq has no match", !find_match(h, q2).has_value());

    // Interior mutants: Cur/Prev bits of cells with n <= D - N - 2.
    int interior = D - N - 2;
    std::vector<std::tuple<int, int>> cells;
    for (int n = 0; n <= interior; ++n)
      for (int m = 0; m <= n; ++m) cells.emplace_back(n, m);
    const auto& cur = h.concepts.at("Cur");
    const auto& prev = h.concepts.at("Prev");
    auto curIndex = [&](int n, int m) {
      for (int k = 1; k <= N; ++k)
        if (cur.count(l.id(n, m, k))) return k;
      return 0;
    };
    std::vector<std::vector<Mutation>> muts;
    std::uniform_int_distribution<size_t> pickCell(0, cells.size() - 1);
    std::uniform_int_distribution<int> pickK(1, N);
    for (int kind = 0; static_cast<int>(muts.size()) < std::max(o.mutants, 24); kind = (kind + 1) % 4) {
      auto [n, m] = cells[pickCell(rng)];
      int k = curIndex(n, m);
      if (k == 0) continue;
      Element above = l.id(n + 1, m, k);
      if (kind == 0) {
        muts.push_back({Mutation::flip("Prev", above), Mutation::flip("PrevBar", above)});
      } else if (kind == 1) {
        int k2 = pickK(rng);
        if (k2 == k) continue;
        muts.push_back({Mutation::flip("Cur", l.id(n, m, k)), Mutation::flip("Cur", l.id(n, m, k2))});
      } else if (kind == 2) {
        muts.push_back({Mutation::flip("Cur", l.id(n, m, k))});
      } else {
        int k2 = pickK(rng);
        if (prev.count(l.id(n + 1, m, k2))) continue;
        muts.push_back({Mutation::flip("Prev", l.id(n + 1, m, k2)), Mutation::flip("PrevBar", l.id(n + 1, m, k2))});
      }
    }
    int agree = 0, ends = 0, improper = 0;
    std::string bad;
    for (const auto& ms : muts) {
      Interpretation i = h;
      std::string label;
      for (const auto& m : ms) {
        i = mutate(i, m);
        label += (label.empty() ? "" : "; ") + print_mutation(m);
      }
      auto viol = properness_violations(i, l);
      bool proper = viol.empty();
      if (!proper) ++improper;
      auto m1 = find_match(i, qt);
      auto m2 = find_match(i, q2);
      bool same = m1.has_value() == m2.has_value() && m1.has_value() == !proper;
      if (same) ++agree;
      else if (bad.empty()) bad = label;
      bool endsOk = true;
      auto isViolation = [&](Element a, Element b) {
        auto [n, m, k] = l.coords(a);
        auto [n2, m2c, k2] = l.coords(b);
        if (n2 != n + 1 || m2c != m || k2 != k) return false;
        return std::find(viol.begin(), viol.end(), std::make_tuple(n, m, k)) != viol.end();
      };
      if (m1) endsOk = endsOk && replay(i, qt, {}, *m1) && isViolation(m1->at("v1"), m1->at("v2"));
      if (m2) endsOk = endsOk && replay(i, q2, {}, *m2) && isViolation(m2->at("x"), m2->at("y"));
      if (endsOk) ++ends;
      else if (bad.empty())
        bad = "endpoints " + (m2 ? coord_text(l, m2->at("x")) + "->" + coord_text(l, m2->at("y")) : std::string("?")) +
              " at " + label;
    }
    int nm = static_cast<int>(muts.size());
    rep.add(cs.name + ": q_triangle matched iff q_2vpq matched iff not proper", agree == nm,
            std::to_string(agree) + "/" + std::to_string(nm) + " mutants, " + std::to_string(improper) + " improper" +
                (bad.empty() ? "" : ", first miss " + bad));
    rep.add(cs.name + ": matches join (n,m,k) to (n+1,m,k)", ends == nm, std::to_string(ends) + "/" + std::to_string(nm));

    auto g = extend_to_grid(h, l);
    Kb kb;
    kb.tbox = tbox_triangle(d);
    auto kr = satisfies_kb(g.interp, kb, {}, &g.checkSets);
    std::string kd = std::to_string(g.interp.size) + " elements";
    if (!kr.holds) kd += ", violated " + kr.violations.front().axiom + " at " + kr.violations.front().witness;
    rep.add(cs.name + ": grid extension satisfies the triangle TBox on its check sets", kr.holds, kd);
    rep.add(cs.name + ": grid extension matches neither query",
            !find_match(g.interp, qt).has_value() && !find_match(g.interp, q2).has_value());
  }
  return rep;
}

}  // namespace vplc
