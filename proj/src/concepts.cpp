#include "vplc/concepts.hpp"

#include <algorithm>

#include "text_util.hpp"
#include "vplc/error.hpp"
#include "vplc/reductions.hpp"

namespace vplc {

LangExpr LangExpr::regex(const std::string& pattern) {
  LangExpr l;
  l.kind = Kind::Regex;
  l.pattern = pattern;
  return l;
}

LangExpr LangExpr::rnsn(const Symbol& call, const Symbol& ret) {
  LangExpr l;
  l.kind = Kind::Rnsn;
  l.args = {call, ret};
  return l;
}

LangExpr LangExpr::goller(const Symbol& call, const Symbol& internal, const Symbol& ret) {
  LangExpr l;
  l.kind = Kind::Goller;
  l.args = {call, internal, ret};
  return l;
}

LangExpr LangExpr::ldru() {
  LangExpr l;
  l.kind = Kind::Ldru;
  return l;
}

LangExpr LangExpr::automaton(Vpa a) {
  LangExpr l;
  l.kind = Kind::Vpa;
  l.vpa = std::make_shared<const Vpa>(std::move(a));
  return l;
}

LangExpr LangExpr::decorated(Doca d, DocaMode mode) {
  LangExpr l;
  l.kind = Kind::Doca;
  l.doca = std::make_shared<const Doca>(std::move(d));
  l.docaMode = mode;
  return l;
}

Vpa compile(const LangExpr& l, const PushdownAlphabet& signature) {
  switch (l.kind) {
    case LangExpr::Kind::Regex: {
      PushdownAlphabet alpha;
      for (const auto& s : regex_symbols(l.pattern)) alpha.add(s, signature.kind(s).value_or(LetterKind::Internal));
      return regex_to_vpa(l.pattern, alpha);
    }
    case LangExpr::Kind::Rnsn:
      return rnsn_vpa(l.args[0], l.args[1]);
    case LangExpr::Kind::Goller:
      return goller_vpa(l.args[0], l.args[1], l.args[2]);
    case LangExpr::Kind::Ldru:
      return ldru_vpa();
    case LangExpr::Kind::Vpa:
      return *l.vpa;
    case LangExpr::Kind::Doca:
      if (l.docaMode == DocaMode::All) return doca_to_vpa(*l.doca, true);
      if (l.docaMode == DocaMode::NonEmpty) return doca_to_vpa(*l.doca, false);
      return doca_to_vpa(doca_complement(*l.doca), false);
  }
  throw Error("unknown language kind");
}

namespace cpt {

namespace {
Concept make(ConceptKind k, std::string name, std::vector<Concept> kids, std::optional<LangExpr> lang) {
  auto n = std::make_shared<ConceptNode>();
  n->kind = k;
  n->name = std::move(name);
  n->kids = std::move(kids);
  n->lang = std::move(lang);
  n->key = print_concept(n);
  return n;
}
}  // namespace

Concept top() {
  static const Concept t = make(ConceptKind::Top, "", {}, std::nullopt);
  return t;
}
Concept bottom() { return neg(top()); }
Concept atom(const std::string& name) { return make(ConceptKind::Atom, name, {}, std::nullopt); }
Concept neg(const Concept& c) { return make(ConceptKind::Not, "", {c}, std::nullopt); }
Concept conj(std::vector<Concept> cs) {
  if (cs.empty()) return top();
  if (cs.size() == 1) return cs[0];
  return make(ConceptKind::And, "", std::move(cs), std::nullopt);
}
Concept conj(const Concept& a, const Concept& b) { return conj(std::vector<Concept>{a, b}); }
Concept disj(std::vector<Concept> cs) {
  if (cs.empty()) return bottom();
  if (cs.size() == 1) return cs[0];
  return make(ConceptKind::Or, "", std::move(cs), std::nullopt);
}
Concept disj(const Concept& a, const Concept& b) { return disj(std::vector<Concept>{a, b}); }
Concept exists(const LangExpr& l, const Concept& c) { return make(ConceptKind::Exists, "", {c}, l); }
Concept forall(const LangExpr& l, const Concept& c) { return make(ConceptKind::Forall, "", {c}, l); }
Concept nominal(const std::string& a) { return make(ConceptKind::Nominal, a, {}, std::nullopt); }
Concept self(const std::string& role) { return make(ConceptKind::Self, role, {}, std::nullopt); }
Concept implies(const Concept& a, const Concept& b) { return disj(neg(a), b); }
Concept iff(const Concept& a, const Concept& b) { return conj(implies(a, b), implies(b, a)); }

}  // namespace cpt

// ---- evaluation ----

Evaluator::Evaluator(Interpretation i, SymbolBinding b, PushdownAlphabet signature)
    : i_(std::move(i)), b_(std::move(b)), signature_(std::move(signature)) {
  i_.validate();
}

void Evaluator::set_concept(const std::string& name, const std::set<Element>& ext) {
  i_.concepts[name] = ext;
  memo_.clear();
  for (auto it = reach_.begin(); it != reach_.end();) {
    if (it->second.tests.count(name)) it = reach_.erase(it);
    else ++it;
  }
}

const ReachResult& Evaluator::reach(const LangExpr& l) {
  auto key = l.key();
  auto it = reach_.find(key);
  if (it != reach_.end()) return it->second.result;
  Vpa a = compile(l, signature_);
  CachedReach cr;
  for (const auto& s : a.alphabet.symbols()) {
    auto bd = b_.resolve(s);
    if (bd.kind == BindingKind::Test) cr.tests.insert(bd.name);
  }
  cr.result = l_reachable_pairs(i_, b_, a);
  return reach_.emplace(key, std::move(cr)).first->second.result;
}

void Evaluator::check_names(const Concept& root) {
  if (checked_.count(root->key)) return;
  std::set<std::string> missing;
  std::set<const ConceptNode*> seen;
  std::set<std::string> langsSeen;
  std::vector<const ConceptNode*> stack{root.get()};
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    switch (n->kind) {
      case ConceptKind::Atom:
        if (!i_.concepts.count(n->name)) missing.insert("concept " + n->name);
        break;
      case ConceptKind::Nominal:
        if (!i_.individuals.count(n->name)) missing.insert("individual " + n->name);
        break;
      case ConceptKind::Self:
        if (!i_.roles.count(n->name)) missing.insert("role " + n->name);
        break;
      case ConceptKind::Exists:
      case ConceptKind::Forall: {
        auto k = n->lang->key();
        if (!langsSeen.insert(k).second) break;
        for (const auto& s : compile(*n->lang, signature_).alphabet.symbols()) {
          auto bd = b_.resolve(s);
          if (bd.kind == BindingKind::Test) {
            if (!i_.concepts.count(bd.name)) missing.insert("concept " + bd.name);
          } else if (!i_.roles.count(bd.name)) {
            missing.insert("role " + bd.name);
          }
        }
        break;
      }
      default:
        break;
    }
    for (const auto& k : n->kids) stack.push_back(k.get());
  }
  if (!missing.empty())
    throw Error("dangling names: " + text::join(std::vector<std::string>(missing.begin(), missing.end()), ", "));
  checked_.insert(root->key);
}

ElementSet Evaluator::extension(const Concept& c) {
  check_names(c);
  return eval(c);
}

ElementSet Evaluator::eval(const Concept& c) {
  auto it = memo_.find(c->key);
  if (it != memo_.end()) return it->second;
  const int n = i_.size;
  ElementSet out(n);
  switch (c->kind) {
    case ConceptKind::Top:
      out.set();
      break;
    case ConceptKind::Atom:
      for (auto e : i_.concepts.at(c->name)) out.set(e);
      break;
    case ConceptKind::Not:
      out = ~eval(c->kids[0]);
      break;
    case ConceptKind::And:
      out.set();
      for (const auto& k : c->kids) out &= eval(k);
      break;
    case ConceptKind::Or:
      for (const auto& k : c->kids) out |= eval(k);
      break;
    case ConceptKind::Nominal:
      out.set(i_.individuals.at(c->name));
      break;
    case ConceptKind::Self:
      for (const auto& [a, b] : i_.roles.at(c->name))
        if (a == b) out.set(a);
      break;
    case ConceptKind::Exists:
    case ConceptKind::Forall: {
      ElementSet body = eval(c->kids[0]);
      const ReachResult& r = reach(*c->lang);
      for (Element d = 0; d < n; ++d) {
        bool v = c->kind == ConceptKind::Exists ? r.targets[d].intersects(body) : r.targets[d].is_subset_of(body);
        if (v) out.set(d);
      }
      break;
    }
  }
  memo_.emplace(c->key, out);
  return out;
}

ElementSet extension(const Interpretation& i, const Concept& c, const SymbolBinding& b) {
  Evaluator ev(i, b);
  return ev.extension(c);
}

bool check_pointed(const PointedInterpretation& p, const Concept& c, const SymbolBinding& b) {
  if (p.point < 0 || p.point >= p.interp.size) throw Error("point outside the domain");
  return extension(p.interp, c, b).test(p.point);
}

// ---- knowledge bases ----

namespace {

Element individual(const Interpretation& i, const std::string& a) {
  auto it = i.individuals.find(a);
  if (it == i.individuals.end()) throw Error("dangling names: individual " + a);
  return it->second;
}

std::string assertion_text(const Assertion& as) {
  if (as.isRole)
    return std::string(as.negated ? "assert-not-role " : "assert-role ") + as.role + " " + as.a + " " + as.b;
  return std::string(as.negated ? "assert-not " : "assert ") + print_concept(as.body) + " " + as.a;
}

}  // namespace

bool satisfies_assertion(Evaluator& ev, const Assertion& as) {
  const auto& i = ev.interp();
  Element a = individual(i, as.a);
  bool holds;
  if (as.isRole) {
    Element b = individual(i, as.b);
    auto it = i.roles.find(as.role);
    if (it == i.roles.end()) throw Error("dangling names: role " + as.role);
    holds = it->second.count({a, b}) > 0;
  } else {
    holds = ev.extension(as.body).test(a);
  }
  return holds != as.negated;
}

KbReport satisfies_kb(Evaluator& ev, const Kb& kb, const std::vector<ElementSet>* gciScopes) {
  KbReport rep;
  const auto& i = ev.interp();
  for (const auto& as : kb.abox)
    if (!satisfies_assertion(ev, as)) rep.violations.push_back({assertion_text(as), "individual " + as.a});
  for (size_t k = 0; k < kb.tbox.gcis.size(); ++k) {
    const auto& g = kb.tbox.gcis[k];
    ElementSet bad = ev.extension(g.lhs) - ev.extension(g.rhs);
    if (gciScopes) bad &= (*gciScopes)[k];
    if (bad.any())
      rep.violations.push_back({"gci " + print_concept(g.lhs) + " " + print_concept(g.rhs),
                                "element " + std::to_string(bad.find_first())});
  }
  for (const auto& r : kb.tbox.rias) {
    auto sub = i.roles.find(r.sub);
    auto sup = i.roles.find(r.sup);
    if (sub == i.roles.end()) throw Error("dangling names: role " + r.sub);
    if (sup == i.roles.end()) throw Error("dangling names: role " + r.sup);
    for (const auto& e : sub->second)
      if (!sup->second.count(e)) {
        rep.violations.push_back({"ria " + r.sub + " " + r.sup,
                                  "pair (" + std::to_string(e.first) + "," + std::to_string(e.second) + ")"});
        break;
      }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

KbReport satisfies_kb(const Interpretation& i, const Kb& kb, const SymbolBinding& b,
                      const std::vector<ElementSet>* gciScopes) {
  Evaluator ev(i, b);
  return satisfies_kb(ev, kb, gciScopes);
}

Tbox internalize_vpq(Tbox t, const LangExpr& l) {
  t.gcis.push_back({cpt::top(), cpt::neg(cpt::exists(l, cpt::top()))});
  return t;
}

}  // namespace vplc
