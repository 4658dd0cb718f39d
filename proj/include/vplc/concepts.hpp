#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "vplc/interp.hpp"
#include "vplc/reach.hpp"
#include "vplc/vpa.hpp"

namespace vplc {

enum class DocaMode { All, NonEmpty, ComplementNonEmpty };

// A language usable in modal operators and query atoms.
struct LangExpr {
  enum class Kind { Regex, Rnsn, Goller, Ldru, Vpa, Doca };
  Kind kind = Kind::Regex;
  std::string pattern;
  std::vector<Symbol> args;
  std::shared_ptr<const Vpa> vpa;
  std::shared_ptr<const Doca> doca;
  DocaMode docaMode = DocaMode::All;

  static LangExpr regex(const std::string& pattern);
  static LangExpr rnsn(const Symbol& call, const Symbol& ret);
  static LangExpr goller(const Symbol& call, const Symbol& internal, const Symbol& ret);
  static LangExpr ldru();
  static LangExpr automaton(Vpa a);
  static LangExpr decorated(Doca d, DocaMode mode);

  // Canonical printed form; also the cache key.
  std::string key() const;
};

// Regex symbols are classified by the signature; symbols it does not mention are internal.
Vpa compile(const LangExpr& l, const PushdownAlphabet& signature = {});

enum class ConceptKind { Top, Atom, Not, And, Or, Exists, Forall, Nominal, Self };

struct ConceptNode;
using Concept = std::shared_ptr<const ConceptNode>;

struct ConceptNode {
  ConceptKind kind;
  std::string name;  // atom, nominal or self role
  std::vector<Concept> kids;
  std::optional<LangExpr> lang;
  std::string key;  // printed form
};

namespace cpt {
Concept top();
Concept bottom();
Concept atom(const std::string& name);
Concept neg(const Concept& c);
Concept conj(std::vector<Concept> cs);
Concept conj(const Concept& a, const Concept& b);
Concept disj(std::vector<Concept> cs);
Concept disj(const Concept& a, const Concept& b);
Concept exists(const LangExpr& l, const Concept& c);
Concept forall(const LangExpr& l, const Concept& c);
Concept nominal(const std::string& a);
Concept self(const std::string& role);
Concept implies(const Concept& a, const Concept& b);
Concept iff(const Concept& a, const Concept& b);
}  // namespace cpt

std::string print_concept(const Concept& c);
// baseDir resolves (vpa "file") references.
Concept parse_concept(const std::string& text, const std::string& baseDir = ".");
LangExpr parse_language(const std::string& text, const std::string& baseDir = ".");

// Evaluates concepts over one interpretation, memoising sub-concepts and reachability per language.
class Evaluator {
 public:
  explicit Evaluator(Interpretation i, SymbolBinding b = {}, PushdownAlphabet signature = {});

  ElementSet extension(const Concept& c);
  const ReachResult& reach(const LangExpr& l);
  // Replaces a concept's extension and drops the caches that depend on it.
  void set_concept(const std::string& name, const std::set<Element>& ext);
  const Interpretation& interp() const { return i_; }
  const SymbolBinding& binding() const { return b_; }

 private:
  ElementSet eval(const Concept& c);
  void check_names(const Concept& c);

  struct CachedReach {
    ReachResult result;
    std::set<std::string> tests;
  };
  Interpretation i_;
  SymbolBinding b_;
  PushdownAlphabet signature_;
  std::unordered_map<std::string, ElementSet> memo_;
  std::unordered_map<std::string, CachedReach> reach_;
  std::set<std::string> checked_;
};

ElementSet extension(const Interpretation& i, const Concept& c, const SymbolBinding& b = {});
bool check_pointed(const PointedInterpretation& p, const Concept& c, const SymbolBinding& b = {});

struct Gci {
  Concept lhs, rhs;
};
struct Ria {
  std::string sub, sup;
};
struct Tbox {
  std::vector<Gci> gcis;
  std::vector<Ria> rias;
};

struct Assertion {
  bool isRole = false;
  bool negated = false;
  Concept body;  // concept assertions
  std::string role;  // role assertions
  std::string a, b;
};

struct Kb {
  std::vector<Assertion> abox;
  Tbox tbox;
};

struct Violation {
  std::string axiom;
  std::string witness;
};

struct KbReport {
  bool holds = true;
  std::vector<Violation> violations;
};

bool satisfies_assertion(Evaluator& ev, const Assertion& as);
// gciScopes, when given, restricts GCI k to the elements of gciScopes[k].
KbReport satisfies_kb(const Interpretation& i, const Kb& kb, const SymbolBinding& b = {},
                      const std::vector<ElementSet>* gciScopes = nullptr);
KbReport satisfies_kb(Evaluator& ev, const Kb& kb, const std::vector<ElementSet>* gciScopes = nullptr);

// Adds top subsumed by "not exists L.top".
Tbox internalize_vpq(Tbox t, const LangExpr& l);

std::string print_kb(const Kb& kb);
Kb parse_kb(const std::string& text, const std::string& baseDir = ".");

}  // namespace vplc
