#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vplc/concepts.hpp"
#include "vplc/interp.hpp"

namespace vplc {

struct QueryAtom {
  enum class Kind { Concept, Role, Lang };
  Kind kind = Kind::Concept;
  std::string name;  // concept or role name
  std::optional<LangExpr> lang;
  std::string x, y;  // y unused for concept atoms

  static QueryAtom concept_atom(const std::string& a, const std::string& x);
  static QueryAtom role_atom(const std::string& r, const std::string& x, const std::string& y);
  static QueryAtom lang_atom(const LangExpr& l, const std::string& x, const std::string& y);
};

struct Cq {
  std::vector<std::string> vars;  // order of first appearance
  std::vector<QueryAtom> atoms;

  void add(QueryAtom a);
};

// Positive combination of atoms.
struct PeqNode;
using Peq = std::shared_ptr<const PeqNode>;
struct PeqNode {
  enum class Kind { Atom, And, Or, Bot };
  Kind kind = Kind::Bot;
  QueryAtom atom;
  std::vector<Peq> kids;
};

namespace peq {
Peq atom(QueryAtom a);
Peq conj(std::vector<Peq> ks);
Peq disj(std::vector<Peq> ks);
Peq bot();
Peq from_cq(const Cq& q);
}  // namespace peq

using Assignment = std::map<std::string, Element>;

std::optional<Assignment> find_match(const Interpretation& i, const Cq& q, const SymbolBinding& b = {});
// Every match once, lexicographic in the order of q.vars.
std::vector<Assignment> all_matches(const Interpretation& i, const Cq& q, const SymbolBinding& b = {});
bool replay(const Interpretation& i, const Cq& q, const SymbolBinding& b, const Assignment& a);

std::vector<Cq> to_dnf(const Peq& q, size_t cap = 1024);
bool satisfies_peq(const Interpretation& i, const Peq& q, const SymbolBinding& b = {}, size_t cap = 1024);

// One atom per line: A(x), r(x,y), L<rnsn r s>(x,y). A line "|" starts the next disjunct; a
// disjunct "bot" is false.
std::vector<Cq> parse_query(const std::string& text, const std::string& baseDir = ".");
std::string print_query(const std::vector<Cq>& disjuncts);
std::string print_atom(const QueryAtom& a);

}  // namespace vplc
