#pragma once

#include <boost/dynamic_bitset.hpp>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vplc/vpa.hpp"

namespace vplc {

using Element = int;
using Edge = std::pair<Element, Element>;
using ElementSet = boost::dynamic_bitset<>;

std::vector<Element> to_vector(const ElementSet& s);
ElementSet make_set(int size, const std::vector<Element>& elems);

// Finite interpretation over the dense domain {0, ..., size-1}. Names absent from the maps are
// uninterpreted; evaluation reports them as dangling.
struct Interpretation {
  int size = 1;
  std::map<std::string, std::set<Element>> concepts;
  std::map<std::string, std::set<Edge>> roles;
  std::map<std::string, Element> individuals;

  void validate() const;
  bool operator==(const Interpretation&) const = default;
};

struct PointedInterpretation {
  Interpretation interp;
  Element point = 0;
};

enum class BindingKind { Role, InverseRole, Test };

struct Binding {
  BindingKind kind;
  std::string name;
  auto operator<=>(const Binding&) const = default;
};

// Maps VPA symbols to semantic meaning. Unlisted symbols fall back to the naming convention:
// "A?" is a test on concept A, "r^-" the inverse of role r, anything else the role of that name.
struct SymbolBinding {
  std::map<Symbol, Binding> explicitBindings;
  Binding resolve(const Symbol& a) const;
  static Binding natural(const Symbol& a);
};

// Pairs (d, e) related by the symbol's meaning, sorted.
std::vector<Edge> edge_relation(const Interpretation& i, const SymbolBinding& b, const Symbol& a);

struct StructureReport {
  bool treeLike = true;
  bool singleRole = true;
  std::string detail;
};
StructureReport structural_checks(const Interpretation& i);

// Element domain Z_|w|, role x = successor, self-loops "(a,c)", "(a,i)", "(a,r)" at i for a = w[i].
// Decorated roles of every letter of sigma (and of w) are declared, possibly empty.
PointedInterpretation build_metaword(const Word& w, const std::vector<Symbol>& sigma = {});
bool is_sigma_friendly(const PointedInterpretation& p, const std::vector<Symbol>& sigma);

std::string print_interpretation(const Interpretation& i);
Interpretation parse_interpretation(const std::string& text);

}  // namespace vplc
