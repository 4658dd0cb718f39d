#pragma once

#include <map>
#include <optional>
#include <vector>

#include "vplc/interp.hpp"
#include "vplc/vpa.hpp"

namespace vplc {

// Directed graph with symbol-labelled edges; adjacency[symbol][d] lists successors of d.
struct LabeledGraph {
  int size = 0;
  std::map<Symbol, std::vector<std::vector<Element>>> adjacency;
};

LabeledGraph labeled_graph(const Interpretation& i, const SymbolBinding& b, const PushdownAlphabet& alpha);

struct Witness {
  Word word;
  std::vector<Element> path;  // |path| = |word| + 1
};

struct ReachResult {
  int size = 0;
  std::vector<Element> sources;
  std::vector<ElementSet> targets;  // indexed by source element; empty sets for non-sources
  std::map<Edge, Witness> witnesses;

  bool contains(Element d, Element e) const { return targets[d].test(e); }
  std::vector<Edge> pairs() const;
};

// Summary saturation. With withWitness, a shortest witness is kept for every pair.
ReachResult saturate(const LabeledGraph& g, const Vpa& a, const std::vector<Element>& sources, bool withWitness);

// All sources when none are given.
ReachResult l_reachable_pairs(const Interpretation& i, const SymbolBinding& b, const Vpa& a,
                              std::optional<std::vector<Element>> sources = std::nullopt, bool withWitness = false);

// Explicit search over (element, configuration) up to maxLen steps. Maps each reachable pair
// to the length of its shortest witness.
std::map<Edge, int> bounded_oracle(const LabeledGraph& g, const Vpa& a, int maxLen);
std::map<Edge, int> bounded_oracle(const Interpretation& i, const SymbolBinding& b, const Vpa& a, int maxLen);

}  // namespace vplc
