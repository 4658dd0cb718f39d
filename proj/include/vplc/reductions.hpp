#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "vplc/concepts.hpp"
#include "vplc/interp.hpp"
#include "vplc/queries.hpp"
#include "vplc/tiling.hpp"
#include "vplc/vpa.hpp"

namespace vplc {

// ---- words as self-loop chains ----

Concept friendly_concept(const std::vector<Symbol>& sigma);
// Sets accName to { i-1 : w_1..w_i in L(d) } on a metaword for w.
PointedInterpretation decorate_metaword(const PointedInterpretation& p, const Doca& d, const std::string& accName);
Concept acceptance_concept(const Doca& d, const std::string& accName, const std::vector<Symbol>& sigma);
Concept intersection_concept(const Doca& d1, const std::string& acc1, const Doca& d2, const std::string& acc2,
                             const std::vector<Symbol>& sigma);
// The word a metaword encodes; throws when p is not a metaword.
Word metaword_word(const PointedInterpretation& p, const std::vector<Symbol>& sigma);

// ---- condition reports ----

struct Condition {
  std::string name;
  bool holds = false;
  std::string detail;
};

struct GadgetReport {
  std::vector<Condition> conditions;
  std::optional<int> length;  // SLen's N for snakes

  bool pass() const;
  bool holds(const std::string& name) const;
  bool all_of(const std::vector<std::string>& names) const;
  std::string summary() const;
};

// ---- snakes ----

std::string tile_concept(const Tile& t);
// Row-major r-chain; ld = 0, rd = n-1, lu = (m-1)n, ru = mn-1.
Interpretation snake_from_cover(const DominoSystem& d, const RectCover& c);
// Conditions SPath SNoLoop SUniqTil SSpecTil SHori SLen SVerti.
GadgetReport check_snake(const Interpretation& i, const DominoSystem& d);
bool is_pseudosnake(const GadgetReport& r);
Concept pseudosnake_concept(const DominoSystem& d);

// ---- yardsticks ----

// Elements 0..N form the r-chain (st = 0, md = N); (i, t) is N + 1 + t*N + i for i < N.
Interpretation yardstick(const std::vector<std::string>& tiles, int n);
// Conditions YNom YNoLoop YMid YSuccOfMid YReachMidT YEqDst YNoEqDst.
GadgetReport check_yardstick(const Interpretation& i, const std::vector<std::string>& tiles);
Concept yardstick_concept(const std::vector<std::string>& tiles);
std::optional<int> yardstick_length(const Interpretation& i, const std::vector<std::string>& tiles);
std::vector<std::string> tile_names(const DominoSystem& d);

// ---- metricobras ----

// Snake elements first, then the yardstick, then cbra.
Interpretation metricobra(const Interpretation& snake, const Interpretation& stick, const DominoSystem& d);
// Conditions MInit MTile MSync MVerti.
GadgetReport check_metricobra(const Interpretation& i, const DominoSystem& d);
Concept metricobra_concept(const DominoSystem& d);

// ---- hyperoctants ----

// Coordinates (n, m, k). Tail elements (-j, 0, 0), 1 <= j <= N, come first
// with (-N,0,0) at id 0. Octant cells follow in order n(n+1)/2 + m with k
// innermost; the grid variant appends cells with m > n.
class HyperoctantLayout {
 public:
  HyperoctantLayout(int tiles, int depth, bool grid);
  int tiles() const { return n_; }
  int depth() const { return depth_; }
  bool grid() const { return grid_; }
  int size() const { return size_; }
  bool contains(int n, int m, int k) const;
  Element id(int n, int m, int k) const;  // throws outside the layout
  std::tuple<int, int, int> coords(Element e) const;

 private:
  int n_, depth_;
  bool grid_;
  int size_;
  std::vector<int> cellBase_;  // (n * (depth+1) + m) -> first id, or -1
};

Interpretation hyperoctant(const DominoSystem& d, const OctantPrefixCover& c);
bool is_proper(const Interpretation& i, const HyperoctantLayout& l);
// (n, m, k) in Cur with (n+1, m, k) present but not in Prev.
std::vector<std::tuple<int, int, int>> properness_violations(const Interpretation& i, const HyperoctantLayout& l);

struct GridExtension {
  Interpretation interp;
  HyperoctantLayout layout;
  std::vector<ElementSet> checkSets;  // one per axiom of tbox_triangle
};
GridExtension extend_to_grid(const Interpretation& h, const HyperoctantLayout& l);

Tbox tbox_triangle(const DominoSystem& d);
Cq q_triangle(const DominoSystem& d);
Vpa ldru_vpa();
Cq q_2vpq(const DominoSystem& d);

// ---- mutations ----

struct Mutation {
  enum class Kind { DropEdge, AddEdge, Retile, FlipConcept, MoveIndividual };
  Kind kind = Kind::FlipConcept;
  std::string name;  // role, concept, tile concept or individual
  Element a = 0, b = 0;

  static Mutation drop_edge(const std::string& r, Element a, Element b);
  static Mutation add_edge(const std::string& r, Element a, Element b);
  // Clears every tile concept ("C_" prefix) at a, then sets tileConcept.
  static Mutation retile(Element a, const std::string& tileConcept);
  static Mutation flip(const std::string& name, Element a);
  static Mutation move(const std::string& individual, Element a);
};

Interpretation mutate(const Interpretation& i, const Mutation& m);
std::string print_mutation(const Mutation& m);
Mutation parse_mutation(const std::string& text);

}  // namespace vplc
