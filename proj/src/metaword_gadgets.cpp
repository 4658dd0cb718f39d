#include <set>

#include "vplc/error.hpp"
#include "vplc/reductions.hpp"

namespace vplc {

namespace {

constexpr LetterKind kModes[] = {LetterKind::Call, LetterKind::Internal, LetterKind::Return};

Concept self_loops(const Symbol& a, bool present) {
  std::vector<Concept> cs;
  for (auto k : kModes) cs.push_back(present ? cpt::self(decorate(a, k)) : cpt::neg(cpt::self(decorate(a, k))));
  return cpt::conj(cs);
}

}  // namespace

Concept friendly_concept(const std::vector<Symbol>& sigma) {
  if (sigma.empty()) throw Error("alphabet must be non-empty");
  std::vector<Concept> alts;
  for (const auto& a : sigma) {
    // With a single letter the conjunction over b != a is empty; the loop checks are kept.
    std::vector<Concept> parts{self_loops(a, true)};
    for (const auto& b : sigma)
      if (b != a) parts.push_back(self_loops(b, false));
    parts.push_back(cpt::neg(cpt::self(kSeparator)));
    alts.push_back(cpt::conj(parts));
  }
  return cpt::forall(LangExpr::regex(kSeparator + "*"), cpt::disj(alts));
}

Word metaword_word(const PointedInterpretation& p, const std::vector<Symbol>& sigma) {
  const auto& i = p.interp;
  if (p.point != 0) throw Error("metawords are pointed at 0");
  auto xs = i.roles.find(kSeparator);
  if (xs == i.roles.end()) throw Error("not a metaword: role x is missing");
  std::set<Edge> chain;
  for (Element e = 0; e + 1 < i.size; ++e) chain.insert({e, e + 1});
  if (xs->second != chain) throw Error("not a metaword: x is not the successor relation");
  for (const auto& [name, ext] : i.roles) {
    if (name == kSeparator) continue;
    for (const auto& [a, b] : ext)
      if (a != b) throw Error("not a metaword: role " + name + " has a non-loop edge");
  }
  if (!is_sigma_friendly(p, sigma)) throw Error("not a metaword: the structure is not friendly");
  Word w;
  for (Element e = 0; e < i.size; ++e)
    for (const auto& a : sigma) {
      auto it = i.roles.find(decorate(a, LetterKind::Call));
      if (it != i.roles.end() && it->second.count({e, e})) {
        w.push_back(a);
        break;
      }
    }
  return w;
}

PointedInterpretation decorate_metaword(const PointedInterpretation& p, const Doca& d, const std::string& accName) {
  Word w = metaword_word(p, d.alphabet);
  PointedInterpretation out = p;
  auto& acc = out.interp.concepts[accName];
  acc.clear();
  for (size_t k = 1; k <= w.size(); ++k)
    if (doca_accepts(d, Word(w.begin(), w.begin() + static_cast<long>(k)))) acc.insert(static_cast<Element>(k - 1));
  return out;
}

// The decorated languages exclude the empty word: position 0 carries Acc exactly when the
// first letter alone is accepted, which an empty path cannot express.
Concept acceptance_concept(const Doca& d, const std::string& accName, const std::vector<Symbol>& sigma) {
  return cpt::conj({friendly_concept(sigma), cpt::forall(LangExpr::decorated(d, DocaMode::NonEmpty), cpt::atom(accName)),
                    cpt::forall(LangExpr::decorated(d, DocaMode::ComplementNonEmpty), cpt::neg(cpt::atom(accName)))});
}

Concept intersection_concept(const Doca& d1, const std::string& acc1, const Doca& d2, const std::string& acc2,
                             const std::vector<Symbol>& sigma) {
  if (d1.alphabet != d2.alphabet) throw Error("automata must share their alphabet");
  return cpt::conj({acceptance_concept(d1, acc1, sigma), acceptance_concept(d2, acc2, sigma),
                    cpt::exists(LangExpr::regex(kSeparator + "*"), cpt::conj(cpt::atom(acc1), cpt::atom(acc2)))});
}

}  // namespace vplc
