#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace vplc {

using Symbol = std::string;
using Word = std::vector<Symbol>;

enum class LetterKind { Call, Internal, Return };

// Partition of a finite symbol set into calls, internals and returns.
class PushdownAlphabet {
 public:
  PushdownAlphabet() = default;
  PushdownAlphabet(const std::vector<Symbol>& calls, const std::vector<Symbol>& internals,
                   const std::vector<Symbol>& returns);

  std::optional<LetterKind> kind(const Symbol& a) const;
  bool contains(const Symbol& a) const { return kinds_.count(a) > 0; }
  const std::vector<Symbol>& calls() const { return calls_; }
  const std::vector<Symbol>& internals() const { return internals_; }
  const std::vector<Symbol>& returns() const { return returns_; }
  // All symbols, sorted.
  std::vector<Symbol> symbols() const;
  size_t size() const { return kinds_.size(); }

  // Adds a symbol; throws if it is already present with another kind.
  void add(const Symbol& a, LetterKind k);

  bool operator==(const PushdownAlphabet& o) const { return kinds_ == o.kinds_; }

 private:
  std::map<Symbol, LetterKind> kinds_;
  std::vector<Symbol> calls_, internals_, returns_;
};

using StateId = int;
using StackSym = int;  // 0 is the bottom symbol, pushable symbols are 1..numStack
constexpr StackSym kBottom = 0;

struct CallRule {
  StateId from;
  Symbol letter;
  StateId to;
  StackSym push;
  auto operator<=>(const CallRule&) const = default;
};

struct ReturnRule {
  StateId from;
  Symbol letter;
  StackSym pop;  // may be kBottom
  StateId to;
  auto operator<=>(const ReturnRule&) const = default;
};

struct InternalRule {
  StateId from;
  Symbol letter;
  StateId to;
  auto operator<=>(const InternalRule&) const = default;
};

struct Vpa {
  PushdownAlphabet alphabet;
  std::vector<std::string> stateNames;  // index = StateId
  std::vector<std::string> stackNames{"_bot"};  // index 0 is the bottom symbol
  std::set<StateId> initial;
  std::set<StateId> final;
  std::vector<CallRule> calls;
  std::vector<ReturnRule> returns;
  std::vector<InternalRule> internals;

  int numStates() const { return static_cast<int>(stateNames.size()); }
  int numStack() const { return static_cast<int>(stackNames.size()) - 1; }

  StateId addState(const std::string& name = "");
  StackSym addStackSymbol(const std::string& name = "");
  // Throws Error when a rule is ill-typed or references unknown states/symbols.
  void validate() const;
  // Sorts and deduplicates the rule lists.
  void normalize();
};

// Stack top is back(); the bottom symbol is implicit.
struct Configuration {
  StateId state;
  std::vector<StackSym> stack;
  auto operator<=>(const Configuration&) const = default;
};

std::vector<Configuration> step(const Vpa& a, const Configuration& c, const Symbol& letter);
bool accepts(const Vpa& a, const Word& w);
Vpa intersection(const Vpa& a, const Vpa& b);
// Shortest accepted word, or nullopt when the language is empty.
std::optional<Word> emptiness_witness(const Vpa& a);

// Operators: juxtaposition, '+' or '|' for union, '*', '^+', parentheses, '()' for the empty word.
Vpa regex_to_vpa(const std::string& pattern, const PushdownAlphabet& alpha);
// Symbols of a pattern in order of first appearance.
std::vector<Symbol> regex_symbols(const std::string& pattern);

Vpa rnsn_vpa(const Symbol& call, const Symbol& ret);
Vpa goller_vpa(const Symbol& call, const Symbol& internal, const Symbol& ret);

// Deterministic one-counter automaton. The counter never goes below zero.
struct DocaMove {
  StateId to;
  int delta;  // -1, 0, +1
  auto operator<=>(const DocaMove&) const = default;
};

struct Doca {
  std::vector<Symbol> alphabet;
  std::vector<std::string> stateNames;
  StateId initial = 0;
  std::set<StateId> final;
  // key: (state, letter, counter is zero)
  std::map<std::tuple<StateId, Symbol, bool>, DocaMove> moves;

  int numStates() const { return static_cast<int>(stateNames.size()); }
  StateId addState(const std::string& name = "");
  void validate() const;
};

bool doca_accepts(const Doca& d, const Word& w);
Doca doca_complement(const Doca& d);

// Decorated letters "(a,c)", "(a,i)", "(a,r)" and the separator "x".
Symbol decorate(const Symbol& a, LetterKind k);
extern const Symbol kSeparator;
PushdownAlphabet decorated_alphabet(const std::vector<Symbol>& sigma);

// Accepts a~1 x a~2 ... x a~n exactly when a1..an is accepted with the decorations of the run.
// With includeEmpty false the empty word is never accepted.
Vpa doca_to_vpa(const Doca& d, bool includeEmpty = true);

// Text formats.
Vpa parse_vpa(const std::string& text);
std::string print_vpa(const Vpa& a);
Doca parse_doca(const std::string& text);
std::string print_doca(const Doca& d);
Word parse_word(const std::string& text);
std::string print_word(const Word& w);

}  // namespace vplc
