#include <algorithm>
#include <cctype>
#include <memory>

#include "vplc/error.hpp"
#include "vplc/vpa.hpp"

namespace vplc {

namespace {

enum class Tok { Sym, LParen, RParen, Union, Star, Plus, Eps, End };

struct Token {
  Tok kind;
  std::string text;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  auto fail = [&](const std::string& msg) { throw ParseError("regex: " + msg + " at offset " + std::to_string(i)); };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      // decorated letter "(a,c)" or the empty word "()"
      size_t j = i + 1;
      while (j < s.size() && ident_char(s[j])) ++j;
      if (j > i + 1 && j + 2 < s.size() && s[j] == ',' && std::string("cir").find(s[j + 1]) != std::string::npos &&
          s[j + 2] == ')') {
        out.push_back({Tok::Sym, s.substr(i, j + 3 - i)});
        i = j + 3;
        continue;
      }
      size_t k = i + 1;
      while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
      if (k < s.size() && s[k] == ')') {
        out.push_back({Tok::Eps, "()"});
        i = k + 1;
        continue;
      }
      out.push_back({Tok::LParen, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")"});
      ++i;
    } else if (c == '+' || c == '|') {
      out.push_back({Tok::Union, "+"});
      ++i;
    } else if (c == '*') {
      out.push_back({Tok::Star, "*"});
      ++i;
    } else if (c == '^') {
      if (i + 1 < s.size() && s[i + 1] == '+') {
        out.push_back({Tok::Plus, "^+"});
        i += 2;
      } else {
        fail("'^' must be followed by '+' or belong to a symbol");
      }
    } else if (ident_char(c)) {
      size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      if (j < s.size() && s[j] == '?') ++j;
      else if (j + 1 < s.size() && s[j] == '^' && s[j + 1] == '-') j += 2;
      out.push_back({Tok::Sym, s.substr(i, j - i)});
      i = j;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, ""});
  return out;
}

// Thompson construction over an epsilon-NFA.
struct Enfa {
  struct Edge {
    int to;
    int sym;  // -1 = epsilon
  };
  std::vector<std::vector<Edge>> out;
  std::vector<Symbol> syms;
  int node() {
    out.emplace_back();
    return static_cast<int>(out.size()) - 1;
  }
  int sym(const Symbol& a) {
    auto it = std::find(syms.begin(), syms.end(), a);
    if (it != syms.end()) return static_cast<int>(it - syms.begin());
    syms.push_back(a);
    return static_cast<int>(syms.size()) - 1;
  }
};

struct Frag {
  int start, accept;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, Enfa& nfa) : toks_(std::move(toks)), nfa_(nfa) {}

  Frag parse() {
    Frag f = alt();
    if (peek() != Tok::End) throw ParseError("regex: unexpected '" + toks_[pos_].text + "'");
    return f;
  }

 private:
  Tok peek() const { return toks_[pos_].kind; }

  Frag alt() {
    Frag f = cat();
    while (peek() == Tok::Union) {
      ++pos_;
      Frag g = cat();
      int s = nfa_.node(), e = nfa_.node();
      nfa_.out[s].push_back({f.start, -1});
      nfa_.out[s].push_back({g.start, -1});
      nfa_.out[f.accept].push_back({e, -1});
      nfa_.out[g.accept].push_back({e, -1});
      f = {s, e};
    }
    return f;
  }

  Frag cat() {
    if (!starts_atom()) throw ParseError("regex: expected a symbol or group");
    Frag f = post();
    while (starts_atom()) {
      Frag g = post();
      nfa_.out[f.accept].push_back({g.start, -1});
      f = {f.start, g.accept};
    }
    return f;
  }

  bool starts_atom() const { return peek() == Tok::Sym || peek() == Tok::LParen || peek() == Tok::Eps; }

  Frag post() {
    Frag f = atom();
    while (peek() == Tok::Star || peek() == Tok::Plus) {
      bool star = peek() == Tok::Star;
      ++pos_;
      int s = nfa_.node(), e = nfa_.node();
      nfa_.out[s].push_back({f.start, -1});
      if (star) nfa_.out[s].push_back({e, -1});
      nfa_.out[f.accept].push_back({f.start, -1});
      nfa_.out[f.accept].push_back({e, -1});
      f = {s, e};
    }
    return f;
  }

  Frag atom() {
    const Token& t = toks_[pos_++];
    if (t.kind == Tok::Sym) {
      int s = nfa_.node(), e = nfa_.node();
      nfa_.out[s].push_back({e, nfa_.sym(t.text)});
      return {s, e};
    }
    if (t.kind == Tok::Eps) {
      int s = nfa_.node(), e = nfa_.node();
      nfa_.out[s].push_back({e, -1});
      return {s, e};
    }
    Frag f = alt();
    if (peek() != Tok::RParen) throw ParseError("regex: missing ')'");
    ++pos_;
    return f;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  Enfa& nfa_;
};

}  // namespace

std::vector<Symbol> regex_symbols(const std::string& pattern) {
  auto toks = tokenize(pattern);
  Enfa scratch;
  Parser(toks, scratch).parse();
  std::vector<Symbol> out;
  for (const auto& t : toks)
    if (t.kind == Tok::Sym && std::find(out.begin(), out.end(), t.text) == out.end()) out.push_back(t.text);
  return out;
}

Vpa regex_to_vpa(const std::string& pattern, const PushdownAlphabet& alpha) {
  Enfa nfa;
  Frag f = Parser(tokenize(pattern), nfa).parse();
  for (const auto& a : nfa.syms)
    if (!alpha.contains(a)) throw Error("regex symbol '" + a + "' not in the alphabet");
  const int n = static_cast<int>(nfa.out.size());
  // epsilon closures
  std::vector<std::vector<int>> closure(n);
  for (int p = 0; p < n; ++p) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{p};
    seen[p] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      closure[p].push_back(u);
      for (const auto& e : nfa.out[u])
        if (e.sym < 0 && !seen[e.to]) {
          seen[e.to] = 1;
          stack.push_back(e.to);
        }
    }
  }
  // epsilon-free NFA restricted to states reachable from the start
  std::vector<int> id(n, -1);
  std::vector<int> order{f.start};
  id[f.start] = 0;
  struct Move {
    int from, sym, to;
  };
  std::vector<Move> moves;
  for (size_t i = 0; i < order.size(); ++i) {
    int p = order[i];
    for (int r : closure[p])
      for (const auto& e : nfa.out[r]) {
        if (e.sym < 0) continue;
        if (id[e.to] < 0) {
          id[e.to] = static_cast<int>(order.size());
          order.push_back(e.to);
        }
        moves.push_back({id[p], e.sym, id[e.to]});
      }
  }
  Vpa v;
  v.alphabet = alpha;
  for (size_t i = 0; i < order.size(); ++i) v.addState();
  StackSym dummy = v.addStackSymbol("d");
  v.initial = {0};
  for (size_t i = 0; i < order.size(); ++i) {
    const auto& cl = closure[order[i]];
    if (std::find(cl.begin(), cl.end(), f.accept) != cl.end()) v.final.insert(static_cast<StateId>(i));
  }
  for (const auto& m : moves) {
    const Symbol& a = nfa.syms[m.sym];
    switch (*alpha.kind(a)) {
      case LetterKind::Call:
        v.calls.push_back({m.from, a, m.to, dummy});
        break;
      case LetterKind::Internal:
        v.internals.push_back({m.from, a, m.to});
        break;
      case LetterKind::Return:
        v.returns.push_back({m.from, a, dummy, m.to});
        v.returns.push_back({m.from, a, kBottom, m.to});
        break;
    }
  }
  v.normalize();
  return v;
}

}  // namespace vplc
