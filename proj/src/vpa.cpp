#include "vplc/vpa.hpp"

#include <algorithm>

#include "text_util.hpp"
#include "vplc/error.hpp"

namespace vplc {

PushdownAlphabet::PushdownAlphabet(const std::vector<Symbol>& calls, const std::vector<Symbol>& internals,
                                   const std::vector<Symbol>& returns) {
  for (const auto& a : calls) add(a, LetterKind::Call);
  for (const auto& a : internals) add(a, LetterKind::Internal);
  for (const auto& a : returns) add(a, LetterKind::Return);
}

void PushdownAlphabet::add(const Symbol& a, LetterKind k) {
  if (a.empty()) throw Error("empty symbol in alphabet");
  auto it = kinds_.find(a);
  if (it != kinds_.end()) {
    if (it->second != k) throw Error("symbol '" + a + "' declared with two kinds");
    return;
  }
  kinds_[a] = k;
  auto& bucket = k == LetterKind::Call ? calls_ : k == LetterKind::Return ? returns_ : internals_;
  bucket.insert(std::lower_bound(bucket.begin(), bucket.end(), a), a);
}

std::optional<LetterKind> PushdownAlphabet::kind(const Symbol& a) const {
  auto it = kinds_.find(a);
  if (it == kinds_.end()) return std::nullopt;
  return it->second;
}

std::vector<Symbol> PushdownAlphabet::symbols() const {
  std::vector<Symbol> out;
  for (const auto& [a, k] : kinds_) out.push_back(a);
  return out;
}

StateId Vpa::addState(const std::string& name) {
  stateNames.push_back(name.empty() ? "q" + std::to_string(stateNames.size()) : name);
  return static_cast<StateId>(stateNames.size()) - 1;
}

StackSym Vpa::addStackSymbol(const std::string& name) {
  stackNames.push_back(name.empty() ? "g" + std::to_string(stackNames.size()) : name);
  return static_cast<StackSym>(stackNames.size()) - 1;
}

void Vpa::validate() const {
  auto state_ok = [&](StateId q) { return q >= 0 && q < numStates(); };
  if (stackNames.empty() || stackNames[0] != "_bot") throw Error("stack symbol 0 must be the bottom symbol");
  for (auto q : initial)
    if (!state_ok(q)) throw Error("initial state out of range");
  for (auto q : final)
    if (!state_ok(q)) throw Error("final state out of range");
  auto letter_kind = [&](const Symbol& a, LetterKind expected, const char* what) {
    auto k = alphabet.kind(a);
    if (!k) throw Error(std::string(what) + " rule uses unknown symbol '" + a + "'");
    if (*k != expected) throw Error(std::string(what) + " rule uses symbol '" + a + "' of another kind");
  };
  for (const auto& r : calls) {
    letter_kind(r.letter, LetterKind::Call, "call");
    if (!state_ok(r.from) || !state_ok(r.to)) throw Error("call rule state out of range");
    if (r.push <= kBottom || r.push > numStack()) throw Error("call rule must push a non-bottom stack symbol");
  }
  for (const auto& r : returns) {
    letter_kind(r.letter, LetterKind::Return, "return");
    if (!state_ok(r.from) || !state_ok(r.to)) throw Error("return rule state out of range");
    if (r.pop < kBottom || r.pop > numStack()) throw Error("return rule pops an unknown stack symbol");
  }
  for (const auto& r : internals) {
    letter_kind(r.letter, LetterKind::Internal, "internal");
    if (!state_ok(r.from) || !state_ok(r.to)) throw Error("internal rule state out of range");
  }
}

void Vpa::normalize() {
  auto dedupe = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(calls);
  dedupe(returns);
  dedupe(internals);
}

std::vector<Configuration> step(const Vpa& a, const Configuration& c, const Symbol& letter) {
  auto k = a.alphabet.kind(letter);
  if (!k) throw Error("symbol '" + letter + "' not in the automaton's alphabet");
  std::vector<Configuration> out;
  switch (*k) {
    case LetterKind::Call:
      for (const auto& r : a.calls)
        if (r.from == c.state && r.letter == letter) {
          Configuration n{r.to, c.stack};
          n.stack.push_back(r.push);
          out.push_back(std::move(n));
        }
      break;
    case LetterKind::Internal:
      for (const auto& r : a.internals)
        if (r.from == c.state && r.letter == letter) out.push_back({r.to, c.stack});
      break;
    case LetterKind::Return: {
      StackSym top = c.stack.empty() ? kBottom : c.stack.back();
      for (const auto& r : a.returns)
        if (r.from == c.state && r.letter == letter && r.pop == top) {
          Configuration n{r.to, c.stack};
          if (!n.stack.empty()) n.stack.pop_back();
          out.push_back(std::move(n));
        }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool accepts(const Vpa& a, const Word& w) {
  std::set<Configuration> current;
  for (auto q : a.initial) current.insert({q, {}});
  for (const auto& letter : w) {
    std::set<Configuration> next;
    for (const auto& c : current)
      for (auto& n : step(a, c, letter)) next.insert(std::move(n));
    current = std::move(next);
    if (current.empty()) return false;
  }
  for (const auto& c : current)
    if (a.final.count(c.state)) return true;
  return false;
}

Vpa intersection(const Vpa& a, const Vpa& b) {
  if (!(a.alphabet == b.alphabet)) throw Error("intersection requires identical pushdown alphabets");
  Vpa p;
  p.alphabet = a.alphabet;
  const int nb = b.numStates();
  for (int i = 0; i < a.numStates(); ++i)
    for (int j = 0; j < nb; ++j) p.addState(a.stateNames[i] + "|" + b.stateNames[j]);
  p.stackNames = {"_bot"};
  const int mb = b.numStack();
  for (int g = 1; g <= a.numStack(); ++g)
    for (int h = 1; h <= mb; ++h) p.addStackSymbol(a.stackNames[g] + "|" + b.stackNames[h]);
  auto sid = [&](StateId x, StateId y) { return x * nb + y; };
  auto gid = [&](StackSym g, StackSym h) { return (g - 1) * mb + h; };
  for (auto x : a.initial)
    for (auto y : b.initial) p.initial.insert(sid(x, y));
  for (auto x : a.final)
    for (auto y : b.final) p.final.insert(sid(x, y));
  for (const auto& r : a.calls)
    for (const auto& s : b.calls)
      if (r.letter == s.letter) p.calls.push_back({sid(r.from, s.from), r.letter, sid(r.to, s.to), gid(r.push, s.push)});
  for (const auto& r : a.returns)
    for (const auto& s : b.returns) {
      if (r.letter != s.letter) continue;
      if (r.pop == kBottom && s.pop == kBottom)
        p.returns.push_back({sid(r.from, s.from), r.letter, kBottom, sid(r.to, s.to)});
      else if (r.pop != kBottom && s.pop != kBottom)
        p.returns.push_back({sid(r.from, s.from), r.letter, gid(r.pop, s.pop), sid(r.to, s.to)});
    }
  for (const auto& r : a.internals)
    for (const auto& s : b.internals)
      if (r.letter == s.letter) p.internals.push_back({sid(r.from, s.from), r.letter, sid(r.to, s.to)});
  p.normalize();
  return p;
}

Vpa rnsn_vpa(const Symbol& call, const Symbol& ret) {
  Vpa a;
  a.alphabet = PushdownAlphabet({call}, {}, {ret});
  StateId start = a.addState("start"), up = a.addState("up"), down = a.addState("down"), done = a.addState("done");
  StackSym first = a.addStackSymbol("first"), more = a.addStackSymbol("more");
  a.initial = {start};
  a.final = {start, done};
  a.calls = {{start, call, up, first}, {up, call, up, more}};
  a.returns = {{up, ret, more, down}, {up, ret, first, done}, {down, ret, more, down}, {down, ret, first, done}};
  a.normalize();
  return a;
}

Vpa goller_vpa(const Symbol& call, const Symbol& internal, const Symbol& ret) {
  Vpa a;
  a.alphabet = PushdownAlphabet({call}, {internal}, {ret});
  StateId start = a.addState("start"), up = a.addState("up"), mid = a.addState("mid"), done = a.addState("done");
  StackSym first = a.addStackSymbol("first"), more = a.addStackSymbol("more");
  a.initial = {start};
  a.final = {done};
  a.calls = {{start, call, up, first}, {up, call, up, more}};
  a.internals = {{start, internal, done}, {up, internal, mid}};
  a.returns = {{mid, ret, more, mid}, {mid, ret, first, done}};
  a.normalize();
  return a;
}

// ---- DOCA ----

StateId Doca::addState(const std::string& name) {
  stateNames.push_back(name.empty() ? "p" + std::to_string(stateNames.size()) : name);
  return static_cast<StateId>(stateNames.size()) - 1;
}

void Doca::validate() const {
  if (stateNames.empty()) throw Error("DOCA has no states");
  if (initial < 0 || initial >= numStates()) throw Error("DOCA initial state out of range");
  for (auto q : final)
    if (q < 0 || q >= numStates()) throw Error("DOCA final state out of range");
  std::set<Symbol> sigma(alphabet.begin(), alphabet.end());
  for (const auto& [key, mv] : moves) {
    const auto& [q, a, zero] = key;
    if (q < 0 || q >= numStates() || mv.to < 0 || mv.to >= numStates())
      throw Error("DOCA transition state out of range");
    if (!sigma.count(a)) throw Error("DOCA transition uses unknown letter '" + a + "'");
    if (mv.delta < -1 || mv.delta > 1) throw Error("DOCA delta must be -1, 0 or +1");
    if (zero && mv.delta == -1) throw Error("DOCA decrements at zero in state " + stateNames[q]);
  }
}

bool doca_accepts(const Doca& d, const Word& w) {
  StateId q = d.initial;
  long counter = 0;
  for (const auto& a : w) {
    auto it = d.moves.find({q, a, counter == 0});
    if (it == d.moves.end()) return false;
    q = it->second.to;
    counter += it->second.delta;
  }
  return d.final.count(q) > 0;
}

Doca doca_complement(const Doca& d) {
  Doca c = d;
  StateId sink = -1;
  for (StateId q = 0; q < d.numStates(); ++q)
    for (const auto& a : d.alphabet)
      for (bool zero : {true, false}) {
        if (c.moves.count({q, a, zero})) continue;
        if (sink < 0) sink = c.addState("sink");
        c.moves[{q, a, zero}] = {sink, 0};
      }
  if (sink >= 0)
    for (const auto& a : d.alphabet)
      for (bool zero : {true, false}) c.moves[{sink, a, zero}] = {sink, 0};
  c.final.clear();
  for (StateId q = 0; q < c.numStates(); ++q)
    if (!d.final.count(q)) c.final.insert(q);
  return c;
}

const Symbol kSeparator = "x";

Symbol decorate(const Symbol& a, LetterKind k) {
  const char* m = k == LetterKind::Call ? "c" : k == LetterKind::Return ? "r" : "i";
  return "(" + a + "," + m + ")";
}

PushdownAlphabet decorated_alphabet(const std::vector<Symbol>& sigma) {
  PushdownAlphabet alpha;
  for (const auto& a : sigma) {
    alpha.add(decorate(a, LetterKind::Call), LetterKind::Call);
    alpha.add(decorate(a, LetterKind::Internal), LetterKind::Internal);
    alpha.add(decorate(a, LetterKind::Return), LetterKind::Return);
  }
  alpha.add(kSeparator, LetterKind::Internal);
  return alpha;
}

Vpa doca_to_vpa(const Doca& d, bool includeEmpty) {
  d.validate();
  Vpa v;
  v.alphabet = decorated_alphabet(d.alphabet);
  const int n = d.numStates();
  // main(q, zero): before a letter; mid(q, zero): right after a letter.
  StateId start = v.addState("start");
  std::vector<StateId> mainSt(2 * n), midSt(2 * n);
  for (int q = 0; q < n; ++q)
    for (int z = 0; z < 2; ++z) {
      mainSt[2 * q + z] = v.addState(d.stateNames[q] + (z ? "_z" : "_n"));
      midSt[2 * q + z] = v.addState(d.stateNames[q] + (z ? "_z'" : "_n'"));
    }
  StackSym fromZero = v.addStackSymbol("z"), fromNonzero = v.addStackSymbol("n");
  v.initial = {start};
  if (includeEmpty && d.final.count(d.initial)) v.final.insert(start);
  for (int q = 0; q < n; ++q)
    for (int z = 0; z < 2; ++z) {
      if (d.final.count(q)) v.final.insert(midSt[2 * q + z]);
      v.internals.push_back({midSt[2 * q + z], kSeparator, mainSt[2 * q + z]});
    }
  for (const auto& [key, mv] : d.moves) {
    const auto& [q, a, zero] = key;
    std::vector<StateId> sources{mainSt[2 * q + (zero ? 1 : 0)]};
    if (q == d.initial && zero) sources.push_back(start);
    for (auto src : sources) {
      if (mv.delta == 1) {
        v.calls.push_back({src, decorate(a, LetterKind::Call), midSt[2 * mv.to], zero ? fromZero : fromNonzero});
      } else if (mv.delta == 0) {
        v.internals.push_back({src, decorate(a, LetterKind::Internal), midSt[2 * mv.to + (zero ? 1 : 0)]});
      } else {
        v.returns.push_back({src, decorate(a, LetterKind::Return), fromNonzero, midSt[2 * mv.to]});
        v.returns.push_back({src, decorate(a, LetterKind::Return), fromZero, midSt[2 * mv.to + 1]});
      }
    }
  }
  v.normalize();
  return v;
}

// ---- text formats ----

namespace {

std::vector<std::string> after_colon(const text::Line& l) {
  auto pos = l.text.find(':');
  return text::split_ws(l.text.substr(pos + 1));
}

}  // namespace

Vpa parse_vpa(const std::string& src) {
  Vpa a;
  std::map<std::string, StateId> states;
  std::map<std::string, StackSym> stack{{"_bot", kBottom}};
  std::vector<Symbol> calls, internals, returns;
  auto state = [&](const std::string& name) {
    auto it = states.find(name);
    if (it != states.end()) return it->second;
    return states[name] = a.addState(name);
  };
  auto stack_sym = [&](const std::string& name) {
    auto it = stack.find(name);
    if (it != stack.end()) return it->second;
    a.stackNames.push_back(name);
    return stack[name] = static_cast<StackSym>(a.stackNames.size()) - 1;
  };
  std::vector<std::string> initial, final;
  struct Pending {
    int line;
    std::vector<std::string> toks;
  };
  std::vector<Pending> rules;
  for (const auto& l : text::content_lines(src)) {
    auto toks = text::split_ws(l.text);
    const auto& head = toks[0];
    if (head == "calls:") calls = after_colon(l);
    else if (head == "returns:") returns = after_colon(l);
    else if (head == "internals:") internals = after_colon(l);
    else if (head == "states:") for (const auto& s : after_colon(l)) state(s);
    else if (head == "initial:") initial = after_colon(l);
    else if (head == "final:") final = after_colon(l);
    else if (head == "stack:") for (const auto& s : after_colon(l)) stack_sym(s);
    else if (head == "call" || head == "ret" || head == "int") rules.push_back({l.number, toks});
    else throw ParseError("unknown VPA directive '" + head + "'", l.number);
  }
  try {
    a.alphabet = PushdownAlphabet(calls, internals, returns);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  for (const auto& r : rules) {
    const auto& t = r.toks;
    if (t[0] == "call") {
      if (t.size() != 5) throw ParseError("call rule needs: call q a q' g", r.line);
      if (t[4] == "_bot") throw ParseError("a call cannot push the bottom symbol", r.line);
      a.calls.push_back({state(t[1]), t[2], state(t[3]), stack_sym(t[4])});
    } else if (t[0] == "ret") {
      if (t.size() != 5) throw ParseError("return rule needs: ret q a g q'", r.line);
      a.returns.push_back({state(t[1]), t[2], stack_sym(t[3]), state(t[4])});
    } else {
      if (t.size() != 4) throw ParseError("internal rule needs: int q a q'", r.line);
      a.internals.push_back({state(t[1]), t[2], state(t[3])});
    }
    auto k = a.alphabet.kind(t[2]);
    auto want = t[0] == "call" ? LetterKind::Call : t[0] == "ret" ? LetterKind::Return : LetterKind::Internal;
    if (!k) throw ParseError("undeclared symbol '" + t[2] + "'", r.line);
    if (*k != want) throw ParseError("symbol '" + t[2] + "' used with the wrong rule kind", r.line);
  }
  for (const auto& s : initial) a.initial.insert(state(s));
  for (const auto& s : final) a.final.insert(state(s));
  a.normalize();
  a.validate();
  return a;
}

std::string print_vpa(const Vpa& a) {
  std::ostringstream out;
  out << "calls: " << text::join(a.alphabet.calls(), " ") << "\n";
  out << "returns: " << text::join(a.alphabet.returns(), " ") << "\n";
  out << "internals: " << text::join(a.alphabet.internals(), " ") << "\n";
  out << "states: " << text::join(a.stateNames, " ") << "\n";
  std::vector<std::string> names;
  for (auto q : a.initial) names.push_back(a.stateNames[q]);
  out << "initial: " << text::join(names, " ") << "\n";
  names.clear();
  for (auto q : a.final) names.push_back(a.stateNames[q]);
  out << "final: " << text::join(names, " ") << "\n";
  std::vector<std::string> stack(a.stackNames.begin() + 1, a.stackNames.end());
  out << "stack: " << text::join(stack, " ") << "\n";
  for (const auto& r : a.calls)
    out << "call " << a.stateNames[r.from] << " " << r.letter << " " << a.stateNames[r.to] << " "
        << a.stackNames[r.push] << "\n";
  for (const auto& r : a.returns)
    out << "ret " << a.stateNames[r.from] << " " << r.letter << " " << (r.pop == kBottom ? "_bot" : a.stackNames[r.pop])
        << " " << a.stateNames[r.to] << "\n";
  for (const auto& r : a.internals)
    out << "int " << a.stateNames[r.from] << " " << r.letter << " " << a.stateNames[r.to] << "\n";
  return out.str();
}

Doca parse_doca(const std::string& src) {
  Doca d;
  std::map<std::string, StateId> states;
  auto state = [&](const std::string& name) {
    auto it = states.find(name);
    if (it != states.end()) return it->second;
    return states[name] = d.addState(name);
  };
  std::set<Symbol> seenLetters;
  bool explicitAlphabet = false;
  std::string initial;
  std::vector<std::string> final;
  for (const auto& l : text::content_lines(src)) {
    auto toks = text::split_ws(l.text);
    if (toks[0] == "alphabet:") {
      d.alphabet = after_colon(l);
      explicitAlphabet = true;
    } else if (toks[0] == "states:") {
      for (const auto& s : after_colon(l)) state(s);
    } else if (toks[0] == "initial:") {
      auto v = after_colon(l);
      if (v.size() != 1) throw ParseError("exactly one initial state expected", l.number);
      initial = v[0];
    } else if (toks[0] == "final:") {
      final = after_colon(l);
    } else {
      if (toks.size() != 6 || toks[3] != "->")
        throw ParseError("transition needs: state letter zero|nonzero -> state +1|0|-1", l.number);
      bool zero;
      if (toks[2] == "zero") zero = true;
      else if (toks[2] == "nonzero") zero = false;
      else throw ParseError("zero flag must be 'zero' or 'nonzero'", l.number);
      int delta;
      if (!text::parse_int(toks[5], delta) || delta < -1 || delta > 1)
        throw ParseError("delta must be +1, 0 or -1", l.number);
      if (zero && delta == -1) throw ParseError("decrement at zero is forbidden", l.number);
      StateId from = state(toks[0]);
      StateId to = state(toks[4]);
      if (d.moves.count({from, toks[1], zero})) throw ParseError("duplicate transition (not deterministic)", l.number);
      d.moves[{from, toks[1], zero}] = {to, delta};
      if (!seenLetters.count(toks[1])) {
        seenLetters.insert(toks[1]);
        if (!explicitAlphabet) d.alphabet.push_back(toks[1]);
      }
    }
  }
  if (initial.empty()) throw ParseError("missing 'initial:'");
  d.initial = state(initial);
  for (const auto& s : final) d.final.insert(state(s));
  try {
    d.validate();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return d;
}

std::string print_doca(const Doca& d) {
  std::ostringstream out;
  out << "alphabet: " << text::join(d.alphabet, " ") << "\n";
  out << "states: " << text::join(d.stateNames, " ") << "\n";
  out << "initial: " << d.stateNames[d.initial] << "\n";
  std::vector<std::string> f;
  for (auto q : d.final) f.push_back(d.stateNames[q]);
  out << "final: " << text::join(f, " ") << "\n";
  for (const auto& [key, mv] : d.moves) {
    const auto& [q, a, zero] = key;
    out << d.stateNames[q] << " " << a << " " << (zero ? "zero" : "nonzero") << " -> " << d.stateNames[mv.to] << " "
        << (mv.delta > 0 ? "+1" : std::to_string(mv.delta)) << "\n";
  }
  return out.str();
}

Word parse_word(const std::string& s) { return text::split_ws(s); }

std::string print_word(const Word& w) { return text::join(w, " "); }

}  // namespace vplc
