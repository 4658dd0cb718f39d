#include "vplc/interp.hpp"

#include <algorithm>
#include <sstream>

#include "text_util.hpp"
#include "vplc/error.hpp"

namespace vplc {

std::vector<Element> to_vector(const ElementSet& s) {
  std::vector<Element> out;
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) out.push_back(static_cast<Element>(i));
  return out;
}

ElementSet make_set(int size, const std::vector<Element>& elems) {
  ElementSet s(size);
  for (auto e : elems) s.set(e);
  return s;
}

void Interpretation::validate() const {
  if (size < 1) throw Error("interpretation domain must be non-empty");
  auto in = [&](Element e) { return e >= 0 && e < size; };
  for (const auto& [n, ext] : concepts)
    for (auto e : ext)
      if (!in(e)) throw Error("concept " + n + " mentions element " + std::to_string(e) + " outside the domain");
  for (const auto& [n, ext] : roles)
    for (const auto& [a, b] : ext)
      if (!in(a) || !in(b)) throw Error("role " + n + " mentions an element outside the domain");
  for (const auto& [n, e] : individuals)
    if (!in(e)) throw Error("individual " + n + " is mapped outside the domain");
}

Binding SymbolBinding::natural(const Symbol& a) {
  if (a.size() > 1 && a.back() == '?') return {BindingKind::Test, a.substr(0, a.size() - 1)};
  if (a.size() > 2 && a.compare(a.size() - 2, 2, "^-") == 0) return {BindingKind::InverseRole, a.substr(0, a.size() - 2)};
  return {BindingKind::Role, a};
}

Binding SymbolBinding::resolve(const Symbol& a) const {
  auto it = explicitBindings.find(a);
  return it != explicitBindings.end() ? it->second : natural(a);
}

std::vector<Edge> edge_relation(const Interpretation& i, const SymbolBinding& b, const Symbol& a) {
  Binding bd = b.resolve(a);
  std::vector<Edge> out;
  if (bd.kind == BindingKind::Test) {
    auto it = i.concepts.find(bd.name);
    if (it == i.concepts.end()) throw Error("dangling name: concept " + bd.name);
    for (auto e : it->second) out.push_back({e, e});
    return out;
  }
  auto it = i.roles.find(bd.name);
  if (it == i.roles.end()) throw Error("dangling name: role " + bd.name);
  for (const auto& [x, y] : it->second) out.push_back(bd.kind == BindingKind::Role ? Edge{x, y} : Edge{y, x});
  std::sort(out.begin(), out.end());
  return out;
}

StructureReport structural_checks(const Interpretation& i) {
  StructureReport rep;
  std::vector<int> indeg(i.size, 0);
  std::vector<std::vector<Element>> succ(i.size);
  std::map<Edge, std::vector<std::string>> byPair;
  for (const auto& [name, ext] : i.roles)
    for (const auto& [a, b] : ext) {
      ++indeg[b];
      succ[a].push_back(b);
      byPair[{a, b}].push_back(name);
    }
  for (const auto& [pr, names] : byPair)
    if (names.size() >= 2) {
      rep.singleRole = false;
      if (rep.detail.empty())
        rep.detail = "pair (" + std::to_string(pr.first) + "," + std::to_string(pr.second) + ") related by " +
                     text::join(names, ", ");
      break;
    }
  for (Element e = 0; e < i.size; ++e)
    if (indeg[e] > 1) {
      rep.treeLike = false;
      if (rep.detail.empty()) rep.detail = "element " + std::to_string(e) + " has several incoming edges";
      return rep;
    }
  // With in-degree at most one, a cycle exists iff some element is not reached from a root.
  std::vector<char> seen(i.size, 0);
  std::vector<Element> stack;
  for (Element e = 0; e < i.size; ++e)
    if (indeg[e] == 0) {
      seen[e] = 1;
      stack.push_back(e);
    }
  while (!stack.empty()) {
    Element u = stack.back();
    stack.pop_back();
    for (auto v : succ[u])
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
  }
  for (Element e = 0; e < i.size; ++e)
    if (!seen[e]) {
      rep.treeLike = false;
      if (rep.detail.empty()) rep.detail = "element " + std::to_string(e) + " lies on a cycle";
      break;
    }
  return rep;
}

PointedInterpretation build_metaword(const Word& w, const std::vector<Symbol>& sigma) {
  if (w.empty()) throw Error("metawords need a non-empty word");
  PointedInterpretation p;
  auto& i = p.interp;
  i.size = static_cast<int>(w.size());
  std::set<Symbol> letters(sigma.begin(), sigma.end());
  letters.insert(w.begin(), w.end());
  for (const auto& a : letters)
    for (auto k : {LetterKind::Call, LetterKind::Internal, LetterKind::Return}) i.roles[decorate(a, k)];
  auto& x = i.roles[kSeparator];
  for (Element e = 0; e < i.size; ++e) {
    if (e + 1 < i.size) x.insert({e, e + 1});
    for (auto k : {LetterKind::Call, LetterKind::Internal, LetterKind::Return}) i.roles[decorate(w[e], k)].insert({e, e});
  }
  p.point = 0;
  return p;
}

bool is_sigma_friendly(const PointedInterpretation& p, const std::vector<Symbol>& sigma) {
  const auto& i = p.interp;
  auto loops = [&](const std::string& role, Element e) {
    auto it = i.roles.find(role);
    return it != i.roles.end() && it->second.count({e, e}) > 0;
  };
  std::vector<std::vector<Element>> xs(i.size);
  if (auto it = i.roles.find(kSeparator); it != i.roles.end())
    for (const auto& [a, b] : it->second) xs[a].push_back(b);
  std::vector<char> seen(i.size, 0);
  std::vector<Element> stack{p.point};
  seen[p.point] = 1;
  while (!stack.empty()) {
    Element e = stack.back();
    stack.pop_back();
    if (loops(kSeparator, e)) return false;
    int full = 0, touched = 0;
    for (const auto& a : sigma) {
      int n = 0;
      for (auto k : {LetterKind::Call, LetterKind::Internal, LetterKind::Return}) n += loops(decorate(a, k), e);
      if (n == 3) ++full;
      if (n > 0) ++touched;
    }
    if (full != 1 || touched != 1) return false;
    for (auto f : xs[e])
      if (!seen[f]) {
        seen[f] = 1;
        stack.push_back(f);
      }
  }
  return true;
}

std::string print_interpretation(const Interpretation& i) {
  std::ostringstream out;
  out << "elements: " << i.size << "\n";
  for (const auto& [n, ext] : i.concepts) {
    out << "concept " << n << " = {";
    bool first = true;
    for (auto e : ext) {
      out << (first ? "" : ",") << e;
      first = false;
    }
    out << "}\n";
  }
  for (const auto& [n, ext] : i.roles) {
    out << "role " << n << " = {";
    bool first = true;
    for (const auto& [a, b] : ext) {
      out << (first ? "" : ",") << "(" << a << "," << b << ")";
      first = false;
    }
    out << "}\n";
  }
  for (const auto& [n, e] : i.individuals) out << "individual " << n << " = " << e << "\n";
  return out.str();
}

namespace {

std::vector<int> parse_ints(const std::string& body, int line) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    auto t = text::trim(cur);
    cur.clear();
    if (t.empty()) return;
    int v;
    if (!text::parse_int(t, v)) throw ParseError("bad element '" + t + "'", line);
    out.push_back(v);
  };
  for (char c : body) {
    if (c == ',' || c == '(' || c == ')') flush();
    else cur += c;
  }
  flush();
  return out;
}

}  // namespace

Interpretation parse_interpretation(const std::string& src) {
  Interpretation i;
  bool haveSize = false;
  for (const auto& l : text::content_lines(src)) {
    const auto& t = l.text;
    if (text::starts_with(t, "elements:")) {
      if (!text::parse_int(text::trim(t.substr(9)), i.size)) throw ParseError("bad element count", l.number);
      haveSize = true;
      continue;
    }
    auto eq = t.find(" = ");
    if (eq == std::string::npos) throw ParseError("expected 'kind name = value'", l.number);
    auto head = text::trim(t.substr(0, eq));
    auto body = text::trim(t.substr(eq + 3));
    auto sp = head.find(' ');
    if (sp == std::string::npos) throw ParseError("expected 'kind name = value'", l.number);
    auto kind = head.substr(0, sp);
    auto name = text::trim(head.substr(sp + 1));
    if (kind == "individual") {
      int e;
      if (!text::parse_int(body, e)) throw ParseError("bad element for individual " + name, l.number);
      i.individuals[name] = e;
      continue;
    }
    if (body.size() < 2 || body.front() != '{' || body.back() != '}') throw ParseError("expected a {...} set", l.number);
    auto inner = body.substr(1, body.size() - 2);
    auto nums = parse_ints(inner, l.number);
    if (kind == "concept") {
      auto& ext = i.concepts[name];
      ext.insert(nums.begin(), nums.end());
    } else if (kind == "role") {
      if (nums.size() % 2) throw ParseError("role " + name + " needs pairs", l.number);
      auto& ext = i.roles[name];
      for (size_t k = 0; k < nums.size(); k += 2) ext.insert({nums[k], nums[k + 1]});
    } else {
      throw ParseError("unknown declaration '" + kind + "'", l.number);
    }
  }
  if (!haveSize) throw ParseError("missing 'elements:' line");
  try {
    i.validate();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return i;
}

}  // namespace vplc
