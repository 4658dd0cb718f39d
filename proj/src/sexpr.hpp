#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "vplc/concepts.hpp"
#include "vplc/error.hpp"

namespace vplc {

// Minimal s-expression reader: atoms, double-quoted strings with backslash escapes, lists.
struct SExpr {
  bool isAtom = false;
  bool isString = false;
  std::string text;
  std::vector<SExpr> list;
  int line = 0;
};

inline std::vector<SExpr> parse_sexprs(const std::string& s, int firstLine = 1) {
  std::vector<SExpr> top;
  std::vector<SExpr> stack;
  int line = firstLine;
  size_t i = 0;
  auto emit = [&](SExpr e) {
    if (stack.empty()) top.push_back(std::move(e));
    else stack.back().list.push_back(std::move(e));
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (c == '(') {
      SExpr e;
      e.line = line;
      stack.push_back(std::move(e));
      ++i;
    } else if (c == ')') {
      if (stack.empty()) throw ParseError("unbalanced ')'", line);
      SExpr e = std::move(stack.back());
      stack.pop_back();
      emit(std::move(e));
      ++i;
    } else if (c == '"') {
      SExpr e;
      e.isAtom = e.isString = true;
      e.line = line;
      ++i;
      while (i < s.size() && s[i] != '"') {
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        if (s[i] == '\n') ++line;
        e.text += s[i++];
      }
      if (i >= s.size()) throw ParseError("unterminated string", e.line);
      ++i;
      emit(std::move(e));
    } else {
      SExpr e;
      e.isAtom = true;
      e.line = line;
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')' &&
             s[i] != '"')
        e.text += s[i++];
      emit(std::move(e));
    }
  }
  if (!stack.empty()) throw ParseError("missing ')'", stack.back().line);
  return top;
}

LangExpr language_from_sexpr(const SExpr& e, const std::string& baseDir);
Concept concept_from_sexpr(const SExpr& e, const std::string& baseDir);

}  // namespace vplc
