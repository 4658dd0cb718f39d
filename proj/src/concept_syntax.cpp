#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sexpr.hpp"
#include "text_util.hpp"
#include "vplc/concepts.hpp"
#include "vplc/error.hpp"

namespace vplc {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Bare when the reader would give the name back unchanged, quoted otherwise.
std::string name_token(const std::string& s) {
  bool bare = !s.empty() && std::none_of(s.begin(), s.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' || c == '#';
  });
  return bare ? s : quote(s);
}

// Multi-line automaton text packed into one string, lines separated by ';'.
std::string pack_lines(const std::string& s) {
  std::string out;
  for (const auto& l : text::content_lines(s)) {
    if (!out.empty()) out += "; ";
    out += l.text;
  }
  return out;
}

std::string unpack_lines(const std::string& s) {
  std::string out = s;
  for (auto& c : out)
    if (c == ';') c = '\n';
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string LangExpr::key() const {
  switch (kind) {
    case Kind::Regex:
      return "(re " + quote(pattern) + ")";
    case Kind::Rnsn:
      return "(rnsn " + name_token(args[0]) + " " + name_token(args[1]) + ")";
    case Kind::Goller:
      if (args[2] == args[0] + "^-") return "(goller " + name_token(args[0]) + " " + name_token(args[1]) + ")";
      return "(goller " + name_token(args[0]) + " " + name_token(args[1]) + " " + name_token(args[2]) + ")";
    case Kind::Ldru:
      return "(ldru)";
    case Kind::Vpa:
      return "(vpa-text " + quote(pack_lines(print_vpa(*vpa))) + ")";
    case Kind::Doca: {
      const char* head = docaMode == DocaMode::All ? "doca" : docaMode == DocaMode::NonEmpty ? "doca+" : "co-doca+";
      return std::string("(") + head + " " + quote(pack_lines(print_doca(*doca))) + ")";
    }
  }
  return "";
}

std::string print_concept(const Concept& c) {
  if (!c->key.empty()) return c->key;
  switch (c->kind) {
    case ConceptKind::Top:
      return "top";
    case ConceptKind::Atom:
      return "(atom " + name_token(c->name) + ")";
    case ConceptKind::Nominal:
      return "(nom " + name_token(c->name) + ")";
    case ConceptKind::Self:
      return "(self " + name_token(c->name) + ")";
    case ConceptKind::Not:
      return "(not " + print_concept(c->kids[0]) + ")";
    case ConceptKind::And:
    case ConceptKind::Or: {
      std::string out = c->kind == ConceptKind::And ? "(and" : "(or";
      for (const auto& k : c->kids) out += " " + print_concept(k);
      return out + ")";
    }
    case ConceptKind::Exists:
      return "(ex " + c->lang->key() + " " + print_concept(c->kids[0]) + ")";
    case ConceptKind::Forall:
      return "(all " + c->lang->key() + " " + print_concept(c->kids[0]) + ")";
  }
  return "";
}

LangExpr language_from_sexpr(const SExpr& e, const std::string& baseDir) {
  if (e.isAtom || e.list.empty() || !e.list[0].isAtom || e.list[0].isString)
    throw ParseError("expected a language form such as (re \"...\")", e.line);
  const std::string& head = e.list[0].text;
  auto arg = [&](size_t k) -> const std::string& {
    if (k >= e.list.size() || !e.list[k].isAtom) throw ParseError("'" + head + "' is missing an argument", e.line);
    return e.list[k].text;
  };
  auto arity = [&](size_t n) {
    if (e.list.size() != n + 1) throw ParseError("'" + head + "' expects " + std::to_string(n) + " argument(s)", e.line);
  };
  try {
    if (head == "re") {
      arity(1);
      LangExpr l = LangExpr::regex(arg(1));
      regex_symbols(l.pattern);
      return l;
    }
    if (head == "rnsn") {
      arity(2);
      return LangExpr::rnsn(arg(1), arg(2));
    }
    if (head == "goller") {
      if (e.list.size() == 3) return LangExpr::goller(arg(1), arg(2), arg(1) + "^-");
      arity(3);
      return LangExpr::goller(arg(1), arg(2), arg(3));
    }
    if (head == "ldru") {
      arity(0);
      return LangExpr::ldru();
    }
    if (head == "vpa") {
      arity(1);
      std::filesystem::path p(arg(1));
      if (p.is_relative()) p = std::filesystem::path(baseDir) / p;
      return LangExpr::automaton(parse_vpa(read_file(p.string())));
    }
    if (head == "vpa-text") {
      arity(1);
      return LangExpr::automaton(parse_vpa(unpack_lines(arg(1))));
    }
    if (head == "doca" || head == "doca+" || head == "co-doca+") {
      arity(1);
      DocaMode m = head == "doca" ? DocaMode::All : head == "doca+" ? DocaMode::NonEmpty : DocaMode::ComplementNonEmpty;
      return LangExpr::decorated(parse_doca(unpack_lines(arg(1))), m);
    }
  } catch (const ParseError& err) {
    if (err.line() > 0) throw;
    throw ParseError(err.what(), e.line);
  }
  throw ParseError("unknown language form '" + head + "'", e.line);
}

Concept concept_from_sexpr(const SExpr& e, const std::string& baseDir) {
  if (e.isAtom) {
    if (e.text == "top" && !e.isString) return cpt::top();
    if ((e.text == "bot" || e.text == "bottom") && !e.isString) return cpt::bottom();
    throw ParseError("unexpected atom '" + e.text + "' where a concept was expected", e.line);
  }
  if (e.list.empty() || !e.list[0].isAtom) throw ParseError("expected a concept form", e.line);
  const std::string& head = e.list[0].text;
  auto name = [&]() -> const std::string& {
    if (e.list.size() != 2 || !e.list[1].isAtom) throw ParseError("'" + head + "' expects one name", e.line);
    return e.list[1].text;
  };
  auto kids = [&](size_t from) {
    std::vector<Concept> out;
    for (size_t k = from; k < e.list.size(); ++k) out.push_back(concept_from_sexpr(e.list[k], baseDir));
    return out;
  };
  if (head == "atom") return cpt::atom(name());
  if (head == "nom") return cpt::nominal(name());
  if (head == "self") return cpt::self(name());
  if (head == "not") {
    if (e.list.size() != 2) throw ParseError("'not' expects one concept", e.line);
    return cpt::neg(concept_from_sexpr(e.list[1], baseDir));
  }
  if (head == "and" || head == "or") {
    if (e.list.size() < 2) throw ParseError("'" + head + "' expects at least one concept", e.line);
    auto ks = kids(1);
    if (ks.size() == 1) return ks[0];
    return head == "and" ? cpt::conj(ks) : cpt::disj(ks);
  }
  if (head == "ex" || head == "all") {
    if (e.list.size() != 3) throw ParseError("'" + head + "' expects a language and a concept", e.line);
    auto l = language_from_sexpr(e.list[1], baseDir);
    auto c = concept_from_sexpr(e.list[2], baseDir);
    return head == "ex" ? cpt::exists(l, c) : cpt::forall(l, c);
  }
  throw ParseError("unknown concept form '" + head + "'", e.line);
}

Concept parse_concept(const std::string& text, const std::string& baseDir) {
  auto es = parse_sexprs(text);
  if (es.size() != 1) throw ParseError("expected exactly one concept");
  return concept_from_sexpr(es[0], baseDir);
}

LangExpr parse_language(const std::string& text, const std::string& baseDir) {
  auto es = parse_sexprs(text);
  if (es.size() != 1) throw ParseError("expected exactly one language");
  return language_from_sexpr(es[0], baseDir);
}

std::string print_kb(const Kb& kb) {
  std::ostringstream out;
  for (const auto& as : kb.abox) {
    if (as.isRole)
      out << (as.negated ? "assert-not-role " : "assert-role ") << as.role << " " << as.a << " " << as.b << "\n";
    else
      out << (as.negated ? "assert-not " : "assert ") << print_concept(as.body) << " " << as.a << "\n";
  }
  for (const auto& g : kb.tbox.gcis) out << "gci " << print_concept(g.lhs) << " " << print_concept(g.rhs) << "\n";
  for (const auto& r : kb.tbox.rias) out << "ria " << r.sub << " " << r.sup << "\n";
  return out.str();
}

Kb parse_kb(const std::string& src, const std::string& baseDir) {
  Kb kb;
  std::istringstream in(src);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    auto t = text::trim(raw);
    if (t.empty() || t[0] == '#') continue;
    auto sp = t.find(' ');
    std::string head = t.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : t.substr(sp + 1);
    try {
      if (head == "ria") {
        auto toks = text::split_ws(rest);
        if (toks.size() != 2) throw ParseError("ria expects two role names");
        kb.tbox.rias.push_back({toks[0], toks[1]});
        continue;
      }
      auto es = parse_sexprs(rest, n);
      if (head == "gci") {
        if (es.size() != 2) throw ParseError("gci expects two concepts");
        kb.tbox.gcis.push_back({concept_from_sexpr(es[0], baseDir), concept_from_sexpr(es[1], baseDir)});
      } else if (head == "assert" || head == "assert-not") {
        if (es.size() != 2 || !es[1].isAtom) throw ParseError(head + " expects a concept and an individual");
        Assertion as;
        as.negated = head == "assert-not";
        as.body = concept_from_sexpr(es[0], baseDir);
        as.a = es[1].text;
        kb.abox.push_back(as);
      } else if (head == "assert-role" || head == "assert-not-role") {
        auto toks = text::split_ws(rest);
        if (toks.size() != 3) throw ParseError(head + " expects a role and two individuals");
        Assertion as;
        as.isRole = true;
        as.negated = head == "assert-not-role";
        as.role = toks[0];
        as.a = toks[1];
        as.b = toks[2];
        kb.abox.push_back(as);
      } else {
        throw ParseError("unknown axiom kind '" + head + "'");
      }
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      throw ParseError(e.what(), n);
    }
  }
  return kb;
}

}  // namespace vplc
