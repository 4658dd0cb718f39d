#include "text_util.hpp"
#include "vplc/error.hpp"
#include "vplc/reductions.hpp"

namespace vplc {

Mutation Mutation::drop_edge(const std::string& r, Element a, Element b) { return {Kind::DropEdge, r, a, b}; }
Mutation Mutation::add_edge(const std::string& r, Element a, Element b) { return {Kind::AddEdge, r, a, b}; }
Mutation Mutation::retile(Element a, const std::string& tileConcept) { return {Kind::Retile, tileConcept, a, 0}; }
Mutation Mutation::flip(const std::string& name, Element a) { return {Kind::FlipConcept, name, a, 0}; }
Mutation Mutation::move(const std::string& individual, Element a) { return {Kind::MoveIndividual, individual, a, 0}; }

Interpretation mutate(const Interpretation& i, const Mutation& m) {
  auto inRange = [&](Element e) {
    if (e < 0 || e >= i.size) throw Error("element " + std::to_string(e) + " outside the domain");
  };
  Interpretation out = i;
  inRange(m.a);
  switch (m.kind) {
    case Mutation::Kind::DropEdge:
    case Mutation::Kind::AddEdge: {
      inRange(m.b);
      auto it = out.roles.find(m.name);
      if (it == out.roles.end()) throw Error("dangling role " + m.name);
      if (m.kind == Mutation::Kind::DropEdge) {
        if (!it->second.erase({m.a, m.b})) throw Error("no such edge");
      } else {
        it->second.insert({m.a, m.b});
      }
      break;
    }
    case Mutation::Kind::Retile: {
      if (!out.concepts.count(m.name)) throw Error("dangling concept " + m.name);
      for (auto& [name, ext] : out.concepts)
        if (text::starts_with(name, "C_")) ext.erase(m.a);
      out.concepts[m.name].insert(m.a);
      break;
    }
    case Mutation::Kind::FlipConcept: {
      auto it = out.concepts.find(m.name);
      if (it == out.concepts.end()) throw Error("dangling concept " + m.name);
      if (!it->second.erase(m.a)) it->second.insert(m.a);
      break;
    }
    case Mutation::Kind::MoveIndividual: {
      auto it = out.individuals.find(m.name);
      if (it == out.individuals.end()) throw Error("missing individual " + m.name);
      it->second = m.a;
      break;
    }
  }
  return out;
}

std::string print_mutation(const Mutation& m) {
  auto a = std::to_string(m.a), b = std::to_string(m.b);
  switch (m.kind) {
    case Mutation::Kind::DropEdge: return "drop-edge " + m.name + " " + a + " " + b;
    case Mutation::Kind::AddEdge: return "add-edge " + m.name + " " + a + " " + b;
    case Mutation::Kind::Retile: return "retile " + a + " " + m.name;
    case Mutation::Kind::FlipConcept: return "flip " + m.name + " " + a;
    case Mutation::Kind::MoveIndividual: return "move " + m.name + " " + a;
  }
  return "";
}

Mutation parse_mutation(const std::string& src) {
  auto toks = text::split_ws(src);
  auto num = [&](size_t k) {
    int v = 0;
    if (k >= toks.size() || !text::parse_int(toks[k], v)) throw ParseError("bad mutation: " + src);
    return v;
  };
  auto need = [&](size_t n) {
    if (toks.size() != n) throw ParseError("bad mutation: " + src);
  };
  if (toks.empty()) throw ParseError("empty mutation");
  const auto& op = toks[0];
  if (op == "drop-edge" || op == "add-edge") {
    need(4);
    return op == "drop-edge" ? Mutation::drop_edge(toks[1], num(2), num(3)) : Mutation::add_edge(toks[1], num(2), num(3));
  }
  if (op == "retile") {
    need(3);
    return Mutation::retile(num(1), toks[2]);
  }
  if (op == "flip") {
    need(3);
    return Mutation::flip(toks[1], num(2));
  }
  if (op == "move") {
    need(3);
    return Mutation::move(toks[1], num(2));
  }
  throw ParseError("unknown mutation " + op);
}

}  // namespace vplc
