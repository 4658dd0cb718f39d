#include <CLI11.hpp>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vplc/concepts.hpp"
#include "vplc/error.hpp"
#include "vplc/interp.hpp"
#include "vplc/queries.hpp"
#include "vplc/reach.hpp"
#include "vplc/reductions.hpp"
#include "vplc/suite.hpp"
#include "vplc/tiling.hpp"
#include "vplc/vpa.hpp"

using namespace vplc;

namespace {

constexpr int kOk = 0, kFail = 1, kInput = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dir_of(const std::string& path) {
  auto p = std::filesystem::path(path).parent_path();
  return p.empty() ? "." : p.string();
}

// Prefixes parse errors with the file they came from.
template <class F>
auto from_file(const std::string& path, F parse) {
  try {
    return parse(slurp(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::pair<int, int> parse_bounds(const std::string& s) {
  auto x = s.find('x');
  int n = 0, m = 0;
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    n = std::stoi(s.substr(0, x));
    m = std::stoi(s.substr(x + 1));
  } catch (const std::exception&) {
    throw ParseError("bounds must look like 4x3");
  }
  return {n, m};
}

struct Args {
  std::string vpa, vpa2, word, interp, conceptFile, kb, query, lang, tiling, cover, sigma, op, out, pointed;
  std::string bounds = "4x3";
  int length = 0, depth = -1, tiles = 4, mutants = 20, maxLen = 0;
  uint64_t seed = 0;
  bool witness = false, emitConcept = false, all = false;
};

class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {}
  std::ostream& stream() { return path_.empty() ? std::cout : buf_; }
  ~Output() {
    if (path_.empty()) return;
    std::ofstream f(path_);
    f << buf_.str();
  }

 private:
  std::string path_;
  std::ostringstream buf_;
};

DominoSystem load_tiling(const Args& a) {
  if (a.tiling.empty()) throw ParseError("--tiling is required");
  return from_file(a.tiling, [](const std::string& s) { return parse_tiling(s); });
}

Interpretation load_interp(const Args& a) {
  if (a.interp.empty()) throw ParseError("--interp is required");
  return from_file(a.interp, [](const std::string& s) { return parse_interpretation(s); });
}

Vpa load_vpa(const std::string& path) {
  if (path.empty()) throw ParseError("--vpa is required");
  return from_file(path, [](const std::string& s) { return parse_vpa(s); });
}

std::string print_set(const ElementSet& s) {
  std::string out;
  for (Element e : to_vector(s)) out += (out.empty() ? "" : " ") + std::to_string(e);
  return out;
}

RectCover snake_cover(const Args& a, const DominoSystem& d) {
  if (!a.cover.empty()) return from_file(a.cover, [&](const std::string& s) { return parse_rect_cover(d, s); });
  auto [n, m] = parse_bounds(a.bounds);
  auto c = solve_rect(d, n, m);
  if (!c) throw Error("no cover within " + a.bounds);
  return *c;
}

OctantPrefixCover octant_cover(const Args& a, const DominoSystem& d) {
  int depth = a.depth >= 0 ? a.depth : static_cast<int>(d.tiles.size()) + 5;
  auto c = solve_octant_prefix(d, depth);
  if (!c) throw Error("no octant cover to depth " + std::to_string(depth));
  return *c;
}

int run_vpa(const std::string& cmd, const Args& a, std::ostream& out) {
  Vpa v = load_vpa(a.vpa);
  if (cmd == "member") {
    bool ok = accepts(v, parse_word(a.word));
    out << (ok ? "accept" : "reject") << '\n';
    return ok ? kOk : kFail;
  }
  if (cmd == "empty") {
    auto w = emptiness_witness(v);
    if (!w) {
      out << "empty\n";
      return kFail;
    }
    out << "non-empty\nwitness " << print_word(*w) << '\n';
    return kOk;
  }
  Vpa b = load_vpa(a.vpa2);
  out << print_vpa(intersection(v, b));
  return kOk;
}

int run_reach(const Args& a, std::ostream& out) {
  auto i = load_interp(a);
  Vpa v = !a.vpa.empty() ? load_vpa(a.vpa) : compile(parse_language(a.lang, "."));
  auto res = l_reachable_pairs(i, {}, v, std::nullopt, a.witness);
  for (const auto& [d, e] : res.pairs()) {
    out << d << ' ' << e;
    if (a.witness) out << "  " << print_word(res.witnesses.at({d, e}).word);
    out << '\n';
  }
  return res.pairs().empty() ? kFail : kOk;
}

int run_check(const std::string& cmd, const Args& a, std::ostream& out) {
  auto i = load_interp(a);
  if (cmd == "concept") {
    if (a.conceptFile.empty()) throw ParseError("--concept is required");
    auto c = from_file(a.conceptFile, [&](const std::string& s) { return parse_concept(s, dir_of(a.conceptFile)); });
    auto ext = extension(i, c);
    if (!a.pointed.empty()) {
      // An element number or an individual name.
      Element e = 0;
      const char* end = a.pointed.data() + a.pointed.size();
      auto [ptr, ec] = std::from_chars(a.pointed.data(), end, e);
      if (ec != std::errc() || ptr != end) {
        auto it = i.individuals.find(a.pointed);
        if (it == i.individuals.end()) throw Error("unknown individual " + a.pointed);
        e = it->second;
      }
      if (e < 0 || e >= i.size) throw Error("pointed element outside the domain");
      bool ok = ext.test(static_cast<size_t>(e));
      out << (ok ? "pass" : "fail") << '\n';
      return ok ? kOk : kFail;
    }
    out << "extension " << print_set(ext) << '\n';
    return ext.any() ? kOk : kFail;
  }
  if (cmd == "kb") {
    if (a.kb.empty()) throw ParseError("--kb is required");
    auto kb = from_file(a.kb, [&](const std::string& s) { return parse_kb(s, dir_of(a.kb)); });
    auto rep = satisfies_kb(i, kb);
    out << (rep.holds ? "holds" : "violated") << '\n';
    for (const auto& v : rep.violations) out << "violation " << v.axiom << " at " << v.witness << '\n';
    return rep.holds ? kOk : kFail;
  }
  if (a.query.empty()) throw ParseError("--query is required");
  auto q = from_file(a.query, [&](const std::string& s) { return parse_query(s, dir_of(a.query)); });
  bool any = false;
  for (size_t k = 0; k < q.size(); ++k) {
    if (a.all) {
      for (const auto& m : all_matches(i, q[k])) {
        any = true;
        out << "match " << k;
        for (const auto& v : q[k].vars) out << ' ' << v << '=' << m.at(v);
        out << '\n';
      }
    } else if (auto m = find_match(i, q[k])) {
      out << "match " << k;
      for (const auto& v : q[k].vars) out << ' ' << v << '=' << m->at(v);
      out << '\n';
      return kOk;
    }
  }
  if (!any) out << "no match\n";
  return any ? kOk : kFail;
}

int run_gadget(const std::string& cmd, const Args& a, std::ostream& out) {
  if (cmd == "metaword") {
    auto w = parse_word(a.word);
    std::vector<Symbol> sigma = a.sigma.empty() ? std::vector<Symbol>{} : parse_word(a.sigma);
    if (a.emitConcept) {
      out << print_concept(friendly_concept(sigma)) << '\n';
      return kOk;
    }
    out << print_interpretation(build_metaword(w, sigma).interp);
    return kOk;
  }
  auto d = load_tiling(a);
  if (cmd == "snake") {
    if (a.emitConcept) {
      out << print_concept(pseudosnake_concept(d)) << '\n';
      return kOk;
    }
    out << print_interpretation(snake_from_cover(d, snake_cover(a, d)));
    return kOk;
  }
  if (cmd == "yardstick") {
    if (a.emitConcept) {
      out << print_concept(yardstick_concept(tile_names(d))) << '\n';
      return kOk;
    }
    if (a.length < 1) throw ParseError("--length must be at least 1");
    out << print_interpretation(yardstick(tile_names(d), a.length));
    return kOk;
  }
  if (cmd == "cobra") {
    if (a.emitConcept) {
      out << print_concept(metricobra_concept(d)) << '\n';
      return kOk;
    }
    auto snake = snake_from_cover(d, snake_cover(a, d));
    auto len = check_snake(snake, d).length;
    if (!len) throw Error("snake has no length");
    out << print_interpretation(metricobra(snake, yardstick(tile_names(d), *len), d));
    return kOk;
  }
  if (cmd == "hyperoctant" || cmd == "grid") {
    auto h = hyperoctant(d, octant_cover(a, d));
    if (cmd == "hyperoctant") {
      out << print_interpretation(h);
      return kOk;
    }
    auto c = octant_cover(a, d);
    auto g = extend_to_grid(h, HyperoctantLayout(static_cast<int>(d.tiles.size()), c.depth, false));
    out << print_interpretation(g.interp);
    return kOk;
  }
  if (cmd == "tbox-triangle") {
    Kb kb;
    kb.tbox = tbox_triangle(d);
    out << print_kb(kb);
    return kOk;
  }
  if (cmd == "q-triangle") {
    out << print_query({q_triangle(d)});
    return kOk;
  }
  out << print_query({q_2vpq(d)});
  return kOk;
}

int run_suite(const std::string& cmd, const Args& a, std::ostream& out) {
  SuiteOptions o;
  o.seed = a.seed;
  o.maxTiles = a.tiles;
  o.mutants = a.mutants;
  auto [n, m] = parse_bounds(a.bounds);
  o.nMax = n;
  o.mMax = m;
  if (a.maxLen > 0) o.bound = a.maxLen;
  SuiteReport r = cmd == "lemma-3" ? lemma3_suite(o) : cmd == "lemma-4" ? lemma4_suite(o) : lemma5_suite(o);
  out << r.table();
  return r.pass() ? kOk : kFail;
}

int run_mutate(const Args& a, std::ostream& out) {
  auto i = load_interp(a);
  out << print_interpretation(mutate(i, parse_mutation(a.op)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"visibly pushdown languages in description logics and queries"};
  app.require_subcommand(1);
  Args a;
  app.add_option("--seed", a.seed, "sampling seed")->capture_default_str();
  app.add_option("--out", a.out, "write output to this file");

  std::string leaf;
  auto leafOf = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    auto* s = parent->add_subcommand(name, help);
    s->callback([&leaf, name] { leaf = name; });
    return s;
  };

  auto* vpa = app.add_subcommand("vpa", "automaton operations")->require_subcommand(1);
  for (auto [name, help] : {std::pair{"member", "membership of --word"}, std::pair{"empty", "emptiness with witness"},
                            std::pair{"intersect", "product automaton"}}) {
    auto* s = leafOf(vpa, name, help);
    s->add_option("--vpa", a.vpa)->required();
    if (std::string(name) == "member") s->add_option("--word", a.word)->required();
    if (std::string(name) == "intersect") s->add_option("--vpa2", a.vpa2)->required();
  }

  auto* reach = app.add_subcommand("reach", "L-reachability")->require_subcommand(1);
  auto* pairs = leafOf(reach, "pairs", "all L-reachable pairs");
  pairs->add_option("--interp", a.interp)->required();
  auto* src = pairs->add_option_group("language");
  src->add_option("--vpa", a.vpa);
  src->add_option("--lang", a.lang, "language form, e.g. (rnsn r s)");
  src->require_option(1);
  pairs->add_flag("--witness", a.witness);

  auto* check = app.add_subcommand("check", "model checking")->require_subcommand(1);
  auto* cc = leafOf(check, "concept", "concept extension or pointed check");
  cc->add_option("--interp", a.interp)->required();
  cc->add_option("--concept", a.conceptFile)->required();
  cc->add_option("--pointed", a.pointed, "element number or individual name");
  auto* ck = leafOf(check, "kb", "knowledge base satisfaction");
  ck->add_option("--interp", a.interp)->required();
  ck->add_option("--kb", a.kb)->required();
  auto* cq = leafOf(check, "query", "query matching");
  cq->add_option("--interp", a.interp)->required();
  cq->add_option("--query", a.query)->required();
  cq->add_flag("--all", a.all, "list every match");

  auto* gadget = app.add_subcommand("gadget", "reduction gadgets")->require_subcommand(1);
  for (const char* name : {"metaword", "snake", "yardstick", "cobra", "hyperoctant", "grid", "tbox-triangle", "q-triangle",
                           "q-2vpq"}) {
    auto* s = leafOf(gadget, name, "");
    std::string n(name);
    if (n == "metaword") {
      s->add_option("--word", a.word)->required();
      s->add_option("--sigma", a.sigma);
    } else {
      s->add_option("--tiling", a.tiling)->required();
    }
    if (n == "snake" || n == "cobra") {
      s->add_option("--cover", a.cover);
      s->add_option("--bounds", a.bounds)->capture_default_str();
    }
    if (n == "yardstick") s->add_option("--length", a.length);
    if (n == "hyperoctant" || n == "grid") s->add_option("--depth", a.depth, "default: tiles + 5");
    if (n == "metaword" || n == "snake" || n == "yardstick" || n == "cobra")
      s->add_flag("--concept", a.emitConcept, "emit the characterising concept");
  }

  auto* suite = app.add_subcommand("suite", "lemma batteries")->require_subcommand(1);
  for (const char* name : {"lemma-3", "lemma-4", "lemma-5"}) {
    auto* s = leafOf(suite, name, "");
    s->add_option("--tiles", a.tiles)->capture_default_str();
    s->add_option("--bounds", a.bounds)->capture_default_str();
    s->add_option("--mutants", a.mutants)->capture_default_str();
    s->add_option("--max-len", a.maxLen);
    s->add_option("--seed", a.seed);
  }

  auto* mut = app.add_subcommand("mutate", "apply one mutation");
  mut->add_option("--interp", a.interp)->required();
  mut->add_option("--op", a.op, "e.g. \"drop-edge r 0 1\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    Output o(a.out);
    auto& out = o.stream();
    if (vpa->parsed()) return run_vpa(leaf, a, out);
    if (reach->parsed()) return run_reach(a, out);
    if (check->parsed()) return run_check(leaf, a, out);
    if (gadget->parsed()) return run_gadget(leaf, a, out);
    if (suite->parsed()) return run_suite(leaf, a, out);
    if (mut->parsed()) return run_mutate(a, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
