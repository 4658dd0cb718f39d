#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "vplc/concepts.hpp"
#include "vplc/interp.hpp"
#include "vplc/reductions.hpp"
#include "vplc/tiling.hpp"
#include "vplc/vpa.hpp"

using namespace vplc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(VPLC_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct Scratch {
  fs::path dir;
  Scratch() : dir(fs::temp_directory_path() / ("vplc_cli_" + std::to_string(::getpid()))) { fs::create_directories(dir); }
  ~Scratch() { fs::remove_all(dir); }
  std::string put(const std::string& name, const std::string& body) const {
    auto p = dir / name;
    std::ofstream(p) << body;
    return "'" + p.string() + "'";
  }
};

}  // namespace

TEST_CASE("cli automaton commands") {
  Scratch s;
  auto v = s.put("rnsn.vpa", print_vpa(rnsn_vpa("r", "s")));
  CHECK(run("vpa member --vpa " + v + " --word 'r r s s'").code == 0);
  CHECK(run("vpa member --vpa " + v + " --word 'r s s'").code == 1);
  // Exit 1 reports an empty language.
  CHECK(run("vpa empty --vpa " + v).code == 0);
  Vpa none = rnsn_vpa("r", "s");
  none.final.clear();
  CHECK(run("vpa empty --vpa " + s.put("none.vpa", print_vpa(none))).code == 1);
  auto x = run("vpa intersect --vpa " + v + " --vpa2 " + v);
  CHECK(x.code == 0);
  CHECK(accepts(parse_vpa(x.out), parse_word("r s")));
  CHECK(run("vpa member --vpa " + s.put("bad.vpa", "states: q\nnonsense\n") + " --word r").code == 2);
  CHECK(run("vpa member --vpa " + (s.dir / "missing.vpa").string() + " --word r").code == 2);
}

TEST_CASE("cli model checking") {
  Scratch s;
  auto mw = run("gadget metaword --word 'a b b' --sigma 'a b'");
  REQUIRE(mw.code == 0);
  CHECK(parse_interpretation(mw.out) == build_metaword(parse_word("a b b"), {"a", "b"}).interp);
  auto c = s.put("friendly.c", print_concept(friendly_concept({"a", "b"})));
  CHECK(run("check concept --interp " + s.put("mw.i", mw.out) + " --concept " + c + " --pointed 0").code == 0);
  auto broken = build_metaword(parse_word("a b b"), {"a", "b"}).interp;
  broken.roles["(a,c)"].insert({1, 1});
  CHECK(run("check concept --interp " + s.put("bad.i", print_interpretation(broken)) + " --concept " + c + " --pointed 0").code == 1);
  CHECK(run("check concept --interp " + s.put("mw2.i", mw.out) + " --concept " + s.put("junk.c", "(ex (re \"x\" top)") + " --pointed 0").code == 2);

  auto i = s.put("g.i", "elements: 4\nrole r = {(0,1),(1,2)}\nrole s = {(2,3)}\nconcept A = {3}\n");
  auto pairs = run("reach pairs --interp " + i + " --lang '(rnsn r s)'");
  CHECK(pairs.code == 0);
  CHECK(pairs.out.find("1 3") != std::string::npos);
  auto q = run("check query --interp " + i + " --query " + s.put("q.txt", "r(x,y)\nL<rnsn r s>(y,z)\nA(z)\n"));
  CHECK(q.code == 0);
  CHECK(run("check query --interp " + i + " --query " + s.put("q2.txt", "A(x)\nr(x,y)\n")).code == 1);
  CHECK(run("check kb --interp " + i + " --kb " + s.put("k.txt", "ria s r\n")).code == 1);
  CHECK(run("check kb --interp " + i + " --kb " + s.put("k2.txt", "gci (atom A) (not (ex (re \"r\") top))\n")).code == 0);
}

TEST_CASE("cli gadgets and suites") {
  Scratch s;
  auto t = s.put("t.tiling", "colors: w a\nwhite: w\ntile L = w w a w\ntile R = a w w w\n");
  auto y = run("gadget yardstick --tiling " + t + " --length 3");
  REQUIRE(y.code == 0);
  auto yc = run("gadget yardstick --tiling " + t + " --concept");
  REQUIRE(yc.code == 0);
  auto yi = s.put("y.i", y.out), yf = s.put("y.c", yc.out);
  CHECK(run("check concept --interp " + yi + " --concept " + yf + " --pointed st").code == 0);
  CHECK(run("check concept --interp " + yi + " --concept " + yf + " --pointed md").code == 1);
  CHECK(run("check concept --interp " + yi + " --concept " + yf + " --pointed nobody").code == 2);

  auto m = run("mutate --interp " + yi + " --op 'drop-edge r 0 1'");
  REQUIRE(m.code == 0);
  CHECK_FALSE(parse_interpretation(m.out).roles.at("r").count({0, 1}));
  CHECK(run("mutate --interp " + yi + " --op 'explode'").code == 2);

  auto a = run("suite lemma-4 --tiles 3 --bounds 4x3 --seed 7");
  auto b = run("suite lemma-4 --tiles 3 --bounds 4x3 --seed 7");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
  CHECK(run("suite lemma-9").code == 2);
}
