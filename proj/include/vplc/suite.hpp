#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vplc/tiling.hpp"
#include "vplc/vpa.hpp"

namespace vplc {

struct SuiteLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::vector<SuiteLine> lines;
  bool pass() const;
  std::string table() const;
  void add(std::string name, bool pass, std::string detail = "");
};

struct SuiteOptions {
  int wordLen = 5;   // metaword model check, words of length 1..wordLen
  int bound = 6;     // intersection reduction, words of length 1..bound
  int maxTiles = 4;  // tiling systems enumerated by corner pattern
  int nMax = 4, mMax = 3;
  int maxStick = 5;
  int mutants = 20;  // per gadget
  uint64_t seed = 0;
};

// Hand-built counter automata over {a, b}.
struct NamedDoca {
  std::string name;
  Doca doca;
};
std::vector<NamedDoca> sample_docas();
std::vector<std::pair<NamedDoca, NamedDoca>> doca_pairs();

// Every system of at most maxTiles tiles that has a cover within 4x3, up to renaming.
std::vector<DominoSystem> corner_systems(int maxTiles);
DominoSystem twelve_tile_system();
DominoSystem three_tile_octant_system();
DominoSystem five_tile_octant_system();

SuiteReport lemma3_suite(const SuiteOptions& o = {});
SuiteReport lemma4_suite(const SuiteOptions& o = {});
SuiteReport lemma5_suite(const SuiteOptions& o = {});

}  // namespace vplc
