#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace vplc {

// Sides in order left, down, right, up.
struct Tile {
  std::string name;
  std::array<std::string, 4> sides;
  const std::string& left() const { return sides[0]; }
  const std::string& down() const { return sides[1]; }
  const std::string& right() const { return sides[2]; }
  const std::string& up() const { return sides[3]; }
  bool operator==(const Tile&) const = default;
};

struct DominoSystem {
  std::vector<std::string> colors;
  std::vector<Tile> tiles;
  std::string white;

  void validate() const;
  int white_sides(int t) const;
  bool is_all_white(int t) const;
  int index_of(const std::string& tileName) const;
  bool operator==(const DominoSystem&) const = default;
};

bool h_compatible(const Tile& a, const Tile& b);  // b to the right of a
bool v_compatible(const Tile& a, const Tile& b);  // b above a

// No tile may have more than two white sides.
void validate_rect_system(const DominoSystem& d);
// Exactly one all-white tile, which must not be the only tile.
void validate_octant_system(const DominoSystem& d);

// cells[x + y * n] is a tile index.
struct RectCover {
  int n = 0, m = 0;
  std::vector<int> cells;
  int at(int x, int y) const { return cells[x + y * n]; }
};

struct CellVerdict {
  int x, y;
  bool borders, hori, verti;
};

struct CoverReport {
  bool pass = true;
  std::vector<CellVerdict> cells;
  std::string firstViolation;
  // Octant prefixes only: diagonal all-white, interior free of white sides.
  bool diagonal = true;
};

CoverReport check_rect_cover(const DominoSystem& d, const RectCover& c);
// Row-major backtracking in tile order over sizes (n, m) with n <= nMax, m <= mMax.
std::optional<RectCover> solve_rect(const DominoSystem& d, int nMax, int mMax);

// T' = {wwww} + T + {(w, d, r, w) : (l, d, r, u) in T}.
DominoSystem white_bordered_transform(const DominoSystem& d);

// Octant cells (n, m) with 0 <= m <= n <= depth; index n(n+1)/2 + m.
struct OctantPrefixCover {
  int depth = 0;
  std::vector<int> cells;
  static int index(int n, int m) { return n * (n + 1) / 2 + m; }
  int at(int n, int m) const { return cells[index(n, m)]; }
};

CoverReport check_octant_prefix(const DominoSystem& d, const OctantPrefixCover& c);
std::optional<OctantPrefixCover> solve_octant_prefix(const DominoSystem& d, int depth);

DominoSystem parse_tiling(const std::string& text);
std::string print_tiling(const DominoSystem& d);
RectCover parse_rect_cover(const DominoSystem& d, const std::string& text);
std::string print_rect_cover(const DominoSystem& d, const RectCover& c);

}  // namespace vplc
