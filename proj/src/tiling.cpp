#include "vplc/tiling.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "text_util.hpp"
#include "vplc/error.hpp"

namespace vplc {

void DominoSystem::validate() const {
  std::set<std::string> cols(colors.begin(), colors.end());
  if (cols.size() != colors.size()) throw Error("duplicate colour");
  if (!cols.count(white)) throw Error("white colour '" + white + "' is not declared");
  if (tiles.empty()) throw Error("tiling system has no tiles");
  std::set<std::string> names;
  std::set<std::array<std::string, 4>> shapes;
  for (const auto& t : tiles) {
    if (!names.insert(t.name).second) throw Error("duplicate tile name '" + t.name + "'");
    if (!shapes.insert(t.sides).second) throw Error("tile '" + t.name + "' repeats the sides of another tile");
    for (const auto& c : t.sides)
      if (!cols.count(c)) throw Error("tile '" + t.name + "' uses undeclared colour '" + c + "'");
  }
}

int DominoSystem::white_sides(int t) const {
  return static_cast<int>(std::count(tiles[t].sides.begin(), tiles[t].sides.end(), white));
}

bool DominoSystem::is_all_white(int t) const { return white_sides(t) == 4; }

int DominoSystem::index_of(const std::string& tileName) const {
  for (size_t k = 0; k < tiles.size(); ++k)
    if (tiles[k].name == tileName) return static_cast<int>(k);
  throw Error("unknown tile '" + tileName + "'");
}

bool h_compatible(const Tile& a, const Tile& b) { return a.right() == b.left(); }
bool v_compatible(const Tile& a, const Tile& b) { return a.up() == b.down(); }

void validate_rect_system(const DominoSystem& d) {
  d.validate();
  for (size_t k = 0; k < d.tiles.size(); ++k)
    if (d.white_sides(static_cast<int>(k)) > 2) throw Error("tile '" + d.tiles[k].name + "' has more than two white sides");
}

void validate_octant_system(const DominoSystem& d) {
  d.validate();
  int allWhite = 0;
  for (size_t k = 0; k < d.tiles.size(); ++k) {
    const auto& t = d.tiles[k];
    int w = d.white_sides(static_cast<int>(k));
    if (w == 4) {
      ++allWhite;
      continue;
    }
    if (w == 0) continue;
    if (t.left() != d.white || t.up() != d.white || t.down() == d.white || t.right() == d.white)
      throw Error("tile '" + t.name + "' has white sides other than left and up");
  }
  if (allWhite != 1) throw Error("octant systems need the all-white tile");
  if (d.tiles.size() < 2) throw Error("octant systems need a tile besides the all-white one");
}

namespace {

bool borders_ok(const DominoSystem& d, const Tile& t, int x, int y, int n, int m) {
  return (x == 0) == (t.left() == d.white) && (x == n - 1) == (t.right() == d.white) &&
         (y == 0) == (t.down() == d.white) && (y == m - 1) == (t.up() == d.white);
}

std::string cell(int x, int y) { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }

}  // namespace

CoverReport check_rect_cover(const DominoSystem& d, const RectCover& c) {
  CoverReport rep;
  if (c.n < 1 || c.m < 1 || static_cast<int>(c.cells.size()) != c.n * c.m) {
    rep.pass = false;
    rep.firstViolation = "cover shape does not match its size";
    return rep;
  }
  const int nt = static_cast<int>(d.tiles.size());
  for (int t : c.cells)
    if (t < 0 || t >= nt) {
      rep.pass = false;
      rep.firstViolation = "cover uses an unknown tile index";
      return rep;
    }
  for (int y = 0; y < c.m; ++y)
    for (int x = 0; x < c.n; ++x) {
      const Tile& t = d.tiles[c.at(x, y)];
      CellVerdict v{x, y, borders_ok(d, t, x, y, c.n, c.m), true, true};
      if (x + 1 < c.n) v.hori = h_compatible(t, d.tiles[c.at(x + 1, y)]);
      if (y + 1 < c.m) v.verti = v_compatible(t, d.tiles[c.at(x, y + 1)]);
      if ((!v.borders || !v.hori || !v.verti) && rep.pass) {
        rep.pass = false;
        rep.firstViolation = "cell " + cell(x, y) + (!v.borders ? " breaks the border condition" : !v.hori ? " is not H-compatible with its right neighbour" : " is not V-compatible with its upper neighbour");
      }
      rep.cells.push_back(v);
    }
  return rep;
}

std::optional<RectCover> solve_rect(const DominoSystem& d, int nMax, int mMax) {
  if (nMax < 1 || mMax < 1) throw Error("bounds must be positive");
  const int nt = static_cast<int>(d.tiles.size());
  for (int n = 1; n <= nMax; ++n)
    for (int m = 1; m <= mMax; ++m) {
      RectCover c{n, m, std::vector<int>(n * m, -1)};
      std::function<bool(int)> place = [&](int pos) {
        if (pos == n * m) return true;
        int x = pos % n, y = pos / n;
        for (int t = 0; t < nt; ++t) {
          const Tile& tile = d.tiles[t];
          if (!borders_ok(d, tile, x, y, n, m)) continue;
          if (x > 0 && !h_compatible(d.tiles[c.at(x - 1, y)], tile)) continue;
          if (y > 0 && !v_compatible(d.tiles[c.at(x, y - 1)], tile)) continue;
          c.cells[pos] = t;
          if (place(pos + 1)) return true;
        }
        c.cells[pos] = -1;
        return false;
      };
      if (place(0)) return c;
    }
  return std::nullopt;
}

DominoSystem white_bordered_transform(const DominoSystem& d) {
  d.validate();
  for (const auto& t : d.tiles)
    for (const auto& c : t.sides)
      if (c == d.white) throw Error("tile '" + t.name + "' already has a white side");
  DominoSystem out;
  out.colors = d.colors;
  out.white = d.white;
  std::set<std::array<std::string, 4>> seen;
  std::set<std::string> names;
  auto add = [&](std::string name, std::array<std::string, 4> sides) {
    if (!seen.insert(sides).second) return;
    while (names.count(name)) name += "_";
    names.insert(name);
    out.tiles.push_back({name, sides});
  };
  const std::string& w = d.white;
  add("blank", {w, w, w, w});
  for (const auto& t : d.tiles) add(t.name, t.sides);
  for (const auto& t : d.tiles) add(t.name + "_b", {w, t.down(), t.right(), w});
  return out;
}

CoverReport check_octant_prefix(const DominoSystem& d, const OctantPrefixCover& c) {
  CoverReport rep;
  const int D = c.depth;
  if (D < 0 || static_cast<int>(c.cells.size()) != OctantPrefixCover::index(D + 1, 0)) {
    rep.pass = false;
    rep.diagonal = false;
    rep.firstViolation = "prefix shape does not match its depth";
    return rep;
  }
  const int nt = static_cast<int>(d.tiles.size());
  for (int t : c.cells)
    if (t < 0 || t >= nt) {
      rep.pass = false;
      rep.diagonal = false;
      rep.firstViolation = "prefix uses an unknown tile index";
      return rep;
    }
  auto fail = [&](const std::string& why) {
    if (rep.pass) rep.firstViolation = why;
    rep.pass = false;
  };
  for (int n = 0; n <= D; ++n)
    for (int m = 0; m <= n; ++m) {
      CellVerdict v{n, m, true, true, true};
      int t = c.at(n, m);
      if (n == 0 && m == 0) v.borders = d.is_all_white(t);
      if (n == 1 && m == 0) v.borders = !d.is_all_white(t);
      if (m + 1 <= n) v.verti = v_compatible(d.tiles[t], d.tiles[c.at(n, m + 1)]);
      if (n + 1 <= D) v.hori = h_compatible(d.tiles[t], d.tiles[c.at(n + 1, m)]);
      if (!v.borders) fail("cell " + cell(n, m) + " breaks the initial condition");
      if (!v.verti) fail("cell " + cell(n, m) + " is not V-compatible with its upper neighbour");
      if (!v.hori) fail("cell " + cell(n, m) + " is not H-compatible with its right neighbour");
      rep.cells.push_back(v);
      bool whiteSide = d.white_sides(t) > 0;
      if (n == m && !d.is_all_white(t)) rep.diagonal = false;
      if (0 < m && m < n - 1 && whiteSide) rep.diagonal = false;
    }
  return rep;
}

std::optional<OctantPrefixCover> solve_octant_prefix(const DominoSystem& d, int depth) {
  if (depth < 0) throw Error("depth must be non-negative");
  const int nt = static_cast<int>(d.tiles.size());
  OctantPrefixCover c{depth, std::vector<int>(OctantPrefixCover::index(depth + 1, 0), -1)};
  std::function<bool(int, int)> place = [&](int n, int m) {
    if (n > depth) return true;
    int nn = m == n ? n + 1 : n, nm = m == n ? 0 : m + 1;
    for (int t = 0; t < nt; ++t) {
      if (n == 0 && m == 0 && !d.is_all_white(t)) continue;
      if (n == 1 && m == 0 && d.is_all_white(t)) continue;
      if (m > 0 && !v_compatible(d.tiles[c.at(n, m - 1)], d.tiles[t])) continue;
      if (m <= n - 1 && !h_compatible(d.tiles[c.at(n - 1, m)], d.tiles[t])) continue;
      c.cells[OctantPrefixCover::index(n, m)] = t;
      if (place(nn, nm)) return true;
    }
    c.cells[OctantPrefixCover::index(n, m)] = -1;
    return false;
  };
  if (place(0, 0)) return c;
  return std::nullopt;
}

DominoSystem parse_tiling(const std::string& src) {
  DominoSystem d;
  bool haveWhite = false;
  for (const auto& l : text::content_lines(src)) {
    try {
      if (text::starts_with(l.text, "colors:")) {
        auto cs = text::split_ws(l.text.substr(7));
        d.colors.insert(d.colors.end(), cs.begin(), cs.end());
      } else if (text::starts_with(l.text, "white:")) {
        auto cs = text::split_ws(l.text.substr(6));
        if (cs.size() != 1) throw ParseError("white: expects one colour");
        d.white = cs[0];
        haveWhite = true;
      } else if (text::starts_with(l.text, "tile ")) {
        auto toks = text::split_ws(l.text.substr(5));
        if (toks.size() != 6 || toks[1] != "=") throw ParseError("expected 'tile <name> = <left> <down> <right> <up>'");
        d.tiles.push_back({toks[0], {toks[2], toks[3], toks[4], toks[5]}});
      } else {
        throw ParseError("unrecognised line '" + l.text + "'");
      }
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      throw ParseError(e.what(), l.number);
    }
  }
  if (!haveWhite) throw ParseError("missing 'white:' line");
  try {
    d.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return d;
}

std::string print_tiling(const DominoSystem& d) {
  std::ostringstream out;
  out << "colors: " << text::join(d.colors, " ") << "\n";
  out << "white: " << d.white << "\n";
  for (const auto& t : d.tiles)
    out << "tile " << t.name << " = " << t.left() << " " << t.down() << " " << t.right() << " " << t.up() << "\n";
  return out.str();
}

RectCover parse_rect_cover(const DominoSystem& d, const std::string& src) {
  RectCover c;
  std::vector<std::vector<int>> rows;
  for (const auto& l : text::content_lines(src)) {
    try {
      if (text::starts_with(l.text, "size:")) {
        auto toks = text::split_ws(l.text.substr(5));
        if (toks.size() != 2 || !text::parse_int(toks[0], c.n) || !text::parse_int(toks[1], c.m) || c.n < 1 || c.m < 1)
          throw ParseError("expected 'size: <n> <m>'");
        rows.assign(c.m, {});
      } else if (text::starts_with(l.text, "row ")) {
        auto colon = l.text.find(':');
        int y;
        if (colon == std::string::npos || !text::parse_int(text::trim(l.text.substr(4, colon - 4)), y))
          throw ParseError("expected 'row <y>: <tiles>'");
        if (y < 0 || y >= c.m) throw ParseError("row index out of range");
        for (const auto& name : text::split_ws(l.text.substr(colon + 1))) {
          try {
            rows[y].push_back(d.index_of(name));
          } catch (const Error& e) {
            throw ParseError(e.what());
          }
        }
        if (static_cast<int>(rows[y].size()) != c.n) throw ParseError("row has the wrong number of tiles");
      } else {
        throw ParseError("unrecognised line '" + l.text + "'");
      }
    } catch (const ParseError& e) {
      if (e.line() > 0) throw;
      throw ParseError(e.what(), l.number);
    }
  }
  if (c.n < 1) throw ParseError("missing 'size:' line");
  for (int y = 0; y < c.m; ++y) {
    if (static_cast<int>(rows[y].size()) != c.n) throw ParseError("row " + std::to_string(y) + " is missing");
    c.cells.insert(c.cells.end(), rows[y].begin(), rows[y].end());
  }
  return c;
}

std::string print_rect_cover(const DominoSystem& d, const RectCover& c) {
  std::ostringstream out;
  out << "size: " << c.n << " " << c.m << "\n";
  for (int y = 0; y < c.m; ++y) {
    out << "row " << y << ":";
    for (int x = 0; x < c.n; ++x) out << " " << d.tiles[c.at(x, y)].name;
    out << "\n";
  }
  return out.str();
}

}  // namespace vplc
