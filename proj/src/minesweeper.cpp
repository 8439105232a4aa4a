#include "vpr/minesweeper.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "vpr/errors.hpp"
#include "vpr/rng.hpp"

namespace vpr {

namespace {

MineBoard empty_board(int rows, int cols) {
  MineBoard b;
  b.rows = rows;
  b.cols = cols;
  b.mine.assign(rows * cols, 0);
  b.revealed.assign(rows * cols, 0);
  b.flagged.assign(rows * cols, 0);
  return b;
}

std::string cell_name(int r, int c) {
  return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
}

void refresh_won(MineBoard& b) {
  if (b.status == MineStatus::ongoing && b.revealed_safe() == b.safe_cells())
    b.status = MineStatus::won;
}

}  // namespace

int MineBoard::mine_count() const noexcept {
  return static_cast<int>(std::count(mine.begin(), mine.end(), 1));
}

int MineBoard::revealed_safe() const noexcept {
  int n = 0;
  for (int i = 0; i < cells(); ++i) n += (revealed[i] && !mine[i]) ? 1 : 0;
  return n;
}

int MineBoard::adjacent_mines(int r, int c) const noexcept {
  int n = 0;
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc)
      if ((dr || dc) && in_bounds(r + dr, c + dc)) n += mine[index(r + dr, c + dc)];
  return n;
}

MineBoard mine_initial(std::uint64_t seed, int rows, int cols, int n_mines, bool flood_fill) {
  if (rows <= 0 || cols <= 0) throw ConfigError("board dimensions must be positive");
  if (n_mines < 0 || n_mines >= rows * cols)
    throw ConfigError("mine count must be in [0, rows*cols)");
  MineBoard b = empty_board(rows, cols);
  b.flood_fill = flood_fill;
  std::vector<int> cells(rows * cols);
  std::iota(cells.begin(), cells.end(), 0);
  Rng rng(seed);
  std::shuffle(cells.begin(), cells.end(), rng);
  for (int k = 0; k < n_mines; ++k) b.mine[cells[k]] = 1;
  return b;
}

MineBoard mine_from_string(int rows, int cols, std::string_view layout) {
  MineBoard b = empty_board(rows, cols);
  int n = 0;
  for (char ch : layout) {
    if (ch == ' ' || ch == '\n' || ch == '\t') continue;
    if (n == rows * cols) throw FormatError("mine layout longer than the board");
    if (ch != 'M' && ch != '.') throw FormatError(std::string("bad mine layout cell '") + ch + "'");
    b.mine[n++] = ch == 'M' ? 1 : 0;
  }
  if (n != rows * cols) throw FormatError("mine layout shorter than the board");
  return b;
}

MineBoard mine_reveal(const MineBoard& b, int r, int c) {
  if (!b.ongoing()) throw IllegalMoveError("minesweeper game is over");
  if (!b.in_bounds(r, c)) throw IllegalMoveError("cell " + cell_name(r, c) + " is off the board");
  const int i = b.index(r, c);
  if (b.revealed[i]) throw IllegalMoveError("cell " + cell_name(r, c) + " is already revealed");
  if (b.flagged[i]) throw IllegalMoveError("cell " + cell_name(r, c) + " is flagged");
  MineBoard next = b;
  next.revealed[i] = 1;
  if (next.mine[i]) {
    next.status = MineStatus::lost;
    return next;
  }
  if (next.flood_fill && next.adjacent_mines(r, c) == 0) {
    std::vector<int> stack{i};
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const int cr = cur / next.cols, cc = cur % next.cols;
      if (next.adjacent_mines(cr, cc) != 0) continue;
      for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
          const int nr = cr + dr, nc = cc + dc;
          if (!next.in_bounds(nr, nc)) continue;
          const int j = next.index(nr, nc);
          if (next.revealed[j] || next.flagged[j] || next.mine[j]) continue;
          next.revealed[j] = 1;
          stack.push_back(j);
        }
    }
  }
  refresh_won(next);
  return next;
}

MineBoard mine_flag(const MineBoard& b, int r, int c) {
  if (!b.ongoing()) throw IllegalMoveError("minesweeper game is over");
  if (!b.in_bounds(r, c)) throw IllegalMoveError("cell " + cell_name(r, c) + " is off the board");
  const int i = b.index(r, c);
  if (b.revealed[i]) throw IllegalMoveError("cannot flag revealed cell " + cell_name(r, c));
  MineBoard next = b;
  next.flagged[i] ^= 1;
  return next;
}

ActionSet mine_legal(const MineBoard& b) {
  ActionSet out;
  if (!b.ongoing()) return out;
  for (int r = 0; r < b.rows; ++r)
    for (int c = 0; c < b.cols; ++c) {
      const int i = b.index(r, c);
      if (b.revealed[i]) continue;
      if (!b.flagged[i]) out.insert(Reveal{r, c});
      out.insert(Flag{r, c});
    }
  return out;
}

MineObservation observe(const MineBoard& b) {
  MineObservation obs;
  obs.rows = b.rows;
  obs.cols = b.cols;
  obs.cells.assign(b.cells(), MineObservation::kHidden);
  for (int r = 0; r < b.rows; ++r)
    for (int c = 0; c < b.cols; ++c) {
      const int i = b.index(r, c);
      if (b.revealed[i])
        obs.cells[i] = b.mine[i] ? MineObservation::kMine : b.adjacent_mines(r, c);
      else if (b.flagged[i])
        obs.cells[i] = MineObservation::kFlag;
    }
  return obs;
}

MineMetrics mine_metrics(const MineBoard& b, bool ended_early) {
  if (!ended_early && b.ongoing()) throw NonTerminalError("minesweeper game still ongoing");
  MineMetrics m;
  m.success = b.status == MineStatus::won;
  const int safe = b.safe_cells();
  m.completion_rate = safe == 0 ? 1.0 : static_cast<double>(b.revealed_safe()) / safe;
  return m;
}

}  // namespace vpr
