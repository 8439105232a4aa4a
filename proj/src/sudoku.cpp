#include "vpr/sudoku.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <random>
#include <string>

#include "vpr/errors.hpp"
#include "vpr/rng.hpp"

namespace vpr {

namespace {

constexpr int box_of(int r, int c) noexcept { return (r / 3) * 3 + c / 3; }
constexpr std::uint16_t kAllDigits = 0x3FE;  // bits 1..9

// Row/column/box occupancy masks; bit d set when digit d is present.
struct Masks {
  std::array<std::uint16_t, 9> row{}, col{}, box{};

  std::uint16_t used(int r, int c) const noexcept { return row[r] | col[c] | box[box_of(r, c)]; }
  void set(int r, int c, int d) noexcept {
    const auto bit = static_cast<std::uint16_t>(1u << d);
    row[r] |= bit;
    col[c] |= bit;
    box[box_of(r, c)] |= bit;
  }
  void clear(int r, int c, int d) noexcept {
    const auto bit = static_cast<std::uint16_t>(~(1u << d));
    row[r] &= bit;
    col[c] &= bit;
    box[box_of(r, c)] &= bit;
  }
};

// nullopt when a duplicate is present.
std::optional<Masks> build_masks(const SudokuGrid& g) noexcept {
  Masks m;
  for (int i = 0; i < 81; ++i) {
    const int d = g[i];
    if (d == 0) continue;
    const int r = i / 9, c = i % 9;
    if (d > 9 || (m.used(r, c) & (1u << d))) return std::nullopt;
    m.set(r, c, d);
  }
  return m;
}

// Most-constrained empty cell; -1 when the grid is full. `best_cands` receives
// its candidate mask (0 means a dead end).
int pick_cell(const SudokuGrid& g, const Masks& m, std::uint16_t& best_cands) noexcept {
  int best = -1;
  int best_count = 10;
  for (int i = 0; i < 81; ++i) {
    if (g[i] != 0) continue;
    const auto cands = static_cast<std::uint16_t>(kAllDigits & ~m.used(i / 9, i % 9));
    const int n = std::popcount(static_cast<unsigned>(cands));
    if (n < best_count) {
      best = i;
      best_count = n;
      best_cands = cands;
      if (n <= 1) break;
    }
  }
  return best;
}

int count_rec(SudokuGrid& g, Masks& m, int cap, int found) {
  std::uint16_t cands = 0;
  const int cell = pick_cell(g, m, cands);
  if (cell < 0) return found + 1;
  const int r = cell / 9, c = cell % 9;
  for (int d = 1; d <= 9 && found < cap; ++d) {
    if (!(cands & (1u << d))) continue;
    g[cell] = static_cast<std::uint8_t>(d);
    m.set(r, c, d);
    found = count_rec(g, m, cap, found);
    m.clear(r, c, d);
    g[cell] = 0;
  }
  return found;
}

bool solve_rec(SudokuGrid& g, Masks& m, Rng* rng) {
  std::uint16_t cands = 0;
  const int cell = pick_cell(g, m, cands);
  if (cell < 0) return true;
  const int r = cell / 9, c = cell % 9;
  std::array<int, 9> order{};
  std::iota(order.begin(), order.end(), 1);
  if (rng) std::shuffle(order.begin(), order.end(), *rng);
  for (int d : order) {
    if (!(cands & (1u << d))) continue;
    g[cell] = static_cast<std::uint8_t>(d);
    m.set(r, c, d);
    if (solve_rec(g, m, rng)) return true;
    m.clear(r, c, d);
    g[cell] = 0;
  }
  return false;
}

std::optional<SudokuEpisode> try_generate(std::uint64_t seed, int blanks) {
  Rng rng(seed);
  SudokuGrid full{};
  Masks m;
  solve_rec(full, m, &rng);

  SudokuGrid puzzle = full;
  std::array<int, 81> order{};
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  int removed = 0;
  for (int cell : order) {
    if (removed == blanks) break;
    const auto keep = puzzle[cell];
    puzzle[cell] = 0;
    if (count_solutions(puzzle, 2) == 1)
      ++removed;
    else
      puzzle[cell] = keep;
  }
  if (removed != blanks) return std::nullopt;
  return SudokuEpisode{puzzle, full, puzzle};
}

}  // namespace

int SudokuEpisode::initial_blanks() const noexcept {
  return static_cast<int>(std::count(puzzle.begin(), puzzle.end(), 0));
}

int SudokuEpisode::empty_cells() const noexcept {
  return static_cast<int>(std::count(current.begin(), current.end(), 0));
}

bool grid_consistent(const SudokuGrid& g) noexcept { return build_masks(g).has_value(); }

bool grid_full(const SudokuGrid& g) noexcept {
  return std::none_of(g.begin(), g.end(), [](auto d) { return d == 0; });
}

int count_solutions(const SudokuGrid& g, int cap) {
  auto masks = build_masks(g);
  if (!masks) throw InconsistentGridError("grid violates a row/column/box constraint");
  if (cap <= 0) return 0;
  SudokuGrid work = g;
  return count_rec(work, *masks, cap, 0);
}

std::optional<SudokuGrid> solve_sudoku(const SudokuGrid& g) {
  auto masks = build_masks(g);
  if (!masks) return std::nullopt;
  SudokuGrid work = g;
  if (!solve_rec(work, *masks, nullptr)) return std::nullopt;
  return work;
}

SudokuEpisode sudoku_generate(std::uint64_t seed, int blanks) {
  if (blanks < 0 || blanks > 64) throw ConfigError("blanks must be in [0, 64]");
  constexpr int kAttempts = 32;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const auto s = attempt == 0 ? seed : derive_seed(seed, {stream::kGeneration, std::uint64_t(attempt)});
    if (auto ep = try_generate(s, blanks)) return *ep;
  }
  throw GenerationError("no uniquely solvable puzzle with " + std::to_string(blanks) +
                        " blanks after " + std::to_string(kAttempts) + " attempts");
}

SudokuEpisode sudoku_from_puzzle(const SudokuGrid& puzzle) {
  if (count_solutions(puzzle, 2) != 1) throw GenerationError("puzzle is not uniquely solvable");
  return SudokuEpisode{puzzle, *solve_sudoku(puzzle), puzzle};
}

ActionSet sudoku_legal(const SudokuEpisode& ep) {
  ActionSet out;
  const auto masks = build_masks(ep.current);
  if (!masks) return out;
  for (int i = 0; i < 81; ++i) {
    if (ep.current[i] != 0) continue;
    const int r = i / 9, c = i % 9;
    const auto used = masks->used(r, c);
    for (int d = 1; d <= 9; ++d)
      if (!(used & (1u << d))) out.insert(Fill{r + 1, c + 1, d});
  }
  return out;
}

bool sudoku_terminal(const SudokuEpisode& ep) {
  if (grid_full(ep.current)) return true;
  const auto masks = build_masks(ep.current);
  for (int i = 0; i < 81; ++i) {
    if (ep.current[i] != 0) continue;
    if ((kAllDigits & ~masks->used(i / 9, i % 9)) != 0) return false;
  }
  return true;
}

SudokuEpisode sudoku_apply(const SudokuEpisode& ep, const Fill& a) {
  if (a.row < 1 || a.row > 9 || a.col < 1 || a.col > 9 || a.digit < 1 || a.digit > 9)
    throw OutOfRangeError("fill coordinates or digit out of range");
  const int r = a.row - 1, c = a.col - 1, i = r * 9 + c;
  const std::string where = "(" + std::to_string(a.row) + "," + std::to_string(a.col) + ")";
  if (ep.is_given(r, c)) throw IllegalMoveError("cannot overwrite pre-filled cell " + where);
  if (ep.current[i] != 0) throw IllegalMoveError("cell " + where + " is already filled");
  if (sudoku_terminal(ep)) throw IllegalMoveError("sudoku episode is over");
  const auto masks = build_masks(ep.current);
  if (masks->used(r, c) & (1u << a.digit))
    throw IllegalMoveError("digit " + std::to_string(a.digit) + " conflicts at " + where);
  SudokuEpisode next = ep;
  next.current[i] = static_cast<std::uint8_t>(a.digit);
  return next;
}

SudokuMetrics sudoku_metrics(const SudokuEpisode& ep, bool ended_early) {
  if (!ended_early && !sudoku_terminal(ep)) throw NonTerminalError("sudoku episode not finished");
  const int blanks = ep.initial_blanks();
  int correct = 0;
  for (int i = 0; i < 81; ++i)
    if (ep.puzzle[i] == 0 && ep.current[i] != 0 && ep.current[i] == ep.solution[i]) ++correct;
  SudokuMetrics m;
  m.success = ep.current == ep.solution;
  m.completion_rate = blanks == 0 ? 1.0 : static_cast<double>(correct) / blanks;
  return m;
}

std::string grid_to_string(const SudokuGrid& g) {
  std::string s(81, '.');
  for (int i = 0; i < 81; ++i)
    if (g[i] != 0) s[i] = static_cast<char>('0' + g[i]);
  return s;
}

SudokuGrid grid_from_string(std::string_view s) {
  SudokuGrid g{};
  int n = 0;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (n == 81) throw FormatError("sudoku string longer than 81 cells");
    if (ch == '.' || ch == '0')
      g[n] = 0;
    else if (ch >= '1' && ch <= '9')
      g[n] = static_cast<std::uint8_t>(ch - '0');
    else
      throw FormatError(std::string("bad sudoku cell '") + ch + "'");
    ++n;
  }
  if (n != 81) throw FormatError("sudoku string needs 81 cells, got " + std::to_string(n));
  return g;
}

}  // namespace vpr
