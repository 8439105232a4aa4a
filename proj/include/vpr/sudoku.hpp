#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "vpr/action.hpp"

namespace vpr {

/// Row-major 9x9 grid; 0 marks an empty cell.
using SudokuGrid = std::array<std::uint8_t, 81>;

inline constexpr int kSudokuDefaultBlanks = 40;
inline constexpr int kSudokuHorizon = 40;

struct SudokuEpisode {
  SudokuGrid puzzle{};
  SudokuGrid solution{};
  SudokuGrid current{};

  bool is_given(int r0, int c0) const noexcept { return puzzle[r0 * 9 + c0] != 0; }
  int initial_blanks() const noexcept;
  int empty_cells() const noexcept;

  bool operator==(const SudokuEpisode&) const = default;
};

/// No digit repeats within any row, column or box.
bool grid_consistent(const SudokuGrid& g) noexcept;
bool grid_full(const SudokuGrid& g) noexcept;

/// Number of completions of `g`, truncated at `cap`. Throws
/// InconsistentGridError when `g` already violates a constraint.
int count_solutions(const SudokuGrid& g, int cap = 2);

/// First completion found, or nullopt.
std::optional<SudokuGrid> solve_sudoku(const SudokuGrid& g);

/// Deterministic in `seed`. Builds a random full grid, then clears cells in a
/// random order, keeping each removal only if the puzzle stays uniquely
/// solvable. Retries with derived seeds; throws GenerationError when the
/// budget is exhausted (likely only for very high blank counts).
SudokuEpisode sudoku_generate(std::uint64_t seed, int blanks = kSudokuDefaultBlanks);

/// Episode whose puzzle is `puzzle`; the solution is recovered by solving.
/// Throws GenerationError when the puzzle is not uniquely solvable.
SudokuEpisode sudoku_from_puzzle(const SudokuGrid& puzzle);

/// Fills into empty cells that don't immediately conflict with the current
/// row, column or box.
ActionSet sudoku_legal(const SudokuEpisode& ep);

/// Throws IllegalMoveError on a given cell, an occupied cell, a conflicting
/// digit, or a terminal episode; OutOfRangeError on bad coordinates.
SudokuEpisode sudoku_apply(const SudokuEpisode& ep, const Fill& a);

/// Grid full or no legal fill left.
bool sudoku_terminal(const SudokuEpisode& ep);

struct SudokuMetrics {
  bool success{false};
  double completion_rate{0.0};
};

/// success iff current equals the solution; completion rate is the share of
/// initial blanks that the agent filled correctly. `ended_early` marks a
/// forfeit or truncation; otherwise a non-terminal episode throws
/// NonTerminalError.
SudokuMetrics sudoku_metrics(const SudokuEpisode& ep, bool ended_early = false);

/// 81 characters, row-major, '.' for empty.
std::string grid_to_string(const SudokuGrid& g);
/// Accepts '.' or '0' for empty; whitespace is skipped. Throws FormatError.
SudokuGrid grid_from_string(std::string_view s);

}  // namespace vpr
