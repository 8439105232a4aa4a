#pragma once

#include "vpr/action.hpp"
#include "vpr/sudoku.hpp"
#include "vpr/trajectory.hpp"

namespace vpr {

/// The unique solution grid of an episode.
class SolutionRef {
 public:
  /// Throws InconsistentGridError unless `grid` is complete and consistent.
  explicit SolutionRef(const SudokuGrid& grid);
  static SolutionRef of(const SudokuEpisode& ep) { return SolutionRef(ep.solution); }

  const SudokuGrid& grid() const noexcept { return grid_; }
  int digit(int row1, int col1) const noexcept { return grid_[(row1 - 1) * 9 + (col1 - 1)]; }

 private:
  SudokuGrid grid_;
};

/// I(solution[i,j] = d). Throws OutOfRangeError on bad coordinates/digit.
bool fill_is_valid(const SolutionRef& sol, const Fill& a);

/// One fill per empty cell of the current grid: the solution digit. Throws
/// TerminalError on a finished episode.
ActionSet oracle_valid_constraint(const SudokuEpisode& ep);

/// Verdict for `a` against the stored solution, with the oracle-valid set of
/// the current grid. Works on finished episodes too (empty set).
VerifierVerdict verify_fill(const SudokuEpisode& ep, const Fill& a);

}  // namespace vpr
