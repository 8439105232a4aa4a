#include "vpr/constraint_oracle.hpp"

#include "vpr/errors.hpp"

namespace vpr {

namespace {

ActionSet solution_fills(const SudokuEpisode& ep) {
  ActionSet out;
  for (int i = 0; i < 81; ++i)
    if (ep.current[i] == 0) out.insert(Fill{i / 9 + 1, i % 9 + 1, ep.solution[i]});
  return out;
}

}  // namespace

SolutionRef::SolutionRef(const SudokuGrid& grid) : grid_(grid) {
  if (!grid_full(grid) || !grid_consistent(grid))
    throw InconsistentGridError("solution grid must be complete and consistent");
}

bool fill_is_valid(const SolutionRef& sol, const Fill& a) {
  if (a.row < 1 || a.row > 9 || a.col < 1 || a.col > 9 || a.digit < 1 || a.digit > 9)
    throw OutOfRangeError("fill coordinates or digit out of range");
  return sol.digit(a.row, a.col) == a.digit;
}

ActionSet oracle_valid_constraint(const SudokuEpisode& ep) {
  if (sudoku_terminal(ep)) throw TerminalError("sudoku episode is over");
  return solution_fills(ep);
}

VerifierVerdict verify_fill(const SudokuEpisode& ep, const Fill& a) {
  VerifierVerdict v;
  v.valid = fill_is_valid(SolutionRef::of(ep), a) ? 1 : 0;
  v.oracle_valid_set = solution_fills(ep);
  return v;
}

}  // namespace vpr
