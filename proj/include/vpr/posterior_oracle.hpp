#pragma once

#include <cstdint>
#include <vector>

#include "vpr/action.hpp"
#include "vpr/minesweeper.hpp"
#include "vpr/trajectory.hpp"

namespace vpr {

/// Exact mine posterior of every hidden cell. Probabilities are kept as
/// integer counts over a common denominator, so comparisons are exact:
/// P(mine at cell) = membership[cell] / config_count.
struct PosteriorMap {
  int rows{0};
  int cols{0};
  /// Mines still hidden among the unknown cells.
  int remaining_mines{0};
  /// |consistent configurations|.
  std::uint64_t config_count{0};
  /// Configurations with a mine at the cell; 0 for revealed cells.
  std::vector<std::uint64_t> membership;
  /// 1 for unrevealed (possibly flagged) cells.
  std::vector<std::uint8_t> hidden;

  int index(int r, int c) const noexcept { return r * cols + c; }
  double probability(int r, int c) const;
  bool certainly_safe(int r, int c) const { return membership[index(r, c)] == 0; }
  bool certainly_mine(int r, int c) const {
    return hidden[index(r, c)] && membership[index(r, c)] == config_count;
  }

  bool operator==(const PosteriorMap&) const = default;
};

/// Enumerates every placement of the hidden mines that reproduces each
/// revealed digit. Flags carry no evidence. Frontier cells (hidden cells next
/// to a revealed digit) are enumerated by backtracking with constraint
/// pruning; the remaining interior cells are interchangeable and are counted
/// with binomial coefficients, which keeps the count exact.
///
/// `n_mines` is the total mine count of the board. Throws
/// InconsistentObservationError when no configuration is consistent and
/// ConfigError when the count would overflow 64 bits.
PosteriorMap enumerate_consistent(const MineObservation& obs, int n_mines);
PosteriorMap enumerate_consistent(const MineBoard& b);

/// Reveals of minimum-posterior cells (over unrevealed, unflagged cells),
/// flags of unflagged cells with posterior exactly 1, and unflags (a Flag
/// toggle) of flagged cells with posterior below 1. Never empty on an ongoing
/// board, since an unrevealed safe cell is either revealable or a removable
/// flag. Throws TerminalError on a finished board.
ActionSet oracle_valid_probabilistic(const MineBoard& b, const PosteriorMap& pm);
ActionSet oracle_valid_probabilistic(const MineBoard& b);

/// Verdict for a legal action. A flag toggle on an already flagged cell
/// (unflag) is valid only when that cell's posterior is below 1. The
/// oracle-valid set is oracle_valid_probabilistic. Throws IllegalMoveError when `a`
/// is not legal on `b`.
VerifierVerdict verdict_probabilistic(const MineBoard& b, const Action& a);

}  // namespace vpr
