#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vpr/action.hpp"

namespace vpr {

enum class MineStatus : unsigned char { ongoing, lost, won };

inline constexpr int kMineHorizon = 60;

struct MineBoard {
  int rows{5};
  int cols{5};
  std::vector<std::uint8_t> mine;
  std::vector<std::uint8_t> revealed;
  std::vector<std::uint8_t> flagged;
  MineStatus status{MineStatus::ongoing};
  /// Classic recursive opening of zero cells; off by default.
  bool flood_fill{false};

  int cells() const noexcept { return rows * cols; }
  int index(int r, int c) const noexcept { return r * cols + c; }
  bool in_bounds(int r, int c) const noexcept {
    return r >= 0 && r < rows && c >= 0 && c < cols;
  }
  int mine_count() const noexcept;
  int safe_cells() const noexcept { return cells() - mine_count(); }
  int revealed_safe() const noexcept;
  /// Mines among the up-to-eight neighbours of (r, c).
  int adjacent_mines(int r, int c) const noexcept;
  bool ongoing() const noexcept { return status == MineStatus::ongoing; }

  bool operator==(const MineBoard&) const = default;
};

/// What an agent sees: per cell, kHidden, kFlag or the revealed digit.
struct MineObservation {
  static constexpr int kHidden = -1;
  static constexpr int kFlag = -2;
  static constexpr int kMine = -3;  // only the exploding cell on a lost board

  int rows{5};
  int cols{5};
  std::vector<int> cells;

  int at(int r, int c) const { return cells[r * cols + c]; }
  bool operator==(const MineObservation&) const = default;
};

/// Mines sampled uniformly without replacement; deterministic in `seed`.
/// Throws ConfigError unless 0 <= n_mines < rows*cols.
MineBoard mine_initial(std::uint64_t seed, int rows = 5, int cols = 5, int n_mines = 5,
                       bool flood_fill = false);

/// Fixture board from a row-major string with 'M' for mines and any other
/// non-space character for safe cells. Throws FormatError.
MineBoard mine_from_string(int rows, int cols, std::string_view layout);

/// Throws IllegalMoveError on revealed/flagged/out-of-range cells or a
/// finished board.
MineBoard mine_reveal(const MineBoard& b, int r, int c);
/// Toggles a flag. Throws IllegalMoveError on revealed/out-of-range cells or a
/// finished board.
MineBoard mine_flag(const MineBoard& b, int r, int c);

/// Reveals of unrevealed unflagged cells plus flag toggles of all unrevealed
/// cells. Empty on a finished board.
ActionSet mine_legal(const MineBoard& b);

MineObservation observe(const MineBoard& b);

struct MineMetrics {
  bool success{false};
  double completion_rate{0.0};
};

/// success iff won; completion rate = revealed safe cells / safe cells.
/// `ended_early` marks a forfeit or horizon truncation; otherwise a
/// non-terminal board throws NonTerminalError.
MineMetrics mine_metrics(const MineBoard& b, bool ended_early = false);

}  // namespace vpr
