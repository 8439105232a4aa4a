#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "vpr/action.hpp"

namespace vpr {

enum class TttStatus : unsigned char { ongoing, x_wins, o_wins, draw };

/// 3x3 board as two 9-bit occupancy masks; cell index = 3*row + col.
struct TttState {
  std::uint16_t x_mask{0};
  std::uint16_t o_mask{0};
  Mark to_move{Mark::X};
  TttStatus status{TttStatus::ongoing};

  std::optional<Mark> at(int row, int col) const noexcept;
  std::uint16_t empty_mask() const noexcept {
    return static_cast<std::uint16_t>(~(x_mask | o_mask) & 0x1FF);
  }
  int move_count() const noexcept;
  bool ongoing() const noexcept { return status == TttStatus::ongoing; }

  bool operator==(const TttState&) const = default;
};

inline constexpr std::array<std::uint16_t, 8> kTttLines = {
    0007, 0070, 0700,  // rows
    0111, 0222, 0444,  // columns
    0421, 0124         // diagonals
};

constexpr bool ttt_has_line(std::uint16_t mask) noexcept {
  for (auto line : kTttLines)
    if ((mask & line) == line) return true;
  return false;
}

/// Status of an arbitrary pair of masks, recomputed over all eight lines.
TttStatus ttt_status_of(std::uint16_t x_mask, std::uint16_t o_mask) noexcept;

TttState ttt_initial() noexcept;

/// Place actions for every empty cell. Throws TerminalError on a finished game.
ActionSet ttt_legal(const TttState& s);

/// Throws IllegalMoveError on an occupied cell, a wrong mark, an out-of-range
/// cell, or a finished game.
TttState ttt_apply(const TttState& s, const Place& a);

/// Unchecked placement of the side to move on `cell` (must be empty, game
/// ongoing). Hot path for search.
TttState ttt_play_cell(const TttState& s, int cell) noexcept;

/// +1 win, 0 draw, -1 loss for `protagonist`. Throws NonTerminalError.
double ttt_return(const TttState& s, Mark protagonist);

/// Parses a 9-character row-major board ('X', 'O', '.'); side to move and
/// status are derived. Throws FormatError on bad input or impossible counts.
TttState ttt_from_string(std::string_view cells);

}  // namespace vpr
