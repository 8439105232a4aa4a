#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "vpr/action.hpp"
#include "vpr/minesweeper.hpp"
#include "vpr/sudoku.hpp"
#include "vpr/tictactoe.hpp"

namespace vpr {

/// Any environment's state; every dispatch below is total over the three.
using GameState = std::variant<TttState, SudokuEpisode, MineBoard>;

struct EnvOptions {
  int sudoku_blanks{kSudokuDefaultBlanks};
  int mine_rows{5};
  int mine_cols{5};
  int mine_count{5};
  bool mine_flood_fill{false};

  bool operator==(const EnvOptions&) const = default;
};

GameState initial_state(EnvKind env, std::uint64_t seed, const EnvOptions& opts = {});
EnvKind env_kind(const GameState& s) noexcept;
bool is_terminal(const GameState& s);
/// Empty on terminal states.
ActionSet legal_actions(const GameState& s);
/// Throws IllegalMoveError when the action belongs to another environment
/// or is illegal in `s`.
GameState apply_action(const GameState& s, const Action& a);
std::string render_observation(const GameState& s);
/// Coordinate bounds used for parsing agent responses.
GridDims action_dims(const GameState& s) noexcept;
/// Turn limit for the agent in this environment.
int horizon(EnvKind env, const EnvOptions& opts = {}) noexcept;

}  // namespace vpr
