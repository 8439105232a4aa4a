#pragma once

#include <string>

#include "vpr/minesweeper.hpp"
#include "vpr/sudoku.hpp"
#include "vpr/tictactoe.hpp"

namespace vpr {

// GAME STATE blocks shown to agents. The last line never carries trailing
// whitespace.

std::string render_observation(const TttState& s);
std::string render_observation(const SudokuGrid& g);
std::string render_observation(const SudokuEpisode& ep);
std::string render_observation(const MineObservation& obs);
std::string render_observation(const MineBoard& b);

}  // namespace vpr
