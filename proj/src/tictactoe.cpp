#include "vpr/tictactoe.hpp"

#include <bit>
#include <string>

#include "vpr/errors.hpp"

namespace vpr {

std::optional<Mark> TttState::at(int row, int col) const noexcept {
  const std::uint16_t bit = static_cast<std::uint16_t>(1u << (3 * row + col));
  if (x_mask & bit) return Mark::X;
  if (o_mask & bit) return Mark::O;
  return std::nullopt;
}

int TttState::move_count() const noexcept {
  return std::popcount(static_cast<unsigned>(x_mask | o_mask));
}

TttStatus ttt_status_of(std::uint16_t x_mask, std::uint16_t o_mask) noexcept {
  if (ttt_has_line(x_mask)) return TttStatus::x_wins;
  if (ttt_has_line(o_mask)) return TttStatus::o_wins;
  if ((x_mask | o_mask) == 0x1FF) return TttStatus::draw;
  return TttStatus::ongoing;
}

TttState ttt_initial() noexcept { return TttState{}; }

ActionSet ttt_legal(const TttState& s) {
  if (!s.ongoing()) throw TerminalError("tic-tac-toe game is over");
  ActionSet out;
  const auto empty = s.empty_mask();
  for (int cell = 0; cell < 9; ++cell)
    if (empty & (1u << cell)) out.insert(Place{s.to_move, cell / 3, cell % 3});
  return out;
}

TttState ttt_play_cell(const TttState& s, int cell) noexcept {
  TttState next = s;
  const auto bit = static_cast<std::uint16_t>(1u << cell);
  if (s.to_move == Mark::X)
    next.x_mask |= bit;
  else
    next.o_mask |= bit;
  next.status = ttt_status_of(next.x_mask, next.o_mask);
  next.to_move = opponent_of(s.to_move);
  return next;
}

TttState ttt_apply(const TttState& s, const Place& a) {
  if (!s.ongoing()) throw IllegalMoveError("tic-tac-toe game is over");
  if (a.row < 0 || a.row > 2 || a.col < 0 || a.col > 2)
    throw IllegalMoveError("cell outside the 3x3 board");
  if (a.mark != s.to_move)
    throw IllegalMoveError(std::string("it is ") + mark_char(s.to_move) + "'s turn");
  const int cell = 3 * a.row + a.col;
  if (!(s.empty_mask() & (1u << cell)))
    throw IllegalMoveError("cell (" + std::to_string(a.row) + "," + std::to_string(a.col) +
                           ") is occupied");
  return ttt_play_cell(s, cell);
}

double ttt_return(const TttState& s, Mark protagonist) {
  switch (s.status) {
    case TttStatus::ongoing: throw NonTerminalError("tic-tac-toe game still ongoing");
    case TttStatus::draw: return 0.0;
    case TttStatus::x_wins: return protagonist == Mark::X ? 1.0 : -1.0;
    case TttStatus::o_wins: return protagonist == Mark::O ? 1.0 : -1.0;
  }
  return 0.0;
}

TttState ttt_from_string(std::string_view cells) {
  if (cells.size() != 9) throw FormatError("tic-tac-toe board needs 9 cells");
  TttState s;
  for (int i = 0; i < 9; ++i) {
    const auto bit = static_cast<std::uint16_t>(1u << i);
    switch (cells[i]) {
      case 'X': s.x_mask |= bit; break;
      case 'O': s.o_mask |= bit; break;
      case '.': break;
      default: throw FormatError(std::string("bad tic-tac-toe cell '") + cells[i] + "'");
    }
  }
  const int nx = std::popcount(static_cast<unsigned>(s.x_mask));
  const int no = std::popcount(static_cast<unsigned>(s.o_mask));
  if (nx - no != 0 && nx - no != 1) throw FormatError("impossible mark counts");
  s.to_move = nx == no ? Mark::X : Mark::O;
  s.status = ttt_status_of(s.x_mask, s.o_mask);
  return s;
}

}  // namespace vpr
