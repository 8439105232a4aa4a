#include "vpr/game_state.hpp"

#include "vpr/errors.hpp"
#include "vpr/render.hpp"

namespace vpr {

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void wrong_env(const GameState& s, const Action& a) {
  throw IllegalMoveError(std::string("action ") + format_action(a) + " does not belong to " +
                         std::string(to_string(env_kind(s))));
}
}  // namespace

GameState initial_state(EnvKind env, std::uint64_t seed, const EnvOptions& opts) {
  switch (env) {
    case EnvKind::tictactoe: return ttt_initial();
    case EnvKind::sudoku: return sudoku_generate(seed, opts.sudoku_blanks);
    case EnvKind::minesweeper:
      return mine_initial(seed, opts.mine_rows, opts.mine_cols, opts.mine_count,
                          opts.mine_flood_fill);
  }
  throw ConfigError("unknown environment");
}

EnvKind env_kind(const GameState& s) noexcept {
  switch (s.index()) {
    case 0: return EnvKind::tictactoe;
    case 1: return EnvKind::sudoku;
    default: return EnvKind::minesweeper;
  }
}

bool is_terminal(const GameState& s) {
  return std::visit(Overloaded{[](const TttState& t) { return !t.ongoing(); },
                               [](const SudokuEpisode& e) { return sudoku_terminal(e); },
                               [](const MineBoard& b) { return !b.ongoing(); }},
                    s);
}

ActionSet legal_actions(const GameState& s) {
  return std::visit(Overloaded{[](const TttState& t) { return t.ongoing() ? ttt_legal(t) : ActionSet{}; },
                               [](const SudokuEpisode& e) { return sudoku_legal(e); },
                               [](const MineBoard& b) { return mine_legal(b); }},
                    s);
}

GameState apply_action(const GameState& s, const Action& a) {
  if (const auto* t = std::get_if<TttState>(&s)) {
    if (const auto* p = std::get_if<Place>(&a)) return ttt_apply(*t, *p);
  } else if (const auto* e = std::get_if<SudokuEpisode>(&s)) {
    if (const auto* f = std::get_if<Fill>(&a)) {
      if (f->row < 1 || f->row > 9 || f->col < 1 || f->col > 9 || f->digit < 1 || f->digit > 9)
        throw IllegalMoveError("fill out of range");
      return sudoku_apply(*e, *f);
    }
  } else if (const auto* b = std::get_if<MineBoard>(&s)) {
    if (const auto* r = std::get_if<Reveal>(&a)) return mine_reveal(*b, r->row, r->col);
    if (const auto* f = std::get_if<Flag>(&a)) return mine_flag(*b, f->row, f->col);
  }
  wrong_env(s, a);
}

std::string render_observation(const GameState& s) {
  return std::visit([](const auto& st) { return render_observation(st); }, s);
}

GridDims action_dims(const GameState& s) noexcept {
  if (const auto* b = std::get_if<MineBoard>(&s)) return GridDims{b->rows, b->cols};
  return GridDims{};
}

int horizon(EnvKind env, const EnvOptions& opts) noexcept {
  switch (env) {
    case EnvKind::tictactoe: return 9;
    case EnvKind::sudoku: return opts.sudoku_blanks;
    case EnvKind::minesweeper: return kMineHorizon;
  }
  return 0;
}

}  // namespace vpr
