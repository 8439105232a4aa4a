#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <functional>
#include <set>

#include "vpr/errors.hpp"
#include "vpr/tictactoe.hpp"

using namespace vpr;

namespace {

// Board as a plain char grid, winner by explicit scan of rows, columns, diagonals.
using Grid = std::array<std::array<char, 3>, 3>;

char naive_winner(const Grid& g) {
  for (int i = 0; i < 3; ++i) {
    if (g[i][0] != '.' && g[i][0] == g[i][1] && g[i][1] == g[i][2]) return g[i][0];
    if (g[0][i] != '.' && g[0][i] == g[1][i] && g[1][i] == g[2][i]) return g[0][i];
  }
  if (g[1][1] != '.' && g[0][0] == g[1][1] && g[1][1] == g[2][2]) return g[1][1];
  if (g[1][1] != '.' && g[0][2] == g[1][1] && g[1][1] == g[2][0]) return g[1][1];
  return '.';
}

Grid to_grid(const TttState& s) {
  Grid g{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      auto m = s.at(r, c);
      g[r][c] = m ? mark_char(*m) : '.';
    }
  return g;
}

}  // namespace

TEST_CASE("initial board") {
  const auto s = ttt_initial();
  CHECK(s.to_move == Mark::X);
  CHECK(s.ongoing());
  CHECK(ttt_legal(s).size() == 9);
  CHECK(s.move_count() == 0);
}

TEST_CASE("illegal moves are rejected") {
  auto s = ttt_apply(ttt_initial(), Place{Mark::X, 0, 0});
  CHECK_THROWS_AS(ttt_apply(s, Place{Mark::O, 0, 0}), IllegalMoveError);
  CHECK_THROWS_AS(ttt_apply(s, Place{Mark::X, 1, 1}), IllegalMoveError);  // wrong side
  CHECK_THROWS_AS(ttt_apply(s, Place{Mark::O, 3, 1}), IllegalMoveError);
}

TEST_CASE("wins, draws and returns") {
  const auto xwin = ttt_from_string("XXXOO....");
  CHECK(xwin.status == TttStatus::x_wins);
  CHECK(ttt_return(xwin, Mark::X) == 1.0);
  CHECK(ttt_return(xwin, Mark::O) == -1.0);
  CHECK_THROWS_AS(ttt_legal(xwin), TerminalError);
  CHECK_THROWS_AS(ttt_apply(xwin, Place{Mark::O, 2, 2}), IllegalMoveError);

  const auto draw = ttt_from_string("XOXXOOOXX");
  CHECK(draw.status == TttStatus::draw);
  CHECK(ttt_return(draw, Mark::X) == 0.0);

  CHECK_THROWS_AS(ttt_return(ttt_initial(), Mark::X), NonTerminalError);
}

TEST_CASE("malformed board strings") {
  CHECK_THROWS_AS(ttt_from_string("XXX"), FormatError);
  CHECK_THROWS_AS(ttt_from_string("XXXXO...."), FormatError);  // impossible counts
  CHECK_THROWS_AS(ttt_from_string("XXZ......"), FormatError);
}

TEST_CASE("exhaustive game tree agrees with a naive board model") {
  // Independent counts of the full game tree: 255168 complete games,
  // 5478 distinct positions, 4520 of them non-terminal.
  std::set<std::pair<int, int>> seen;
  long games = 0;
  std::function<void(const TttState&)> walk = [&](const TttState& s) {
    seen.insert({s.x_mask, s.o_mask});
    const Grid g = to_grid(s);
    const char w = naive_winner(g);
    if (w == 'X') REQUIRE(s.status == TttStatus::x_wins);
    if (w == 'O') REQUIRE(s.status == TttStatus::o_wins);
    if (w == '.' && s.move_count() == 9) REQUIRE(s.status == TttStatus::draw);
    if (w == '.' && s.move_count() < 9) REQUIRE(s.ongoing());
    if (!s.ongoing()) {
      ++games;
      return;
    }
    const auto legal = ttt_legal(s);
    REQUIRE(static_cast<int>(legal.size()) == 9 - s.move_count());
    for (const auto& a : legal) {
      const auto& p = std::get<Place>(a);
      REQUIRE(p.mark == s.to_move);
      const auto next = ttt_apply(s, p);
      REQUIRE(next.at(p.row, p.col) == p.mark);
      REQUIRE(next.to_move == opponent_of(s.to_move));
      walk(next);
    }
  };
  walk(ttt_initial());
  CHECK(games == 255168);
  CHECK(seen.size() == 5478);
  int open = 0;
  for (auto [x, o] : seen) open += ttt_status_of(x, o) == TttStatus::ongoing;
  CHECK(open == 4520);
}
