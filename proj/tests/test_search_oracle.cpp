#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "naive_oracles.hpp"
#include "vpr/errors.hpp"
#include "vpr/search_oracle.hpp"

using namespace vpr;

TEST_CASE("minimax: empty board is a draw and every move there draws") {
  const auto r = minimax(ttt_initial());
  CHECK(r.value == 0);
  CHECK(r.optimal_set.size() == 9);
}

TEST_CASE("minimax agrees with a naive solver and satisfies negamax on all states") {
  naive::TttMinimax ref;
  const auto states = all_reachable_states();
  CHECK(states.size() == 5478);
  for (const auto& s : states) {
    REQUIRE(minimax_value(s) == ref.value(s));
    if (!s.ongoing()) {
      CHECK(minimax(s).optimal_set.empty());
      continue;
    }
    int best = -2;
    std::set<int> argmax_cells;
    for (const auto& a : ttt_legal(s)) {
      const auto& p = std::get<Place>(a);
      const int v = -minimax_value(ttt_apply(s, p));
      if (v > best) {
        best = v;
        argmax_cells.clear();
      }
      if (v == best) argmax_cells.insert(p.row * 3 + p.col);
    }
    const auto r = minimax(s);
    REQUIRE(r.value == best);
    std::set<int> got;
    for (const auto& a : r.optimal_set) got.insert(std::get<Place>(a).row * 3 + std::get<Place>(a).col);
    REQUIRE(got == argmax_cells);
  }
}

TEST_CASE("search is deterministic in its seed and spends the budget") {
  const auto s = ttt_from_string("X...O....");
  SearchVerdictConfig cfg;
  cfg.n_simulations = 500;
  cfg.seed = 12;
  const auto a = mcts_search(s, cfg);
  const auto b = mcts_search(s, cfg);
  CHECK(a.total_simulations == 500);
  REQUIRE(a.actions.size() == 7);
  int visits = 0;
  for (std::size_t i = 0; i < a.actions.size(); ++i) {
    CHECK(a.actions[i].visits == b.actions[i].visits);
    CHECK(a.actions[i].mean_value == b.actions[i].mean_value);
    visits += a.actions[i].visits;
  }
  CHECK(visits == 500);
}

TEST_CASE("search finds an immediate win and a forced block") {
  SearchVerdictConfig cfg;
  cfg.n_simulations = 2000;
  // X to move, wins at (0,2).
  const auto win = ttt_from_string("XX.OO....");
  CHECK(search_oracle_set(win, cfg) == ActionSet{Place{Mark::X, 0, 2}});
  // O to move must block (0,2).
  const auto block = ttt_from_string("XX..O....");
  CHECK(search_oracle_set(block, cfg) == ActionSet{Place{Mark::O, 0, 2}});
  CHECK(mcts_search(block, cfg).best_move() == Place{Mark::O, 0, 2});
}

TEST_CASE("plain UCT backs values up with the right sign") {
  // X wins at (0,2); every other move lets O win at (1,2) or keeps the game open.
  const auto s = ttt_from_string("XX.OO....");
  const Place win{Mark::X, 0, 2};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SearchVerdictConfig cfg;
    cfg.n_simulations = 500;
    cfg.solve = false;
    cfg.seed = seed;
    const auto stats = mcts_search(s, cfg);
    const double w = stats.at(win).mean_value;
    CHECK(w == doctest::Approx(1.0));
    for (const auto& a : stats.actions)
      if (a.action != win && a.visits > 0) CHECK(a.mean_value < w);
  }
}

TEST_CASE("solver values are exact once proven") {
  SearchVerdictConfig cfg;
  cfg.n_simulations = 10000;
  const auto s = ttt_from_string("XO.X.O...");
  const auto stats = mcts_search(s, cfg);
  for (const auto& a : stats.actions)
    if (a.proven) CHECK(*a.proven == -minimax_value(ttt_apply(s, a.action)));
}

TEST_CASE("plain UCT still runs and returns a non-empty argmax set") {
  SearchVerdictConfig cfg;
  cfg.n_simulations = 300;
  cfg.solve = false;
  const auto stats = mcts_search(ttt_initial(), cfg);
  for (const auto& a : stats.actions) CHECK_FALSE(a.proven.has_value());
  CHECK_FALSE(argmax_set(stats, cfg.tie_tolerance).empty());
}

TEST_CASE("argmax_set keeps values within the tolerance of the best") {
  SearchStats st;
  st.actions = {{Place{Mark::X, 0, 0}, 0.5, 10, {}},
                {Place{Mark::X, 0, 1}, 0.5 - 1e-12, 10, {}},
                {Place{Mark::X, 0, 2}, 0.4, 10, {}},
                {Place{Mark::X, 1, 0}, 0.9, 0, {}}};  // unvisited: ignored
  CHECK(argmax_set(st, 1e-9) == ActionSet{Place{Mark::X, 0, 0}, Place{Mark::X, 0, 1}});
  CHECK(argmax_set(st, 0.2).size() == 3);
}

TEST_CASE("configuration and state errors") {
  SearchVerdictConfig cfg;
  cfg.n_simulations = 0;
  CHECK_THROWS_AS(mcts_search(ttt_initial(), cfg), ConfigError);
  cfg.n_simulations = 10;
  cfg.tie_tolerance = -1;
  CHECK_THROWS_AS(mcts_search(ttt_initial(), cfg), ConfigError);
  CHECK_THROWS_AS(mcts_search(ttt_from_string("XXXOO...."), SearchVerdictConfig{}), TerminalError);
  CHECK_THROWS_AS(disagreement_rate(SearchVerdictConfig{}, {}), EmptyInputError);
}

TEST_CASE("position sampling is uniform over distinct ongoing states") {
  const auto p = sample_positions(200, 4);
  std::set<std::pair<int, int>> distinct;
  for (const auto& s : p) {
    CHECK(s.ongoing());
    distinct.insert({s.x_mask, s.o_mask});
  }
  CHECK(distinct.size() == 200);
  CHECK(sample_positions(200, 4) == p);
  CHECK(sample_positions(5000, 4).size() == 5000);
}

TEST_CASE("disagreement falls with the simulation budget") {
  const auto pos = sample_positions(60, 1);
  SearchVerdictConfig cfg;
  cfg.n_simulations = 20;
  const double low = disagreement_rate(cfg, pos);
  cfg.n_simulations = 2000;
  const double high = disagreement_rate(cfg, pos);
  CHECK(high <= low);
  CHECK(high <= 0.05);
}
