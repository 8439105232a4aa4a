#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "naive_oracles.hpp"
#include "vpr/errors.hpp"
#include "vpr/posterior_oracle.hpp"

using namespace vpr;

TEST_CASE("a single revealed 1 in a corner") {
  // 2x2, one mine at (1,1), reveal (0,0) which shows 1.
  auto b = mine_reveal(mine_from_string(2, 2, "...M"), 0, 0);
  const auto pm = enumerate_consistent(b);
  CHECK(pm.config_count == 3);
  CHECK(pm.probability(0, 1) == doctest::Approx(1.0 / 3));
  CHECK(pm.membership[pm.index(0, 0)] == 0);
  CHECK(oracle_valid_probabilistic(b, pm).size() == 3);
}

TEST_CASE("interior cells are counted without enumeration") {
  // 5x5 untouched board, 5 mines: C(25,5) configurations, each cell 5/25.
  const auto b = mine_initial(1);
  const auto pm = enumerate_consistent(b);
  CHECK(pm.config_count == 53130);
  for (int i = 0; i < 25; ++i) CHECK(pm.membership[i] == 10626);
}

TEST_CASE("certain mines become flag actions, certain safes become the reveal set") {
  // Row of three: mine in the middle. Reveal both ends: each shows 1.
  auto b = mine_from_string(1, 3, ".M.");
  b = mine_reveal(b, 0, 0);
  const auto pm = enumerate_consistent(b);
  CHECK(pm.certainly_mine(0, 1));
  CHECK(pm.certainly_safe(0, 2));
  const auto set = oracle_valid_probabilistic(b, pm);
  CHECK(set == ActionSet{Reveal{0, 2}, Flag{0, 1}});

  CHECK(verdict_probabilistic(b, Reveal{0, 2}).valid == 1);
  CHECK(verdict_probabilistic(b, Reveal{0, 1}).valid == 0);
  CHECK(verdict_probabilistic(b, Flag{0, 1}).valid == 1);
  CHECK(verdict_probabilistic(b, Flag{0, 2}).valid == 0);
  CHECK_THROWS_AS(verdict_probabilistic(b, Reveal{0, 0}), IllegalMoveError);
}

TEST_CASE("unflag is valid iff the cell is not certainly a mine") {
  auto b = mine_reveal(mine_from_string(1, 3, ".M."), 0, 0);
  auto wrong = mine_flag(b, 0, 2);
  auto right = mine_flag(b, 0, 1);
  const auto v1 = verdict_probabilistic(wrong, Flag{0, 2});
  CHECK(v1.valid == 1);
  CHECK(v1.oracle_valid_set.count(Flag{0, 2}) == 1);
  CHECK(verdict_probabilistic(right, Flag{0, 1}).valid == 0);
}

TEST_CASE("flags carry no evidence") {
  auto b = mine_initial(5, 4, 4, 3);
  const auto before = enumerate_consistent(b);
  b = mine_flag(b, 0, 0);
  CHECK(enumerate_consistent(b) == before);
}

TEST_CASE("inconsistent observations are rejected") {
  MineObservation obs;
  obs.rows = 1;
  obs.cols = 2;
  obs.cells = {2, MineObservation::kHidden};
  CHECK_THROWS_AS(enumerate_consistent(obs, 1), InconsistentObservationError);
}

TEST_CASE("terminal boards have no oracle set") {
  const auto lost = mine_reveal(mine_from_string(1, 3, ".M."), 0, 1);
  CHECK_THROWS_AS(oracle_valid_probabilistic(lost), TerminalError);
}

TEST_CASE("property: exact agreement with the all-subsets oracle on random boards") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 300; ++k) {
    const auto b = naive::random_midgame(rng);
    const auto pm = enumerate_consistent(b);
    const auto ref = naive::posterior_all_subsets(observe(b), b.mine_count());
    REQUIRE(pm.config_count == ref.configs);
    REQUIRE(pm.membership == ref.membership);
    std::uint64_t mass = 0;
    for (auto m : pm.membership) mass += m;
    CHECK(mass == pm.config_count * static_cast<std::uint64_t>(b.mine_count()));
    // The true layout is always one of the consistent configurations.
    for (int i = 0; i < b.cells(); ++i)
      if (b.mine[i]) CHECK(pm.membership[i] > 0);
  }
}

TEST_CASE("property: reveal set cells share the minimum posterior") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 200; ++k) {
    const auto b = naive::random_midgame(rng);
    const auto pm = enumerate_consistent(b);
    std::uint64_t lo = UINT64_MAX;
    for (int i = 0; i < b.cells(); ++i)
      if (!b.revealed[i] && !b.flagged[i]) lo = std::min(lo, pm.membership[i]);
    for (const auto& a : oracle_valid_probabilistic(b, pm)) {
      if (auto* r = std::get_if<Reveal>(&a)) {
        CHECK(pm.membership[pm.index(r->row, r->col)] == lo);
      } else {
        const auto& f = std::get<Flag>(a);
        // Flag a certain mine, or lift a flag that might be wrong.
        if (b.flagged[b.index(f.row, f.col)])
          CHECK_FALSE(pm.certainly_mine(f.row, f.col));
        else
          CHECK(pm.certainly_mine(f.row, f.col));
      }
    }
  }
}

TEST_CASE("property: the oracle set is never empty and matches the verdict") {
  std::mt19937_64 rng(91);
  for (int k = 0; k < 300; ++k) {
    auto b = naive::random_midgame(rng);
    // Half the boards get every hidden cell flagged, so no reveal is left.
    if (k % 2)
      for (int i = 0; i < b.cells(); ++i)
        if (!b.revealed[i] && !b.flagged[i]) b = mine_flag(b, i / b.cols, i % b.cols);
    if (!b.ongoing()) continue;
    const auto set = oracle_valid_probabilistic(b);
    REQUIRE_FALSE(set.empty());
    const auto legal = mine_legal(b);
    const auto v = verdict_probabilistic(b, *legal.begin());
    CHECK(v.oracle_valid_set == set);
  }
}
