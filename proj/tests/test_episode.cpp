#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "vpr/episode.hpp"
#include "vpr/errors.hpp"
#include "vpr/persistence.hpp"

using namespace vpr;

namespace {

EpisodeConfig cfg_for(EnvKind env) {
  EpisodeConfig c;
  c.env = env;
  c.verifier.ttt = TttVerifier::minimax;
  c.opponent = Policy::uniform_random();
  c.opponent_random_share = 0.0;
  return c;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("vpr_test_" + name);
}

}  // namespace

TEST_CASE("sudoku with the oracle: 40 turns, solved, all VPR rewards 1") {
  const auto t = run_episode(cfg_for(EnvKind::sudoku), Policy::oracle_following(), 2);
  CHECK(t.length() == 40);
  CHECK(t.outcome.success);
  CHECK(t.outcome.completion_rate == 1.0);
  for (const auto& r : t.turns) {
    CHECK(r.reward_vpr == 1);
    CHECK(r.reward == 1.0);
  }
  CHECK(t.turns.back().terminal);
}

TEST_CASE("minesweeper with a random agent ends and reports bounded metrics") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = run_episode(cfg_for(EnvKind::minesweeper), Policy::uniform_random(), seed);
    CHECK(t.closed());
    CHECK(t.length() <= static_cast<std::size_t>(kMineHorizon));
    CHECK(t.outcome.completion_rate >= 0.0);
    CHECK(t.outcome.completion_rate <= 1.0);
    for (const auto& r : t.turns) CHECK(r.reward_vpr == r.verdict->valid);
  }
}

TEST_CASE("minesweeper horizon truncates an endless flagger") {
  std::vector<Action> script(kMineHorizon, Flag{0, 0});
  const auto t = run_episode(cfg_for(EnvKind::minesweeper), Policy::scripted_replay(script), 4);
  CHECK(t.length() == static_cast<std::size_t>(kMineHorizon));
  CHECK(t.outcome.truncated);
  CHECK_FALSE(t.outcome.success);
}

TEST_CASE("seat second: the opponent moves first in every game") {
  auto c = cfg_for(EnvKind::tictactoe);
  c.seat = Seat::second;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = run_episode(c, Policy::uniform_random(), seed);
    REQUIRE(t.opening.size() == 1);
    CHECK(std::get<Place>(t.opening[0]).mark == Mark::X);
    CHECK(t.agent_mark == Mark::O);
    CHECK(std::get<Place>(*t.turns[0].action).mark == Mark::O);
  }
}

TEST_CASE("minimax against minimax draws in both seats") {
  auto c = cfg_for(EnvKind::tictactoe);
  c.opponent = Policy::oracle_following();
  for (auto seat : {Seat::first, Seat::second}) {
    c.seat = seat;
    for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(run_episode(c, Policy::oracle_following(), seed).outcome.ret == 0.0);
  }
}

TEST_CASE("the training mix draws both opponent kinds") {
  auto c = cfg_for(EnvKind::tictactoe);
  c.opponent = Policy::oracle_following();
  c.opponent_random_share = 0.5;
  int random = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    random += Episode(c, seed).opponent().kind() == PolicyKind::uniform_random;
  CHECK(random > 70);
  CHECK(random < 130);
}

TEST_CASE("malformed responses forfeit") {
  SUBCASE("tic-tac-toe loses") {
    Episode ep(cfg_for(EnvKind::tictactoe), 1);
    const auto r = ep.step_text("I pick the centre");
    CHECK(r.forfeit);
    CHECK(r.done);
    CHECK(r.verdict.valid == 0);
    CHECK_FALSE(r.verdict.oracle_valid_set.empty());
    CHECK(ep.trajectory().outcome.ret == -1.0);
    CHECK(ep.trajectory().turns.back().response == "I pick the centre");
    CHECK_FALSE(ep.trajectory().turns.back().action.has_value());
    CHECK_THROWS_AS(ep.step_text("<answer><X(0,0)></answer>"), SequenceError);
  }
  SUBCASE("sudoku fails but keeps its completion rate") {
    Episode ep(cfg_for(EnvKind::sudoku), 3);
    const auto first = *exact_oracle_set(ep.state()).begin();
    CHECK(ep.step_text("<answer>" + format_action(first) + "</answer>").reward == 1.0);
    const auto r = ep.step_text("<answer><fill(1,1,5)> </answer> trailing");
    CHECK(r.forfeit);
    CHECK_FALSE(ep.trajectory().outcome.success);
    CHECK(ep.trajectory().outcome.completion_rate == doctest::Approx(1.0 / 40));
  }
  SUBCASE("illegal but well formed moves forfeit too") {
    Episode ep(cfg_for(EnvKind::minesweeper), 5);
    const auto r = ep.step_text("<answer><reveal(4,4)></answer><answer><reveal(0,0)></answer>");
    CHECK(r.forfeit);
    Episode ep2(cfg_for(EnvKind::minesweeper), 5);
    ep2.step(Reveal{0, 0});
    if (!ep2.done()) {
      const auto r2 = ep2.step(Reveal{0, 0});
      CHECK(r2.forfeit);
      CHECK(ep2.trajectory().turns.back().action == Action{Reveal{0, 0}});
    }
  }
}

TEST_CASE("episodes are deterministic in their seed") {
  for (auto env : {EnvKind::tictactoe, EnvKind::sudoku, EnvKind::minesweeper}) {
    auto c = cfg_for(env);
    c.verifier.ttt = TttVerifier::mcts;
    c.verifier.search.n_simulations = 200;
    c.opponent = Policy::mcts_player(SearchVerdictConfig{200});
    CHECK(run_episode(c, Policy::epsilon_oracle(0.3), 11) == run_episode(c, Policy::epsilon_oracle(0.3), 11));
  }
}

TEST_CASE("evaluate: oracle is perfect on sudoku, reproducible, paired seeds") {
  EvalConfig e;
  e.episode = cfg_for(EnvKind::sudoku);
  e.n_games = 8;
  e.n_runs = 2;
  const auto s = evaluate(e, Policy::oracle_following());
  CHECK(s.success_rate.mean == 1.0);
  CHECK(s.success_rate.std == 0.0);
  CHECK(s.completion_rate.mean == 1.0);
  CHECK(s.runs.size() == 2);

  e.episode = cfg_for(EnvKind::minesweeper);
  e.n_games = 64;
  const auto a = evaluate(e, Policy::uniform_random());
  const auto b = evaluate(e, Policy::uniform_random());
  CHECK(a.success_rate.mean == b.success_rate.mean);
  CHECK(a.completion_rate.std == b.completion_rate.std);
  CHECK(evaluate(e, Policy::oracle_following()).success_rate.mean > a.success_rate.mean);

  // The worker count must not change a single bit of the summary.
  e.workers = 1;
  const auto serial = evaluate(e, Policy::uniform_random());
  e.workers = 7;
  const auto wide = evaluate(e, Policy::uniform_random());
  REQUIRE(serial.runs.size() == wide.runs.size());
  for (std::size_t r = 0; r < serial.runs.size(); ++r) {
    CHECK(serial.runs[r].completion_rate == wide.runs[r].completion_rate);
    CHECK(serial.runs[r].success_rate == wide.runs[r].success_rate);
  }
  CHECK(serial.completion_rate.mean == a.completion_rate.mean);
  e.workers = -1;
  CHECK_THROWS_AS(evaluate(e, Policy::uniform_random()), ConfigError);
  e.workers = 0;

  e.n_games = 0;
  CHECK_THROWS_AS(evaluate(e, Policy::uniform_random()), ConfigError);
}

TEST_CASE("the first observation of a fresh episode is the bare board") {
  CHECK(Episode(cfg_for(EnvKind::tictactoe), 1).observation() == fixtures::kTttEmpty);
}

TEST_CASE("persistence round trip and re-verification") {
  std::vector<EpisodeLog> logs;
  auto ttt = cfg_for(EnvKind::tictactoe);
  ttt.verifier.ttt = TttVerifier::mcts;
  ttt.verifier.search.n_simulations = 300;
  ttt.seat = Seat::second;
  ttt.opponent = Policy::mcts_player(SearchVerdictConfig{300});
  ttt.reward_mode = RewardMode::mcpr;
  ttt.mcpr.rollouts = 10;
  logs.push_back({ttt, run_episode(ttt, Policy::uniform_random(), 1)});
  auto sud = cfg_for(EnvKind::sudoku);
  sud.reward_mode = RewardMode::outcome;
  logs.push_back({sud, run_episode(sud, Policy::epsilon_oracle(0.1), 2)});
  auto mine = cfg_for(EnvKind::minesweeper);
  {
    Episode ep(mine, 3);
    ep.step(Flag{1, 1});
    ep.step_text("no answer here");
    logs.push_back({mine, ep.trajectory()});
  }

  const auto path = temp_file("roundtrip.jsonl");
  CHECK(persist_trajectories(logs, path) == 3);
  const auto loaded = load_trajectories(path);
  REQUIRE(loaded.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(loaded[i].trajectory == logs[i].trajectory);
    CHECK(to_json(loaded[i].config) == to_json(logs[i].config));
    CHECK(reverify(loaded[i]) == logs[i].trajectory);
  }
  std::filesystem::remove(path);
}

TEST_CASE("persistence errors carry the path") {
  const std::filesystem::path bad = "/nonexistent-dir/x.jsonl";
  try {
    persist_trajectories({}, bad);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/x.jsonl") != std::string::npos);
  }
  CHECK_THROWS_AS(load_trajectories(bad), IoError);

  const auto path = temp_file("bad.jsonl");
  {
    std::ofstream(path) << "{\"schema_version\": 99}\n";
  }
  CHECK_THROWS_AS(load_trajectories(path), FormatError);
  {
    std::ofstream(path) << "not json\n";
  }
  CHECK_THROWS_AS(load_trajectories(path), FormatError);
  std::filesystem::remove(path);
}
